"""Independent SU(2) volume oracle by interval convolution.

Conjugacy classes of SU(2) are points t in [0, 1].  Central functions
are tracked through their sine transform S(s) = F(s) sin(pi s) on the
alcove; convolving with a unit-mass class measure at t becomes a moving
window integral with reflecting upper limit min(s + t, 2 - s - t), and
attaching a handle becomes the Dirichlet Green's solve
S <- pi^2 * G S with G(s, a) = min(s, a)(1 - max(s, a)).  The density of
the product holonomy at the identity class is S'(0) / pi, extracted by
Richardson extrapolation near 0.

This route never touches characters, so it is an independent check of
the character-sum volumes.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError


def _box_params(t1: float, t2: float):
    """The product of two fixed classes has sine transform a box of
    height pi / (4 sin(pi t1) sin(pi t2)) on (|t1-t2|, min(t1+t2, 2-t1-t2))."""
    lo = abs(t1 - t2)
    hi = min(t1 + t2, 2.0 - t1 - t2)
    height = math.pi / (4.0 * math.sin(math.pi * t1) * math.sin(math.pi * t2))
    return lo, hi, height


def _third_class_exact(t1, t2, t3, grid: np.ndarray) -> np.ndarray:
    """Exact sine transform of a three-class product: the moving window
    integral of the two-class box, evaluated in closed form so that the
    grid never sees a discontinuity."""
    lo, hi, height = _box_params(t1, t2)
    win_lo = np.abs(grid - t3)
    win_hi = np.minimum(grid + t3, 2.0 - grid - t3)
    overlap = np.clip(np.minimum(win_hi, hi) - np.maximum(win_lo, lo), 0.0, None)
    return (math.pi / (2.0 * math.sin(math.pi * t3))) * height * overlap


def _handle_on_box_exact(t1, t2, grid: np.ndarray) -> np.ndarray:
    """Exact Green's solve applied to the two-class box."""
    lo, hi, height = _box_params(t1, t2)
    c = np.clip(grid, lo, hi)
    cum_a = height * (c ** 2 - lo ** 2) / 2.0
    tail_b = height * ((hi - c) - (hi ** 2 - c ** 2) / 2.0)
    return math.pi ** 2 * ((1.0 - grid) * cum_a + grid * tail_b)


def _convolve_class(s_vals: np.ndarray, t: float, grid: np.ndarray) -> np.ndarray:
    """S <- pi/(2 sin(pi t)) * integral of S over the reflected window."""
    h = grid[1] - grid[0]
    cdf = np.concatenate([[0.0], np.cumsum((s_vals[1:] + s_vals[:-1]) * h / 2.0)])
    upper = np.minimum(grid + t, 2.0 - grid - t)
    lower = np.abs(grid - t)
    cdf_up = np.interp(np.clip(upper, 0.0, 1.0), grid, cdf)
    cdf_lo = np.interp(np.clip(lower, 0.0, 1.0), grid, cdf)
    return (math.pi / (2.0 * math.sin(math.pi * t))) * (cdf_up - cdf_lo)


def _attach_handle(s_vals: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """S <- pi^2 * Dirichlet Green's operator applied to S."""
    h = grid[1] - grid[0]
    a_s = grid * s_vals
    b_s = (1.0 - grid) * s_vals
    cum_a = np.concatenate([[0.0], np.cumsum((a_s[1:] + a_s[:-1]) * h / 2.0)])
    total_b = np.concatenate([[0.0], np.cumsum((b_s[1:] + b_s[:-1]) * h / 2.0)])
    tail_b = total_b[-1] - total_b
    return math.pi ** 2 * ((1.0 - grid) * cum_a + grid * tail_b)


def su2_volume_oracle(genus: int, classes, grid_size: int = 4096) -> float:
    """Pushforward density at the identity class of the product of fixed
    SU(2) classes over a genus-g surface with one relation.

    classes are alcove parameters in (0, 1); a positive-dimensional
    moduli space needs 2*genus - 2 + len(classes) >= 1.
    """
    ts = [float(Fraction(t)) for t in classes]
    if any(t <= 0.0 or t >= 1.0 for t in ts):
        raise ConvergenceError("oracle requires non-central classes strictly inside (0, 1)")
    n = len(ts)
    if 2 * genus - 2 + n < 1:
        raise ConvergenceError("no convergent regime: 2g - 2 + n must be >= 1")
    grid = np.linspace(0.0, 1.0, grid_size + 1)
    handles = genus
    if n >= 3:
        s_vals = _third_class_exact(ts[0], ts[1], ts[2], grid)
        rest = ts[3:]
    elif n == 2:
        # fold one handle into the box analytically (n = 2 needs g >= 1)
        s_vals = _handle_on_box_exact(ts[0], ts[1], grid)
        rest = []
        handles -= 1
    else:
        # fold the single class into one handle: S = pi^2 G(s, t) / (2 sin pi t)
        t = ts[0]
        g_col = np.where(grid <= t, grid * (1.0 - t), t * (1.0 - grid))
        s_vals = math.pi ** 2 * g_col / (2.0 * math.sin(math.pi * t))
        rest = []
        handles -= 1
    for t in rest:
        s_vals = _convolve_class(s_vals, t, grid)
    for _ in range(handles):
        s_vals = _attach_handle(s_vals, grid)
    h = grid[1] - grid[0]
    # S(0) = 0 and S is only C^1 at 0 (curvature jump of the odd periodic
    # extension), so extrapolate the slope quadratically from three nodes
    f1 = s_vals[1] / h
    f2 = s_vals[2] / (2.0 * h)
    f3 = s_vals[3] / (3.0 * h)
    return (3.0 * f1 - 3.0 * f2 + f3) / math.pi
