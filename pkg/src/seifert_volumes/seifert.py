"""Seifert data, the component label set of the irreducible character
variety, component dimensions and the torsion-to-Liouville prefactor.

A closed oriented Seifert manifold is encoded by a genus g >= 0 and
surgery pairs (p_i, q_i), coprime with p_i >= 1.  For a compact simply
connected simple group, the irreducible character variety decomposes
into pieces labeled by a central element v and a tuple of conjugacy
classes u with u_i^{p_i} = v^{q_i}; the label set is finite and is
enumerated here exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError
from .lie import (
    AlcoveClass,
    CentralElement,
    RootSystemData,
    center_elements,
    centralizer_dim,
    class_dim,
    class_power,
    delta,
    delta_squared_exact,
    in_alcove,
)


@dataclass(frozen=True)
class SeifertData:
    genus: int
    pairs: tuple  # ((p_1, q_1), ..., (p_n, q_n))

    @property
    def n(self) -> int:
        return len(self.pairs)


def validate_seifert(genus, pairs) -> SeifertData:
    """Check the surgery data: n >= 1, p >= 1, gcd(p, q) = 1."""
    try:
        genus = int(genus)
    except (TypeError, ValueError):
        raise InputError("genus", "genus", "genus must be an integer") from None
    if genus < 0:
        raise InputError("genus", "genus", "genus must be >= 0")
    pairs = tuple((int(p), int(q)) for p, q in pairs)
    if not pairs:
        raise InputError("pairs", "seifert", "at least one (p, q) pair is required (n >= 1)")
    for i, (p, q) in enumerate(pairs):
        if p < 1:
            raise InputError("p_positive", "seifert", f"pair {i}: p = {p} must be >= 1")
        if gcd(p, abs(q)) != 1:
            raise InputError(
                "coprime", "seifert", f"pair {i}: gcd({p}, {q}) = {gcd(p, abs(q))} != 1"
            )
    return SeifertData(genus=genus, pairs=pairs)


def euler_number(s: SeifertData) -> Fraction:
    """chi = -sum q_i / p_i, the Euler number of the fibration."""
    return -sum(Fraction(q, p) for p, q in s.pairs)


def inverse_mod(q: int, p: int) -> int:
    """Smallest nonnegative r with q r = 1 mod p; r = 0 when p = 1."""
    if p == 1:
        return 0
    try:
        return pow(q, -1, p)
    except ValueError:
        raise InputError("invertible", "seifert", f"{q} is not invertible modulo {p}") from None


@dataclass(frozen=True)
class ComponentLabel:
    u: tuple  # tuple of AlcoveClass, one per surgery pair
    v: CentralElement
    dim: int

    @property
    def occupancy(self) -> str:
        # dim < 0 proves the piece is empty; existence of irreducible
        # representations is otherwise not decided here.
        return "empty" if self.dim < 0 else "unknown"

    def sort_key(self):
        return (self.v.point.coords, tuple(u.coords for u in self.u))


def component_dimension(genus: int, rs: RootSystemData, u_list) -> int:
    """2(g-1) dim G + sum of the class dimensions; negative means the
    component is provably empty."""
    return 2 * (genus - 1) * rs.dim_g + sum(class_dim(rs, u) for u in u_list)


def solve_class_power(rs: RootSystemData, p: int, target: AlcoveClass) -> list:
    """All alcove classes u with u^p = target, for a central target.

    For central targets the affine Weyl orbit of the target is a single
    coroot-lattice coset, so the solutions are exactly the alcove points
    X with p X = X_t + gamma, gamma in the coroot lattice.  Candidate
    lattice vectors live in a finite coordinate box.
    """
    t = target.coords
    assert all(c.denominator == 1 for c in t), "target class must be central"
    rank = rs.rank
    ranges = [range(-int(t[j]), p - int(t[j]) + 1) for j in range(rank)]
    out = []
    for w in itertools.product(*ranges):
        # w must lie in the coordinate image of the coroot lattice
        x = rs.coroot_coefficients([Fraction(wj) for wj in w])
        if any(f.denominator != 1 for f in x):
            continue
        coords = tuple(Fraction(int(t[j]) + w[j], p) for j in range(rank))
        if in_alcove(rs, coords):
            out.append(AlcoveClass(coords))
    out.sort()
    return out


def iter_components(s: SeifertData, rs: RootSystemData):
    """Yield the component labels in deterministic (v, u) order."""
    for v in center_elements(rs):
        per_pair = []
        for p, q in s.pairs:
            target = class_power(rs, v.point, q)
            per_pair.append(solve_class_power(rs, p, target))
        for combo in itertools.product(*per_pair):
            dim = component_dimension(s.genus, rs, combo)
            yield ComponentLabel(u=tuple(combo), v=v, dim=dim)


def enumerate_components(s: SeifertData, rs: RootSystemData) -> list:
    """The complete finite label set, sorted lexicographically."""
    labels = list(iter_components(s, rs))
    labels.sort(key=ComponentLabel.sort_key)
    return labels


@dataclass(frozen=True)
class PrefactorValue:
    value: float
    exact_square: Fraction | None = None


def torsion_prefactor(
    s: SeifertData, rs: RootSystemData, label: ComponentLabel, r_choice=None
) -> PrefactorValue:
    """The density conversion factor prod_i delta(u_i^{r_i}) / p_i^{dim V_i / 2}
    with r_i an inverse of q_i mod p_i.

    Because u_i^{p_i} is central for every label, the value does not
    depend on which inverse r_i is chosen.  The square of the value is
    rational whenever each sine factor is (tracked exactly then).
    """
    value = 1.0
    exact_sq = Fraction(1)
    exact_ok = True
    for i, (p, q) in enumerate(s.pairs):
        u = label.u[i]
        target = class_power(rs, label.v.point, q)
        if class_power(rs, u, p) != target:
            raise InputError(
                "label", "label", f"pair {i}: u^{p} != v^{q}; not a valid component label"
            )
        r = r_choice[i] if r_choice is not None else inverse_mod(q, p)
        if p > 1 and (q * r) % p != 1:
            raise InputError("label", "r_choice", f"pair {i}: r = {r} is not inverse to q mod p")
        u_r = class_power(rs, u, r)
        dim_v = centralizer_dim(rs, u)
        value *= delta(rs, u_r) / math.sqrt(float(p) ** dim_v)
        if exact_ok:
            dsq = delta_squared_exact(rs, u_r)
            if dsq is None:
                exact_ok = False
            else:
                exact_sq *= dsq / Fraction(p) ** dim_v
    return PrefactorValue(value=value, exact_square=exact_sq if exact_ok else None)
