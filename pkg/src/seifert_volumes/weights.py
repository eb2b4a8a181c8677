"""Dominant weights, Weyl dimension formula and character evaluation.

Characters are evaluated through weight multiplicities (Freudenthal's
recursion) and Weyl orbits rather than the Weyl quotient formula: the
multiplicity route is a sum of unit-modulus exponentials with positive
integer coefficients, so it stays numerically stable at singular
classes where the quotient formula degenerates.  All angles are exact
rationals until the final exponential.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from fractions import Fraction

import numpy as np

from . import rational as rat
from .lie import AlcoveClass, RootSystemData

# RootSystemData instances used as cache keys, by (type, rank)
_RS_CACHE: dict = {}


def _rs_key(rs: RootSystemData):
    key = (rs.lie_type, rs.rank)
    _RS_CACHE[key] = rs
    return key


def _vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _vec_scale(c, x):
    return tuple(c * a for a in x)


def weight_vector(rs: RootSystemData, coeffs) -> tuple:
    """Realization vector of sum_i coeffs[i] * (i-th fundamental weight)."""
    dim = len(rs.fundamental_weights[0])
    return tuple(
        sum(Fraction(coeffs[i]) * rs.fundamental_weights[i][d] for i in range(rs.rank))
        for d in range(dim)
    )


def rho_vector(rs: RootSystemData) -> tuple:
    return weight_vector(rs, [1] * rs.rank)


def coroot_pairing(rs: RootSystemData, vec, root) -> Fraction:
    """<vec, root^vee> = 2 (vec, root) / (root, root)."""
    return 2 * rs.inner(vec, root) / rs.inner(root, root)


def dominant_coefficients(rs: RootSystemData, vec) -> tuple:
    """Pairings with the simple coroots (fundamental-weight coefficients)."""
    return tuple(coroot_pairing(rs, vec, a) for a in rs.simple_roots)


def weyl_dim(rs: RootSystemData, coeffs) -> int:
    lam_rho = weight_vector(rs, [c + 1 for c in coeffs])
    rho = rho_vector(rs)
    out = Fraction(1)
    for alpha in rs.positive_roots:
        out *= rs.inner(lam_rho, alpha) / rs.inner(rho, alpha)
    assert out.denominator == 1
    return int(out)


def _fw_gram(rs: RootSystemData):
    return [
        [rs.inner(rs.fundamental_weights[i], rs.fundamental_weights[j]) for j in range(rs.rank)]
        for i in range(rs.rank)
    ]


def _coeff_box_limit(rs: RootSystemData, norm_bound: Fraction) -> int:
    gram = np.array([[float(x) for x in row] for row in _fw_gram(rs)])
    lam_min = max(float(np.linalg.eigvalsh(gram)[0]), 1e-12)
    return int(math.sqrt(float(norm_bound) / lam_min)) + 2


def dominant_weights_up_to(rs: RootSystemData, norm_bound) -> list:
    """Dominant weights lambda with <lambda+rho, lambda+rho> <= bound, as
    fundamental-coefficient tuples sorted by (norm, coeffs)."""
    bound = Fraction(norm_bound)
    gram = _fw_gram(rs)
    cmax = _coeff_box_limit(rs, bound)
    out = []
    for coeffs in itertools.product(range(cmax + 1), repeat=rs.rank):
        shifted = [c + 1 for c in coeffs]
        norm = sum(
            shifted[i] * gram[i][j] * shifted[j]
            for i in range(rs.rank)
            for j in range(rs.rank)
        )
        if norm <= bound:
            out.append((norm, coeffs))
    out.sort()
    return [c for _, c in out]


def _dominant_representative(rs: RootSystemData, vec) -> tuple:
    v = list(vec)
    while True:
        moved = False
        for alpha in rs.simple_roots:
            c = coroot_pairing(rs, v, alpha)
            if c < 0:
                v = [v[i] - c * alpha[i] for i in range(len(v))]
                moved = True
        if not moved:
            return tuple(v)


@functools.lru_cache(maxsize=None)
def _cached_orbit(rs_key, vec):
    rs = _RS_CACHE[rs_key]
    seen = {vec}
    frontier = [vec]
    while frontier:
        new = []
        for v in frontier:
            for alpha in rs.simple_roots:
                c = coroot_pairing(rs, v, alpha)
                w = tuple(v[i] - c * alpha[i] for i in range(len(v)))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return tuple(sorted(seen))


def weyl_orbit(rs: RootSystemData, vec) -> list:
    return list(_cached_orbit(_rs_key(rs), tuple(Fraction(x) for x in vec)))


def _in_root_lattice(rs: RootSystemData, vec) -> bool:
    rhs = [rs.inner(vec, a) for a in rs.simple_roots]
    gram = [[rs.inner(a, b) for b in rs.simple_roots] for a in rs.simple_roots]
    sol = rat.solve(gram, rhs)
    return sol is not None and all(x.denominator == 1 for x in sol)


@functools.lru_cache(maxsize=None)
def _cached_multiplicities(rs_key, lam_coeffs):
    """Freudenthal recursion; {dominant weight vector: multiplicity}."""
    rs = _RS_CACHE[rs_key]
    lam = weight_vector(rs, lam_coeffs)
    rho = rho_vector(rs)
    lam_rho = _vec_add(lam, rho)
    lam_rho_norm = rs.inner(lam_rho, lam_rho)
    lam_norm = rs.inner(lam, lam)

    # candidate dominants: coefficient box, norm <= |lambda|, same coset
    # of the weight lattice modulo the root lattice
    gram = _fw_gram(rs)
    cmax = max(
        (int(c) for c in lam_coeffs), default=0
    ) + _coeff_box_limit(rs, lam_norm if lam_norm else Fraction(1))
    cands = []
    for coeffs in itertools.product(range(cmax + 1), repeat=rs.rank):
        norm = sum(
            coeffs[i] * gram[i][j] * coeffs[j] for i in range(rs.rank) for j in range(rs.rank)
        )
        if norm > lam_norm:
            continue
        mu = weight_vector(rs, coeffs)
        if not _in_root_lattice(rs, _vec_sub(lam, mu)):
            continue
        mu_rho = _vec_add(mu, rho)
        cands.append((rs.inner(mu_rho, mu_rho), mu))
    cands.sort(reverse=True)

    mult = {lam: 1}
    for mu_rho_norm, mu in cands:
        if mu == lam:
            continue
        denom = lam_rho_norm - mu_rho_norm
        assert denom > 0
        total = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                shifted = _vec_add(mu, _vec_scale(k, alpha))
                # weights satisfy |nu| <= |lambda|; for dominant mu the
                # norm is strictly increasing in k, so this terminates
                if rs.inner(shifted, shifted) > lam_norm:
                    break
                m = mult.get(_dominant_representative(rs, shifted), 0)
                if m:
                    total += 2 * m * rs.inner(shifted, alpha)
                k += 1
        m_mu = total / denom
        assert m_mu.denominator == 1
        if m_mu:
            mult[mu] = int(m_mu)
    return mult


def weight_multiplicities(rs: RootSystemData, lam_coeffs) -> dict:
    return dict(_cached_multiplicities(_rs_key(rs), tuple(int(c) for c in lam_coeffs)))


def eval_weight_on_class(rs: RootSystemData, vec, u: AlcoveClass) -> Fraction:
    """nu(X) for the alcove logarithm X: expand nu over fundamental
    weights and pair with the coroot coefficients of X."""
    pairings = dominant_coefficients(rs, vec)
    x = rs.coroot_coefficients(u.coords)
    return sum(p * xi for p, xi in zip(pairings, x))


def character_value(rs: RootSystemData, lam_coeffs, u: AlcoveClass) -> complex:
    """chi_lambda at the class: sum of exp(2 pi i nu(X)) over all weights."""
    key = _rs_key(rs)
    mult = _cached_multiplicities(key, tuple(int(c) for c in lam_coeffs))
    total = 0j
    for mu, m in sorted(mult.items()):
        for nu in _cached_orbit(key, mu):
            angle = eval_weight_on_class(rs, nu, u) % 1
            total += m * cmath.exp(2j * math.pi * float(angle))
    return total
