"""Root systems and conjugacy-class arithmetic for compact simply
connected simple Lie groups.

Conjugacy classes of such a group biject with points of the closed
fundamental alcove of the affine Weyl group.  A class is stored through
the values of the simple roots on a logarithm X of a representative:
``coords[i] = alpha_i(X)``.  Every root is an integer combination of
simple roots, so all root values, wall reflections and alcove reductions
stay inside exact rational arithmetic; the only floating point in this
module is the evaluation of the sine product ``delta``.

The inner product is normalized so that long roots have squared length
2; realizations below are the standard Euclidean ones, rescaled where
needed to make that normalization rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import rational as rat
from .errors import InputError

LIE_TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")

# Weyl group orders, used for character bounds.
_WEYL_ORDER = {
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
    "F4": 1152,
    "G2": 12,
}


@dataclass(frozen=True)
class AlcoveClass:
    """A conjugacy class, given by the simple-root values on the alcove
    representative.  Equality and ordering are coordinate-wise."""

    coords: tuple

    def __lt__(self, other):
        return self.coords < other.coords

    def key(self):
        return self.coords


@dataclass(frozen=True)
class CentralElement:
    point: AlcoveClass
    order: int


@dataclass(frozen=True)
class RootSystemData:
    lie_type: str
    rank: int
    simple_roots: tuple  # realization vectors (tuples of Fraction)
    positive_roots: tuple
    highest_root: tuple
    inner_product: tuple  # Gram matrix of the realization space
    dim_g: int
    # derived data, cached at construction
    cartan: tuple = field(repr=False, default=())  # A[i][j] = <alpha_i, alpha_j^vee>
    cartan_inv: tuple = field(repr=False, default=())
    root_coeffs: tuple = field(repr=False, default=())  # positive roots in simple-root basis
    marks: tuple = field(repr=False, default=())  # highest root in simple-root basis
    theta_pairings: tuple = field(repr=False, default=())  # alpha_j(theta^vee)
    fundamental_weights: tuple = field(repr=False, default=())  # realization vectors
    weyl_order: int = field(repr=False, default=0)

    def inner(self, x, y) -> Fraction:
        g = self.inner_product
        n = len(x)
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    def root_value(self, coeffs, coords) -> Fraction:
        """alpha(X) for a root with the given simple-root coefficients."""
        return sum(m * c for m, c in zip(coeffs, coords))

    def theta_value(self, coords) -> Fraction:
        return self.root_value(self.marks, coords)

    def coroot_coefficients(self, coords) -> tuple:
        """Coefficients of X in the simple-coroot basis (A^-1 coords)."""
        return tuple(
            sum(self.cartan_inv[i][j] * coords[j] for j in range(self.rank))
            for i in range(self.rank)
        )


def _unit(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _simple_root_vectors(lie_type: str, rank: int):
    """Realization vectors plus the Gram matrix scale making long roots
    have squared length 2."""
    F = Fraction
    if lie_type == "A":
        if rank < 1:
            raise InputError("group", "rank", "type A requires rank >= 1")
        n = rank + 1
        roots = [[F(0)] * n for _ in range(rank)]
        for i in range(rank):
            roots[i][i] = F(1)
            roots[i][i + 1] = F(-1)
        return roots, F(1), n
    if lie_type == "B":
        if rank < 2:
            raise InputError("group", "rank", "type B requires rank >= 2")
        roots = []
        for i in range(rank - 1):
            v = _unit(rank, i)
            v[i + 1] = F(-1)
            roots.append(v)
        roots.append(_unit(rank, rank - 1))
        return roots, F(1), rank
    if lie_type == "C":
        if rank < 2:
            raise InputError("group", "rank", "type C requires rank >= 2")
        roots = []
        for i in range(rank - 1):
            v = _unit(rank, i)
            v[i + 1] = F(-1)
            roots.append(v)
        v = _unit(rank, rank - 1)
        v[rank - 1] = F(2)
        roots.append(v)
        return roots, F(1, 2), rank
    if lie_type == "D":
        if rank < 3:
            raise InputError("group", "rank", "type D requires rank >= 3")
        roots = []
        for i in range(rank - 1):
            v = _unit(rank, i)
            v[i + 1] = F(-1)
            roots.append(v)
        v = _unit(rank, rank - 2)
        v[rank - 1] = F(1)
        roots.append(v)
        return roots, F(1), rank
    if lie_type in ("E6", "E7", "E8"):
        k = int(lie_type[1])
        if rank != k:
            raise InputError("group", "rank", f"type {lie_type} has rank {k}")
        # Bourbaki simple roots of E8 in R^8; E6, E7 take the first 6, 7.
        e8 = [
            [F(1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(1, 2)],
            [F(1), F(1), F(0), F(0), F(0), F(0), F(0), F(0)],
            [F(-1), F(1), F(0), F(0), F(0), F(0), F(0), F(0)],
            [F(0), F(-1), F(1), F(0), F(0), F(0), F(0), F(0)],
            [F(0), F(0), F(-1), F(1), F(0), F(0), F(0), F(0)],
            [F(0), F(0), F(0), F(-1), F(1), F(0), F(0), F(0)],
            [F(0), F(0), F(0), F(0), F(-1), F(1), F(0), F(0)],
            [F(0), F(0), F(0), F(0), F(0), F(-1), F(1), F(0)],
        ]
        return e8[:k], F(1), 8
    if lie_type == "F4":
        if rank != 4:
            raise InputError("group", "rank", "type F4 has rank 4")
        F2 = F(1, 2)
        roots = [
            [F(0), F(1), F(-1), F(0)],
            [F(0), F(0), F(1), F(-1)],
            [F(0), F(0), F(0), F(1)],
            [F2, -F2, -F2, -F2],
        ]
        return roots, F(1), 4
    if lie_type == "G2":
        if rank != 2:
            raise InputError("group", "rank", "type G2 has rank 2")
        roots = [
            [F(1), F(-1), F(0)],
            [F(-2), F(1), F(1)],
        ]
        return roots, F(1, 3), 3
    raise InputError("group", "lie_type", f"unknown type {lie_type!r}; expected one of {LIE_TYPES}")


def _close_under_reflections(simple, gram_scale, dim):
    """All roots, by closing the simple roots under simple reflections."""
    def inner(x, y):
        return gram_scale * sum(a * b for a, b in zip(x, y))

    norms = [inner(a, a) for a in simple]
    roots = {tuple(a) for a in simple}
    frontier = list(roots)
    while frontier:
        new = []
        for beta in frontier:
            for a, na in zip(simple, norms):
                c = 2 * inner(beta, a) / na
                refl = tuple(beta[i] - c * a[i] for i in range(dim))
                if refl not in roots:
                    roots.add(refl)
                    new.append(refl)
        frontier = new
    return roots


def build_root_system(lie_type: str, rank: int) -> RootSystemData:
    """Construct the root-system data for a simple type.

    Raises InputError for invalid (type, rank) combinations, naming the
    violated constraint.
    """
    lie_type = lie_type.upper()
    simple, gram_scale, dim = _simple_root_vectors(lie_type, rank)
    gram = [[gram_scale if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]

    def inner(x, y):
        return gram_scale * sum(a * b for a, b in zip(x, y))

    all_roots = _close_under_reflections(simple, gram_scale, dim)

    # Expand each root in the simple-root basis; positivity is
    # nonnegativity of the (integer) coefficients.
    s_mat = rat.transpose([list(a) for a in simple])  # dim x rank
    gram_m = [[inner(a, b) for b in simple] for a in simple]  # rank x rank, invertible
    positive = []
    pos_coeffs = []
    for root in sorted(all_roots):
        rhs = [inner(list(root), a) for a in simple]
        # solve gram_m^T c = rhs; gram_m symmetric
        c = rat.solve([row[:] for row in gram_m], rhs)
        assert c is not None
        assert all(x.denominator == 1 for x in c), "non-integral root coefficient"
        if all(x >= 0 for x in c):
            positive.append(tuple(root))
            pos_coeffs.append(tuple(int(x) for x in c))
    assert 2 * len(positive) == len(all_roots)

    # highest root: the one of maximal height
    heights = [sum(c) for c in pos_coeffs]
    hi = heights.index(max(heights))
    theta = positive[hi]
    marks = pos_coeffs[hi]

    cartan = [
        [2 * inner(a, b) / inner(b, b) for b in simple]
        for a in simple
    ]
    for row in cartan:
        assert all(x.denominator == 1 for x in row), "non-integral Cartan pairing"
    cartan_inv = rat.inv([row[:] for row in cartan])

    theta_norm = inner(list(theta), list(theta))
    assert theta_norm == 2, "long-root normalization broken"
    theta_pairings = tuple(2 * inner(a, list(theta)) / theta_norm for a in simple)

    # fundamental weights: w_i = sum_k c_k alpha_k with c^T A = e_i^T
    cartan_t = rat.transpose([row[:] for row in cartan])
    fw = []
    for i in range(rank):
        c = rat.solve([row[:] for row in cartan_t], list(_unit(rank, i)))
        vec = [sum(c[k] * simple[k][d] for k in range(rank)) for d in range(dim)]
        fw.append(tuple(vec))

    if lie_type == "A":
        weyl = math.factorial(rank + 1)
    elif lie_type in ("B", "C"):
        weyl = 2 ** rank * math.factorial(rank)
    elif lie_type == "D":
        weyl = 2 ** (rank - 1) * math.factorial(rank)
    else:
        weyl = _WEYL_ORDER[lie_type]

    return RootSystemData(
        lie_type=lie_type,
        rank=rank,
        simple_roots=tuple(tuple(a) for a in simple),
        positive_roots=tuple(positive),
        highest_root=tuple(theta),
        inner_product=tuple(tuple(row) for row in gram),
        dim_g=rank + len(all_roots),
        cartan=tuple(tuple(row) for row in cartan),
        cartan_inv=tuple(tuple(row) for row in cartan_inv),
        root_coeffs=tuple(pos_coeffs),
        marks=tuple(marks),
        theta_pairings=theta_pairings,
        fundamental_weights=tuple(fw),
        weyl_order=weyl,
    )


# ---------------------------------------------------------------------------
# alcove membership and reduction


def in_alcove(rs: RootSystemData, coords) -> bool:
    if any(c < 0 for c in coords):
        return False
    return rs.theta_value(coords) <= 1


def alcove_class(rs: RootSystemData, coords) -> AlcoveClass:
    coords = tuple(Fraction(c) for c in coords)
    if len(coords) != rs.rank:
        raise InputError("class", "coords", f"expected {rs.rank} coordinates")
    if not in_alcove(rs, coords):
        raise InputError("class", "coords", "point outside the fundamental alcove")
    return AlcoveClass(coords)


def _separation_count(rs: RootSystemData, coords) -> int:
    """Number of affine root hyperplanes separating X from the alcove
    interior, where every positive root takes values in (0, 1)."""
    total = 0
    for coeffs in rs.root_coeffs:
        val = rs.root_value(coeffs, coords)
        if val < 0:
            total += math.ceil(-val)
        elif val > 1:
            total += math.ceil(val) - 1
    return total


def reduce_to_alcove(rs: RootSystemData, coords, wall_order: str = "first") -> AlcoveClass:
    """Affine Weyl reduction into the closed fundamental alcove.

    Reflects across a violated bounding wall until none is violated.
    The alcove is an exact fundamental domain, so the result does not
    depend on the order in which walls are treated; each reflection
    strictly decreases the number of separating affine hyperplanes,
    which is asserted and guarantees termination.
    """
    c = [Fraction(x) for x in coords]
    r = rs.rank
    measure = _separation_count(rs, c)
    while True:
        violated = []
        for i in range(r):
            if c[i] < 0:
                violated.append(i)
        theta_val = rs.theta_value(c)
        if theta_val > 1:
            violated.append(r)
        if not violated:
            return AlcoveClass(tuple(c))
        pick = violated[0] if wall_order == "first" else violated[-1]
        if pick < r:
            ci = c[pick]
            for j in range(r):
                c[j] -= ci * rs.cartan[j][pick]
        else:
            excess = theta_val - 1
            for j in range(r):
                c[j] -= excess * rs.theta_pairings[j]
        new_measure = _separation_count(rs, c)
        assert new_measure < measure, "alcove reduction failed to make progress"
        measure = new_measure


def class_power(rs: RootSystemData, u: AlcoveClass, k: int) -> AlcoveClass:
    """Alcove representative of the class of g^k for g in u."""
    return reduce_to_alcove(rs, tuple(k * c for c in u.coords))


# ---------------------------------------------------------------------------
# class geometry


def delta(rs: RootSystemData, u: AlcoveClass) -> float:
    """prod over positive roots with non-integral value of 2*sin(pi*alpha(X)).

    Equals |det(Ad_g - id)|^{1/2} on the orthocomplement of the fixed
    space of Ad_g; the empty product (central classes) is 1.
    """
    out = 1.0
    for coeffs in rs.root_coeffs:
        val = rs.root_value(coeffs, u.coords) % 1
        if val != 0:
            out *= 2.0 * math.sin(math.pi * float(val))
    return out


# 4 sin^2(pi t) is rational exactly for these residues (Niven).
_RATIONAL_SIN_SQ = {
    Fraction(1, 6): Fraction(1),
    Fraction(1, 4): Fraction(2),
    Fraction(1, 3): Fraction(3),
    Fraction(1, 2): Fraction(4),
    Fraction(2, 3): Fraction(3),
    Fraction(3, 4): Fraction(2),
    Fraction(5, 6): Fraction(1),
}


def delta_squared_exact(rs: RootSystemData, u: AlcoveClass):
    """delta(u)^2 as an exact rational when every sine factor is
    individually rational; None otherwise."""
    out = Fraction(1)
    for coeffs in rs.root_coeffs:
        val = rs.root_value(coeffs, u.coords) % 1
        if val == 0:
            continue
        f = _RATIONAL_SIN_SQ.get(val)
        if f is None:
            return None
        out *= f
    return out


def centralizer_dim(rs: RootSystemData, u: AlcoveClass) -> int:
    """dim of the centralizer of a representative: rank plus the number
    of roots taking integer values."""
    integral = sum(
        1 for coeffs in rs.root_coeffs if rs.root_value(coeffs, u.coords).denominator == 1
    )
    return rs.rank + 2 * integral


def class_dim(rs: RootSystemData, u: AlcoveClass) -> int:
    return rs.dim_g - centralizer_dim(rs, u)


def is_regular(rs: RootSystemData, u: AlcoveClass) -> bool:
    return centralizer_dim(rs, u) == rs.rank


def is_central(rs: RootSystemData, u: AlcoveClass) -> bool:
    return centralizer_dim(rs, u) == rs.dim_g


def center_elements(rs: RootSystemData) -> list:
    """The center of the simply connected group, as alcove points.

    A class is central iff every root takes an integer value; inside the
    alcove this forces the coordinates to be 0 or a standard vector e_i
    with mark m_i = 1.  The order of exp(X) is the smallest k with kX in
    the coroot lattice.
    """
    points = [tuple(Fraction(0) for _ in range(rs.rank))]
    for i, m in enumerate(rs.marks):
        if m == 1:
            points.append(tuple(Fraction(1 if j == i else 0) for j in range(rs.rank)))
    out = []
    for coords in points:
        x = rs.coroot_coefficients(coords)
        order = lcm(*[f.denominator for f in x]) if x else 1
        out.append(CentralElement(point=AlcoveClass(coords), order=order))
    out.sort(key=lambda z: z.point.coords)
    return out
