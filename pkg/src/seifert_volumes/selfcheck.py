"""Randomized generators and property checks for the torsion calculus.

Random based complexes are produced in a normal form (per degree: an
incoming-image block, a homology block, a coimage block, with invertible
blocks M_k carrying coimage(k) isomorphically onto image(k-1)) and then
conjugated by random invertible basis changes.  The normal form gives an
independent closed-form torsion

    tau = prod_k |det M_k|^{(-1)^k} * prod_k |det Q_k|^{(-1)^{k+1}}

where Q_k is the basis change in degree k, so every generated instance
arrives with its expected value attached.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import rational as rat
from .torsion import (
    BasedChainComplex,
    HomologyBasis,
    TorsionValue,
    auto_homology_basis,
    chain_torsion,
    circle_torsion,
    kunneth_torsion,
    mv_torsion_compose,
    ses_torsion_scalar,
)


def _rand_frac(rng, lo=-3, hi=3, den=2):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _rand_invertible(rng, n):
    if n == 0:
        return []
    while True:
        m = [[_rand_frac(rng) for _ in range(n)] for _ in range(n)]
        if rat.det(m) != 0:
            return m


class NormalComplex:
    """Normal-form data: per degree the block sizes (image, homology,
    coimage) and the invertible carrier blocks."""

    def __init__(self, rng, length=None, max_rank=2):
        n = length if length is not None else rng.randint(1, 3)
        self.b = [0] + [rng.randint(0, max_rank) for _ in range(n)] + [0]  # b[k] = rank d_k
        self.h = [rng.randint(0, max_rank) for _ in range(n + 1)]
        self.dims = [self.b[k + 1] + self.h[k] + self.b[k] for k in range(n + 1)]
        self.m_blocks = [_rand_invertible(rng, self.b[k]) for k in range(n + 2)]

    def boundaries(self):
        out = []
        for k in range(1, len(self.dims)):
            rows, cols = self.dims[k - 1], self.dims[k]
            mat = rat.zeros(rows, cols)
            bk = self.b[k]
            # coimage block of C_k starts after image(k+1) and homology(k)
            col0 = self.b[k + 1] + self.h[k]
            for i in range(bk):
                for j in range(bk):
                    mat[i][col0 + j] = self.m_blocks[k][i][j]
            out.append(mat)
        return out

    def homology_columns(self):
        cols = []
        for k, dim in enumerate(self.dims):
            mat = rat.zeros(dim, self.h[k])
            row0 = self.b[k + 1]
            for j in range(self.h[k]):
                mat[row0 + j][j] = Fraction(1)
            cols.append(mat)
        return cols

    def torsion(self):
        tau = Fraction(1)
        for k in range(1, len(self.dims)):
            d = abs(rat.det(self.m_blocks[k]))
            tau = tau * d if k % 2 == 0 else tau / d
        return tau


def _mul(a, b, rows, mid, cols):
    """Shape-aware product: empty matrices do not carry a column count."""
    if rows == 0 or cols == 0:
        return [[] for _ in range(rows)]
    if mid == 0:
        return rat.zeros(rows, cols)
    return rat.mat_mul(a, b)


def conjugate_complex(boundaries, hcols, q_list):
    """Rewrite a complex in new bases: the new preferred basis of degree
    k is the Q_k^{-1} image of the old one, so coordinates transform by
    Q_k."""
    dims = [len(q) for q in q_list]
    inv = [rat.inv(q) if q else [] for q in q_list]
    new_b = []
    for k in range(1, len(q_list)):
        inner = _mul(boundaries[k - 1], inv[k], dims[k - 1], dims[k], dims[k])
        new_b.append(_mul(q_list[k - 1], inner, dims[k - 1], dims[k - 1], dims[k]))
    new_h = [
        rat.mat_mul(q_list[k], hcols[k]) if hcols[k] and hcols[k][0] else hcols[k]
        for k in range(len(q_list))
    ]
    return new_b, new_h


def random_complex_with_basis(rng, length=None, max_rank=2):
    """(complex, homology basis, expected torsion magnitude)."""
    nc = NormalComplex(rng, length=length, max_rank=max_rank)
    q_list = [_rand_invertible(rng, d) for d in nc.dims]
    bounds, hcols = conjugate_complex(nc.boundaries(), nc.homology_columns(), q_list)
    tau = nc.torsion()
    for k, q in enumerate(q_list):
        if not q:
            continue
        d = abs(rat.det(q))
        tau = tau * d if k % 2 == 1 else tau / d
    cx = BasedChainComplex(nc.dims, bounds, mode="rational")
    hb = HomologyBasis(tuple(hcols))
    return cx, hb, tau


def direct_sum(cx1, hb1, cx2, hb2):
    n = max(cx1.top_degree, cx2.top_degree)

    def dim(cx, k):
        return cx.dims[k] if k <= cx.top_degree else 0

    dims = [dim(cx1, k) + dim(cx2, k) for k in range(n + 1)]
    bounds = []
    for k in range(1, n + 1):
        rows, cols = dims[k - 1], dims[k]
        mat = rat.zeros(rows, cols)
        b1 = cx1.boundary(k) if k <= cx1.top_degree else []
        for i in range(dim(cx1, k - 1)):
            for j in range(dim(cx1, k)):
                mat[i][j] = b1[i][j]
        b2 = cx2.boundary(k) if k <= cx2.top_degree else []
        for i in range(dim(cx2, k - 1)):
            for j in range(dim(cx2, k)):
                mat[dim(cx1, k - 1) + i][dim(cx1, k) + j] = b2[i][j]
        bounds.append(mat)
    hcols = []
    for k in range(n + 1):
        h1 = hb1.columns(k) if k <= cx1.top_degree else []
        h2 = hb2.columns(k) if k <= cx2.top_degree else []
        c1 = hb1.count(k) if k <= cx1.top_degree else 0
        c2 = hb2.count(k) if k <= cx2.top_degree else 0
        mat = rat.zeros(dims[k], c1 + c2)
        for i in range(dim(cx1, k)):
            for j in range(c1):
                mat[i][j] = h1[i][j]
        for i in range(dim(cx2, k)):
            for j in range(c2):
                mat[dim(cx1, k) + i][c1 + j] = h2[i][j]
        hcols.append(mat)
    return BasedChainComplex(dims, bounds, mode="rational"), HomologyBasis(tuple(hcols))


def euler_characteristic(cx) -> int:
    return sum((-1) ** k * d for k, d in enumerate(cx.dims))


def tensor_product(cx1, hb1, cx2, hb2):
    """Algebraic product complex with the product homology basis."""
    n1, n2 = cx1.top_degree, cx2.top_degree
    n = n1 + n2
    blocks = {}  # degree -> list of (i, j, offset)
    dims = []
    for deg in range(n + 1):
        off = 0
        lst = []
        for i in range(max(0, deg - n2), min(n1, deg) + 1):
            j = deg - i
            lst.append((i, j, off))
            off += cx1.dims[i] * cx2.dims[j]
        blocks[deg] = lst
        dims.append(off)
    bounds = []
    for deg in range(1, n + 1):
        mat = rat.zeros(dims[deg - 1], dims[deg])
        up = {(i, j): off for i, j, off in blocks[deg]}
        dn = {(i, j): off for i, j, off in blocks[deg - 1]}
        for (i, j), off in up.items():
            c1, c2 = cx1.dims[i], cx2.dims[j]
            if i >= 1 and (i - 1, j) in dn:
                d1 = cx1.boundary(i)
                tgt = dn[(i - 1, j)]
                for a in range(cx1.dims[i - 1]):
                    for b in range(c1):
                        v = d1[a][b]
                        if v == 0:
                            continue
                        for t in range(c2):
                            mat[tgt + a * c2 + t][off + b * c2 + t] = v
            if j >= 1 and (i, j - 1) in dn:
                d2 = cx2.boundary(j)
                sign = Fraction(-1) ** i
                tgt = dn[(i, j - 1)]
                for a in range(c1):
                    for b in range(cx2.dims[j - 1]):
                        for t in range(c2):
                            v = d2[b][t]
                            if v == 0:
                                continue
                            mat[tgt + a * cx2.dims[j - 1] + b][off + a * c2 + t] = sign * v
        bounds.append(mat)
    hcols = []
    for deg in range(n + 1):
        cols = []
        for i, j, off in blocks[deg]:
            h1, h2 = hb1.columns(i), hb2.columns(j)
            for a in range(hb1.count(i)):
                for b in range(hb2.count(j)):
                    col = [Fraction(0)] * dims[deg]
                    for x in range(cx1.dims[i]):
                        if h1[x][a] == 0:
                            continue
                        for y in range(cx2.dims[j]):
                            col[off + x * cx2.dims[j] + y] = h1[x][a] * h2[y][b]
                    cols.append(col)
        hcols.append(rat.transpose(cols) if cols else [[] for _ in range(dims[deg])])
    return BasedChainComplex(dims, bounds, mode="rational"), HomologyBasis(tuple(hcols))


def random_gluing(rng):
    """A gluing instance: sub N with extensions M1 = N + E1, M2 = N + E2
    twisted by chain maps on the homology blocks, the pushout M, the
    chain-level inclusion and projection, and homology bases for all
    four complexes.  The twists make the connecting maps of the long
    exact sequence nonzero."""
    length = rng.randint(1, 2)
    ncn = NormalComplex(rng, length=length)
    nce1 = NormalComplex(rng, length=length)
    nce2 = NormalComplex(rng, length=length)
    n_deg = len(ncn.dims)

    def twist(nc_from, nc_to):
        # chain maps hom-block(E, k) -> hom-block(N, k-1); arbitrary
        # values are allowed because both blocks are killed by and kill
        # the normal-form boundaries
        phis = []
        for k in range(n_deg):
            if k == 0:
                phis.append(None)
                continue
            rows, cols = nc_to.h[k - 1], nc_from.h[k]
            phis.append([[_rand_frac(rng) for _ in range(cols)] for _ in range(rows)])
        return phis

    phi1 = twist(nce1, ncn)
    phi2 = twist(nce2, ncn)

    def extended_boundary(k, nc_e, phi):
        """Boundary of N + E in degree k with the hom-block twist."""
        rows = ncn.dims[k - 1] + nc_e.dims[k - 1]
        cols = ncn.dims[k] + nc_e.dims[k]
        mat = rat.zeros(rows, cols)
        bn = ncn.boundaries()[k - 1]
        for i in range(ncn.dims[k - 1]):
            for j in range(ncn.dims[k]):
                mat[i][j] = bn[i][j]
        be = nc_e.boundaries()[k - 1]
        for i in range(nc_e.dims[k - 1]):
            for j in range(nc_e.dims[k]):
                mat[ncn.dims[k - 1] + i][ncn.dims[k] + j] = be[i][j]
        # twist: hom-block of E_k into hom-block of N_{k-1}
        r0 = ncn.b[k]  # hom-block row start in N_{k-1}... image(k) block first
        r0 = ncn.b[k]
        c0 = ncn.dims[k] + nc_e.b[k + 1] + 0  # hom-block of E_k starts after image block
        for i in range(ncn.h[k - 1]):
            for j in range(nc_e.h[k]):
                mat[r0 + i][c0 + j] = phi[k][i][j]
        return mat

    def assemble(nc_e, phi):
        dims = [ncn.dims[k] + nc_e.dims[k] for k in range(n_deg)]
        bounds = [extended_boundary(k, nc_e, phi) for k in range(1, n_deg)]
        return dims, bounds

    dims1, bounds1 = assemble(nce1, phi1)
    dims2, bounds2 = assemble(nce2, phi2)

    # pushout M: coordinates (N, E1, E2) with both twists
    dims_m = [ncn.dims[k] + nce1.dims[k] + nce2.dims[k] for k in range(n_deg)]
    bounds_m = []
    for k in range(1, n_deg):
        rows, cols = dims_m[k - 1], dims_m[k]
        mat = rat.zeros(rows, cols)
        b1 = extended_boundary(k, nce1, phi1)
        # N and E1 parts
        for i in range(ncn.dims[k - 1] + nce1.dims[k - 1]):
            for j in range(ncn.dims[k] + nce1.dims[k]):
                mat[i][j] = b1[i][j]
        # E2 block and its twist into N
        be2 = nce2.boundaries()[k - 1]
        ro = ncn.dims[k - 1] + nce1.dims[k - 1]
        co = ncn.dims[k] + nce1.dims[k]
        for i in range(nce2.dims[k - 1]):
            for j in range(nce2.dims[k]):
                mat[ro + i][co + j] = be2[i][j]
        c0 = co + nce2.b[k + 1]
        for i in range(ncn.h[k - 1]):
            for j in range(nce2.h[k]):
                mat[ncn.b[k] + i][c0 + j] = phi2[k][i][j]
        bounds_m.append(mat)

    # chain-level inclusion (x -> (x, -x)) and projection
    incl = []
    proj = []
    for k in range(n_deg):
        dn, d1, d2 = ncn.dims[k], nce1.dims[k], nce2.dims[k]
        ic = rat.zeros(dims1[k] + dims2[k], dn)
        for i in range(dn):
            ic[i][i] = Fraction(1)
            ic[dims1[k] + i][i] = Fraction(-1)
        incl.append(ic)
        pr = rat.zeros(dims_m[k], dims1[k] + dims2[k])
        for i in range(dn):  # N class: sum of the two copies
            pr[i][i] = Fraction(1)
            pr[i][dims1[k] + i] = Fraction(1)
        for i in range(d1):
            pr[dn + i][dn + i] = Fraction(1)
        for i in range(d2):
            pr[dn + d1 + i][dims1[k] + dn + i] = Fraction(1)
        proj.append(pr)

    # conjugate every complex by random basis changes, transforming the
    # chain maps accordingly
    q_n = [_rand_invertible(rng, d) for d in ncn.dims]
    q_1 = [_rand_invertible(rng, d) for d in dims1]
    q_2 = [_rand_invertible(rng, d) for d in dims2]
    q_m = [_rand_invertible(rng, d) for d in dims_m]

    def conj(dims, bounds, q):
        inv = [rat.inv(x) if x else [] for x in q]
        nb = []
        for k in range(1, len(dims)):
            inner = _mul(bounds[k - 1], inv[k], dims[k - 1], dims[k], dims[k])
            nb.append(_mul(q[k - 1], inner, dims[k - 1], dims[k - 1], dims[k]))
        return nb, inv

    bounds_n, _ = conj(ncn.dims, ncn.boundaries(), q_n)
    bounds1c, _ = conj(dims1, bounds1, q_1)
    bounds2c, _ = conj(dims2, bounds2, q_2)
    bounds_mc, _ = conj(dims_m, bounds_m, q_m)

    cx_n = BasedChainComplex(ncn.dims, bounds_n, mode="rational")
    cx_1 = BasedChainComplex(dims1, bounds1c, mode="rational")
    cx_2 = BasedChainComplex(dims2, bounds2c, mode="rational")
    cx_m = BasedChainComplex(dims_m, bounds_mc, mode="rational")

    inv_n = [rat.inv(x) if x else [] for x in q_n]
    incl_c = []
    proj_c = []
    for k in range(n_deg):
        q12 = rat.zeros(dims1[k] + dims2[k], dims1[k] + dims2[k])
        for i in range(dims1[k]):
            for j in range(dims1[k]):
                q12[i][j] = q_1[k][i][j]
        for i in range(dims2[k]):
            for j in range(dims2[k]):
                q12[dims1[k] + i][dims1[k] + j] = q_2[k][i][j]
        d12 = dims1[k] + dims2[k]
        inner = _mul(incl[k], inv_n[k], d12, ncn.dims[k], ncn.dims[k])
        incl_c.append(_mul(q12, inner, d12, d12, ncn.dims[k]))
        inv12 = rat.inv(q12) if d12 else []
        inner2 = _mul(proj[k], inv12, dims_m[k], d12, d12)
        proj_c.append(_mul(q_m[k], inner2, dims_m[k], dims_m[k], d12))

    total, hb_total = direct_sum(cx_1, auto_homology_basis(cx_1), cx_2, auto_homology_basis(cx_2))
    # note: total must literally be cx_1 (+) cx_2 in the stacked basis
    return {
        "sub": cx_n,
        "m1": cx_1,
        "m2": cx_2,
        "quot": cx_m,
        "total": total,
        "hb_sub": auto_homology_basis(cx_n),
        "hb_m1": auto_homology_basis(cx_1),
        "hb_m2": auto_homology_basis(cx_2),
        "hb_total": hb_total,
        "hb_quot": auto_homology_basis(cx_m),
        "incl": incl_c,
        "proj": proj_c,
    }


# ---------------------------------------------------------------------------
# the property suite behind `check-torsion`


def _check_normal_forms(rng, rounds):
    for _ in range(rounds):
        cx, hb, tau = random_complex_with_basis(rng)
        got = chain_torsion(cx, hb).magnitude
        if got != tau:
            return False, f"expected {tau}, got {got}"
    return True, f"{rounds} random complexes match their closed-form torsion"

def _check_direct_sums(rng, rounds):
    for _ in range(rounds):
        cx1, hb1, t1 = random_complex_with_basis(rng)
        cx2, hb2, t2 = random_complex_with_basis(rng)
        cx, hb = direct_sum(cx1, hb1, cx2, hb2)
        if chain_torsion(cx, hb).magnitude != t1 * t2:
            return False, "direct sum broke multiplicativity"
    return True, f"{rounds} direct sums multiply exactly"


def _check_kunneth(rng, rounds):
    for _ in range(rounds):
        cx1, hb1, t1 = random_complex_with_basis(rng, length=1)
        cx2, hb2, t2 = random_complex_with_basis(rng, length=1)
        cx, hb = tensor_product(cx1, hb1, cx2, hb2)
        got = chain_torsion(cx, hb).magnitude
        want = kunneth_torsion(
            TorsionValue(t1), euler_characteristic(cx1), TorsionValue(t2), euler_characteristic(cx2)
        ).magnitude
        if got != want:
            return False, f"product torsion {got} != {want}"
    return True, f"{rounds} product complexes match the exponent rule"


def _check_circle(rng, rounds):
    for _ in range(rounds):
        # random rational orthogonal map: 2x2 Pythagorean rotations and
        # reflections assembled block-diagonally, then conjugated by a
        # signed permutation
        trips = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)]
        blocks = []
        size = 0
        for _ in range(rng.randint(1, 2)):
            a, b, c = trips[rng.randrange(len(trips))]
            if rng.random() < 0.5:
                blocks.append([[Fraction(a, c), Fraction(-b, c)], [Fraction(b, c), Fraction(a, c)]])
            else:
                blocks.append([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
            size += 2
        if rng.random() < 0.5:
            blocks.append([[Fraction(rng.choice([1, -1]))]])
            size += 1
        phi = rat.zeros(size, size)
        off = 0
        for blk in blocks:
            for i in range(len(blk)):
                for j in range(len(blk)):
                    phi[off + i][off + j] = blk[i][j]
            off += len(blk)
        tv, h = circle_torsion(phi)
        a = [[phi[i][j] - (1 if i == j else 0) for j in range(size)] for i in range(size)]
        cx = BasedChainComplex([size, size], [a], mode="rational")
        hb = HomologyBasis((h, h))
        if chain_torsion(cx, hb).magnitude != tv.magnitude:
            return False, "circle model disagrees with the closed form"
    return True, f"{rounds} circle models match the closed form exactly"


def _check_gluing(rng, rounds):
    for _ in range(rounds):
        g = random_gluing(rng)
        scalar = ses_torsion_scalar(
            g["sub"], g["total"], g["quot"], g["incl"], g["proj"],
            g["hb_sub"], g["hb_total"], g["hb_quot"],
        )
        t_n = chain_torsion(g["sub"], g["hb_sub"])
        t_1 = chain_torsion(g["m1"], g["hb_m1"])
        t_2 = chain_torsion(g["m2"], g["hb_m2"])
        want = chain_torsion(g["quot"], g["hb_quot"]).magnitude
        got = mv_torsion_compose(t_1, t_2, t_n, scalar).magnitude
        if got != want:
            return False, f"glued torsion {got} != {want}"
    return True, f"{rounds} gluings compose exactly"


def run_property_suite(seed=0, rounds=25):
    rng = random.Random(seed)
    checks = [
        ("normal_form_torsion", _check_normal_forms),
        ("direct_sum_multiplicativity", _check_direct_sums),
        ("product_exponent_rule", _check_kunneth),
        ("circle_closed_form", _check_circle),
        ("gluing_composition", _check_gluing),
    ]
    results = []
    for name, fn in checks:
        ok, detail = fn(rng, rounds)
        results.append((name, ok, detail))
    return results
