"""Reidemeister torsion of finite based chain complexes and the
determinant-line bookkeeping for exact sequences.

The torsion of a based complex with chosen homology bases follows
Milnor's algorithm: in every degree, combine lifted boundary images,
homology representatives and a preimage complement into a transition
matrix T_k against the declared basis, and form the alternating product
of |det T_k|.  The exponent convention is pinned so that the two-term
circle complex  R^d --(phi - id)--> R^d  reproduces the closed form
tau = |det((phi - id)|_{H^perp})|^{-1}; that forces the exponent
(-1)^{k+1} on degree k, and in particular tau = |c|^{-1} for the acyclic
complex 0 -> R --(c)--> R -> 0.

Rational mode is exact (Fraction arithmetic); float mode uses a
configurable rank tolerance (default 1e-9).  All values are magnitudes:
the torsion of a real complex is only defined up to sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rational as rat


@dataclass(frozen=True)
class TorsionValue:
    """Magnitude of a torsion scalar; the sign is never defined."""

    magnitude: object  # Fraction in rational mode, float in float mode
    sign_defined: bool = False

    def __post_init__(self):
        if not self.magnitude > 0:
            raise ValueError("torsion magnitude must be positive")

    def as_float(self) -> float:
        return float(self.magnitude)


class BasedChainComplex:
    """Spaces C_0 ... C_N with boundaries d_k : C_k -> C_{k-1}.

    ``boundaries[k-1]`` is the matrix of d_k with dims[k-1] rows and
    dims[k] columns, written in the declared (orthonormal) bases.
    d d = 0 is checked at construction: exactly in rational mode, below
    1e-12 entrywise in float mode.
    """

    def __init__(self, dims, boundaries, mode="rational", rank_tol=1e-9):
        if mode not in ("rational", "float"):
            raise ValueError("mode must be 'rational' or 'float'")
        self.dims = [int(d) for d in dims]
        self.mode = mode
        self.rank_tol = rank_tol
        if len(boundaries) != max(len(self.dims) - 1, 0):
            raise ValueError("need one boundary matrix per adjacent pair of spaces")
        if mode == "rational":
            self.boundaries = [
                [[Fraction(x) for x in row] for row in b] for b in boundaries
            ]
        else:
            self.boundaries = [
                np.asarray(b, dtype=float).reshape(self.dims[k], self.dims[k + 1])
                for k, b in enumerate(boundaries)
            ]
        for k, b in enumerate(self.boundaries, start=1):
            rows = len(b) if mode == "rational" else b.shape[0]
            if rows != self.dims[k - 1]:
                raise ValueError(f"boundary {k}: expected {self.dims[k - 1]} rows")
            if mode == "rational":
                for row in b:
                    if len(row) != self.dims[k]:
                        raise ValueError(f"boundary {k}: expected {self.dims[k]} columns")
        self._check_dd()

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary(self, k: int):
        """Matrix of d_k; an empty matrix outside 1..N."""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k - 1]
        rows = self.dims[k] if 0 <= k < len(self.dims) else 0
        if self.mode == "rational":
            return [[] for _ in range(rows)] if k <= 0 else [[] for _ in range(self.dims[k - 1])]
        return np.zeros((rows if k <= 0 else self.dims[k - 1], 0))

    def _check_dd(self):
        for k in range(2, self.top_degree + 1):
            a, b = self.boundaries[k - 2], self.boundaries[k - 1]
            if self.mode == "rational":
                if self.dims[k - 2] and self.dims[k] and self.dims[k - 1]:
                    if not rat.is_zero(rat.mat_mul(a, b)):
                        raise ValueError(f"d_{k - 1} d_{k} != 0")
            else:
                if a.size and b.size and np.abs(a @ b).max() > 1e-12:
                    raise ValueError(f"d_{k - 1} d_{k} exceeds 1e-12")

    # -- plain text round trip, used for golden files --------------------

    def to_text(self) -> str:
        lines = [self.mode, "dims " + " ".join(str(d) for d in self.dims)]
        for k in range(1, self.top_degree + 1):
            lines.append(f"boundary {k}")
            for i in range(self.dims[k - 1]):
                lines.append(" ".join(str(x) for x in self.boundaries[k - 1][i]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BasedChainComplex":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        mode = lines[0].strip()
        assert lines[1].startswith("dims")
        dims = [int(x) for x in lines[1].split()[1:]]
        parse = Fraction if mode == "rational" else float
        boundaries = []
        pos = 2
        for k in range(1, len(dims)):
            assert lines[pos].strip() == f"boundary {k}"
            pos += 1
            rows = []
            for _ in range(dims[k - 1]):
                rows.append([parse(x) for x in lines[pos].split()] if dims[k] else [])
                pos += 1 if dims[k] else 0
            if dims[k] == 0:
                rows = [[] for _ in range(dims[k - 1])]
            boundaries.append(rows)
        return cls(dims, boundaries, mode=mode)


@dataclass(frozen=True)
class HomologyBasis:
    """Cycle representatives per degree; bases[k] is a matrix with
    dims[k] rows whose columns span H_k."""

    bases: tuple

    @classmethod
    def empty(cls, dims) -> "HomologyBasis":
        return cls(tuple([[] for _ in range(d)] for d in dims))

    def columns(self, k: int):
        return self.bases[k]

    def count(self, k: int) -> int:
        b = self.bases[k]
        return len(b[0]) if b and b[0] else 0


def _np_rank(a, tol):
    if a.size == 0:
        return 0
    return int(np.sum(np.linalg.svd(a, compute_uv=False) > tol))


def _np_pivot_columns(a, tol):
    if a.size == 0:
        return []
    target = _np_rank(a, tol)
    picked = []
    for j in range(a.shape[1]):
        if len(picked) == target:
            break
        cand = a[:, picked + [j]]
        if _np_rank(cand, tol) > len(picked):
            picked.append(j)
    return picked


def chain_torsion(cx: BasedChainComplex, hb: HomologyBasis) -> TorsionValue:
    """Milnor torsion of a based complex relative to a homology basis.

    Raises ValueError("invalid homology basis, degree k") when the given
    columns are not cycles or do not induce a basis of H_k.
    """
    n = cx.top_degree
    rationals = cx.mode == "rational"
    if rationals:
        pivots = {k: rat.pivot_columns(cx.boundary(k)) for k in range(1, n + 1)}
    else:
        pivots = {k: _np_pivot_columns(cx.boundary(k), cx.rank_tol) for k in range(1, n + 1)}
    pivots[0] = []
    pivots[n + 1] = []
    tau = Fraction(1) if rationals else 1.0
    for k in range(n + 1):
        dim = cx.dims[k]
        h = hb.columns(k)
        if rationals:
            h_cols = len(h[0]) if h and h[0] else 0
            if len(h) != dim and h_cols:
                raise ValueError(f"invalid homology basis, degree {k}")
        else:
            h = np.asarray(h, dtype=float) if len(h) else np.zeros((dim, 0))
            if h.size == 0:
                h = np.zeros((dim, 0))
            h_cols = h.shape[1]
            if h.shape[0] != dim and h_cols:
                raise ValueError(f"invalid homology basis, degree {k}")
        if dim == 0:
            if h_cols:
                raise ValueError(f"invalid homology basis, degree {k}")
            continue
        # columns must be cycles
        if k >= 1 and h_cols:
            d_k = cx.boundary(k)
            if rationals:
                if cx.dims[k - 1] and not rat.is_zero(rat.mat_mul(d_k, h)):
                    raise ValueError(f"invalid homology basis, degree {k}")
            else:
                if d_k.size and np.abs(d_k @ h).max() > 1e-8:
                    raise ValueError(f"invalid homology basis, degree {k}")
        rank_b = len(pivots[k + 1])
        rank_d = len(pivots[k])
        if rank_b + h_cols + rank_d != dim:
            raise ValueError(f"invalid homology basis, degree {k}")
        if rationals:
            d_up = cx.boundary(k + 1)
            img = rat.columns(d_up, pivots[k + 1]) if rank_b else [[] for _ in range(dim)]
            hh = h if h_cols else [[] for _ in range(dim)]
            lift = rat.columns(rat.identity(dim), pivots[k])
            t_k = rat.hstack(rat.hstack(img, hh), lift)
            d = rat.det(t_k)
            if d == 0:
                raise ValueError(f"invalid homology basis, degree {k}")
            tau = tau * abs(d) if k % 2 == 1 else tau / abs(d)
        else:
            d_up = cx.boundary(k + 1)
            img = d_up[:, pivots[k + 1]] if rank_b else np.zeros((dim, 0))
            lift = np.eye(dim)[:, pivots[k]]
            t_k = np.column_stack([img, h, lift])
            sign, logdet = np.linalg.slogdet(t_k)
            if sign == 0:
                raise ValueError(f"invalid homology basis, degree {k}")
            tau = tau * np.exp(logdet) if k % 2 == 1 else tau * np.exp(-logdet)
    return TorsionValue(magnitude=tau)


def auto_homology_basis(cx: BasedChainComplex) -> HomologyBasis:
    """A homology basis from kernels-mod-images.

    There is no canonical choice for a non-acyclic complex, so this is a
    convenience for callers that only need *some* basis: exact
    unnormalized cycles in rational mode, orthonormal ones in float
    mode.  Torsion values computed against it depend on the choice.
    """
    n = cx.top_degree
    bases = []
    for k in range(n + 1):
        dim = cx.dims[k]
        if cx.mode == "rational":
            kernel = rat.identity(dim) if k == 0 else rat.nullspace(cx.boundary(k))
            kc = len(kernel[0]) if kernel and kernel[0] else 0
            img = cx.boundary(k + 1) if k < n else [[] for _ in range(dim)]
            base = rat.columns(img, rat.pivot_columns(img))
            base_cols = len(base[0]) if base and base[0] else 0
            chosen = []
            for j in range(kc):
                cand = [[kernel[i][j]] for i in range(dim)]
                trial = rat.hstack(base, cand)
                if rat.rank(trial) > base_cols:
                    base = trial
                    base_cols += 1
                    chosen.append(j)
            bases.append(rat.columns(kernel, chosen) if chosen else [[] for _ in range(dim)])
        else:
            if k == 0 or not cx.boundary(k).size:
                kernel = np.eye(dim)
            else:
                _, s, vt = np.linalg.svd(cx.boundary(k))
                r = int(np.sum(s > cx.rank_tol))
                kernel = vt[r:].T
            img = cx.boundary(k + 1) if k < n else np.zeros((dim, 0))
            if img.size:
                u, s, _ = np.linalg.svd(img)
                r = int(np.sum(s > cx.rank_tol))
                ib = u[:, :r]
                proj = kernel - ib @ (ib.T @ kernel)
            else:
                proj = kernel
            if proj.size:
                q, rr = np.linalg.qr(proj)
                keep = [j for j in range(min(rr.shape)) if abs(rr[j, j]) > cx.rank_tol]
                bases.append(q[:, keep])
            else:
                bases.append(np.zeros((dim, 0)))
    return HomologyBasis(tuple(bases))


# ---------------------------------------------------------------------------
# closed forms and combination rules


def circle_torsion(phi, rank_tol=1e-9):
    """Torsion of a flat bundle over the circle with holonomy phi.

    Returns (TorsionValue, H) where H = ker(phi - id), given by columns,
    and the magnitude is |det((phi - id)|_{H^perp})|^{-1}.  Rational
    input is handled exactly; float input uses the rank tolerance to
    split off eigenvalues at 1.
    """
    if isinstance(phi, np.ndarray) or (len(phi) and isinstance(phi[0][0], float)):
        mat = np.asarray(phi, dtype=float)
        a = mat - np.eye(len(mat))
        prod = 1.0
        for lam in np.linalg.eigvals(mat):
            if abs(lam - 1.0) > rank_tol:
                prod *= abs(lam - 1.0)
        if a.size:
            _, s, vt = np.linalg.svd(a)
            r = int(np.sum(s > rank_tol))
            h = vt[r:].T
        else:
            h = np.zeros((0, 0))
        return TorsionValue(magnitude=1.0 / prod), h
    mat = rat.frac_matrix(phi)
    n = len(mat)
    a = [[mat[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    h = rat.nullspace(a)
    piv = rat.pivot_columns(a)
    if not piv:
        return TorsionValue(magnitude=Fraction(1)), h
    # for isometric phi, im(phi - id) is the orthocomplement of the kernel
    basis = rat.columns(a, piv)
    image = rat.mat_mul(a, basis)
    m = rat.solve_matrix(basis, image)
    assert m is not None, "image basis failed to absorb (phi - id) image"
    return TorsionValue(magnitude=1 / abs(rat.det(m))), h


def kunneth_torsion(tau1, chi1: int, tau2, chi2: int) -> TorsionValue:
    """Torsion of a product with a closed factor: tau1^{chi2} tau2^{chi1}."""
    m1 = tau1.magnitude if isinstance(tau1, TorsionValue) else tau1
    m2 = tau2.magnitude if isinstance(tau2, TorsionValue) else tau2
    return TorsionValue(magnitude=m1 ** chi2 * m2 ** chi1)


def mv_torsion_compose(tau_m1, tau_m2, tau_n, mv_scalar) -> TorsionValue:
    """Combine piece torsions across a gluing: tau_M1 tau_M2 / (tau_N s)."""
    vals = [
        t.magnitude if isinstance(t, TorsionValue) else t
        for t in (tau_m1, tau_m2, tau_n)
    ]
    return TorsionValue(magnitude=vals[0] * vals[1] / (vals[2] * mv_scalar))


# ---------------------------------------------------------------------------
# exact sequence scalars


def _as_frac_matrix(m, rows=None):
    out = [[Fraction(x) for x in row] for row in m]
    if rows is not None and len(out) != rows:
        raise ValueError(f"expected {rows} rows, got {len(out)}")
    return out


def exact_sequence_det(inj, proj) -> Fraction:
    """Determinant-line scalar of a short exact sequence 0->A->B->C->0.

    Both maps are given in the chosen bases; the result is
    |det [inj(basis A) | s(basis C)]| for any splitting s of proj, and
    does not depend on the splitting.  Raises ValueError when the input
    is not exact (checked by rank).
    """
    inj = [[Fraction(x) for x in row] for row in inj]
    proj = [[Fraction(x) for x in row] for row in proj]
    n_a = len(inj[0]) if inj and inj[0] else 0
    n_c = len(proj)
    n_b = len(inj) if inj else (len(proj[0]) if proj and proj[0] else 0)
    if n_a + n_c != n_b:
        raise ValueError(f"sequence not exact: dim A + dim C = {n_a + n_c} != dim B = {n_b}")
    if n_a:
        if rat.rank(inj) != n_a:
            raise ValueError("sequence not exact: first map not injective")
    if n_c:
        if len(proj[0]) != n_b:
            raise ValueError("sequence not exact: shape mismatch")
        if n_a and not rat.is_zero(rat.mat_mul(proj, inj)):
            raise ValueError("sequence not exact: composite map nonzero")
        if rat.rank(proj) != n_c:
            raise ValueError("sequence not exact: second map not surjective")
        s = rat.right_inverse(proj)
    else:
        s = [[] for _ in range(n_b)]
    left = inj if n_a else [[] for _ in range(n_b)]
    return abs(rat.det(rat.hstack(left, s)))


def exact_sequence_scalar(dims, maps, signed=False):
    """Scalar of a finite exact sequence 0 -> E_1 -> ... -> E_k -> 0.

    ``dims[i]`` is the dimension of E_{i+1} and ``maps[i]`` the matrix of
    E_{i+1} -> E_{i+2} in the chosen bases.  Intermediate image bases are
    pivot-column images and cancel between consecutive factors; the
    alternating orientation is fixed so the three-term case equals
    exact_sequence_det.  With signed=True the determinants keep their
    signs (deterministic, since pivots are chosen first-come).
    """
    k = len(dims)
    assert len(maps) == k - 1
    mats = []
    for i, m in enumerate(maps):
        mm = _as_frac_matrix(m, rows=dims[i + 1]) if dims[i + 1] else [[] for _ in range(0)]
        if dims[i + 1] and dims[i]:
            if any(len(r) != dims[i] for r in mm):
                raise ValueError(f"map {i + 1} has wrong column count")
        mats.append(mm)
    ranks = []
    for i, m in enumerate(mats):
        ranks.append(rat.rank(m) if dims[i] and dims[i + 1] else 0)
    for i in range(1, k - 1):
        if dims[i - 1] and dims[i] and dims[i + 1]:
            if not rat.is_zero(rat.mat_mul(mats[i], mats[i - 1])):
                raise ValueError(f"sequence not exact at position {i + 1}")
    for i in range(k):
        incoming = ranks[i - 1] if i >= 1 else 0
        outgoing = ranks[i] if i < k - 1 else 0
        if incoming + outgoing != dims[i]:
            raise ValueError(f"sequence not exact at position {i + 1}")
    scalar = Fraction(1)
    prev_pivots = []
    for i in range(k):
        dim = dims[i]
        if dim == 0:
            prev_pivots = []
            continue
        incoming = (
            rat.columns(mats[i - 1], prev_pivots)
            if i >= 1 and prev_pivots
            else [[] for _ in range(dim)]
        )
        piv = rat.pivot_columns(mats[i]) if i < k - 1 and dims[i + 1] else []
        lift = rat.columns(rat.identity(dim), piv)
        block = rat.hstack(incoming, lift)
        d = rat.det(block)
        if d == 0:
            raise ValueError(f"sequence not exact at position {i + 1}")
        scalar = scalar * d if i % 2 == 1 else scalar / d
        prev_pivots = piv
    return scalar if signed else abs(scalar)


# ---------------------------------------------------------------------------
# torsion of a short exact sequence of complexes (gluing calculus)


def _homology_coordinates(cx, hb, k, vec):
    """Coordinates of the class of a cycle in the chosen homology basis."""
    dim = cx.dims[k]
    h = hb.columns(k)
    h_cols = hb.count(k)
    d_up = cx.boundary(k + 1) if k < cx.top_degree else [[] for _ in range(dim)]
    system = rat.hstack(h if h_cols else [[] for _ in range(dim)], d_up)
    sol = rat.solve(system, vec)
    if sol is None:
        raise ValueError(f"vector is not a cycle class combination in degree {k}")
    return sol[:h_cols]


def ses_torsion_scalar(sub, total, quot, incl, proj, hb_sub, hb_total, hb_quot):
    """The scalar m with tau(total) = tau(sub) tau(quot) m, for a degreewise
    short exact sequence of based complexes 0 -> sub -> total -> quot -> 0.

    m is tau(H) * prod_k nu_k^{(-1)^{k+1}} where H is the long exact
    homology sequence regarded as an acyclic based complex (in the given
    homology bases) and nu_k are the degreewise base-change scalars.
    For a gluing sub = N, total = M1 + M2, quot = M this is the scalar
    accepted by mv_torsion_compose.
    """
    n = total.top_degree
    # degreewise base change scalars
    nu = Fraction(1)
    for k in range(n + 1):
        ik = incl[k] if sub.dims[k] else [[] for _ in range(total.dims[k])]
        pk = proj[k] if quot.dims[k] else [[] for _ in range(0)]
        val = exact_sequence_det(ik, pk)
        nu = nu * val if k % 2 == 1 else nu / val
    # long exact homology sequence as an acyclic complex
    h_dims = []
    h_maps = []
    spaces = []  # (which complex, degree) for H_{3k + r}
    for k in range(n + 1):
        spaces.append(("quot", k))
        spaces.append(("total", k))
        spaces.append(("sub", k))
    counts = {"sub": hb_sub, "total": hb_total, "quot": hb_quot}
    cxs = {"sub": sub, "total": total, "quot": quot}
    h_dims = [counts[nm].count(k) for (nm, k) in spaces]

    def induced(src_name, dst_name, k, mapmat):
        src_hb, dst_hb = counts[src_name], counts[dst_name]
        src_cx, dst_cx = cxs[src_name], cxs[dst_name]
        cols = []
        for j in range(src_hb.count(k)):
            cyc = [src_hb.columns(k)[i][j] for i in range(src_cx.dims[k])]
            img = rat.mat_vec(mapmat, cyc) if dst_cx.dims[k] else []
            cols.append(_homology_coordinates(dst_cx, dst_hb, k, img))
        out = rat.transpose(cols) if cols else [[] for _ in range(dst_hb.count(k))]
        return out

    def connecting(k):
        """H_k(quot) -> H_{k-1}(sub) by lift, boundary, restrict."""
        cols = []
        for j in range(hb_quot.count(k)):
            z = [hb_quot.columns(k)[i][j] for i in range(quot.dims[k])]
            c = rat.solve(proj[k], z)
            assert c is not None, "projection failed to lift a cycle"
            dc = rat.mat_vec(total.boundary(k), c) if k >= 1 else []
            a = rat.solve(incl[k - 1], dc) if sub.dims[k - 1] else []
            if a is None:
                raise ValueError("boundary of lift not in subcomplex")
            cols.append(_homology_coordinates(sub, hb_sub, k - 1, a))
        return rat.transpose(cols) if cols else [[] for _ in range(hb_sub.count(k - 1))]

    # boundary maps of the H complex, position j -> j - 1
    for j in range(1, 3 * (n + 1)):
        nm, k = spaces[j]
        if nm == "total":
            h_maps.append(induced("total", "quot", k, proj[k]))
        elif nm == "sub":
            h_maps.append(induced("sub", "total", k, incl[k]))
        else:  # quot at 3k -> sub at 3(k-1)+2
            h_maps.append(connecting(k))
    h_complex = BasedChainComplex(h_dims, h_maps, mode="rational")
    tau_h = chain_torsion(h_complex, HomologyBasis.empty(h_dims))
    return tau_h.magnitude * nu


# ---------------------------------------------------------------------------
# the surgery gluing scalar


def _random_full_rank(rng, rows, cols):
    while True:
        m = [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)
        ]
        if rat.rank(m) == min(rows, cols):
            return m


def seifert_mv_scalar(s, dims, f=None, psi=None, seed=0):
    """Composite determinant-line scalar of the three split exact
    sequences tying the surface homology to the glued manifold.

    dims[i] is the holonomy fixed-space dimension attached to surgery
    pair i, f an injective map of the total fixed space V into a larger
    space W, psi an invertible matrix on coker(f).  The middle sequence
    carries the block map (f, 0; q, p) whose multiplication blocks are
    q_i, p_i on the i-th summand.  For every valid randomized completion
    the composite equals prod_i p_i^{dims[i]} * |det psi| exactly, which
    the independence tests pin down.  Omitted f/psi are drawn from the
    seeded generator.
    """
    if len(dims) != len(s.pairs):
        raise ValueError("need one fixed-space dimension per surgery pair")
    rng = random.Random(seed)
    d_v = sum(dims)
    if f is None:
        m = max(1, (d_v + 1) // 2)
        f = _random_full_rank(rng, d_v + m, d_v)
    f = _as_frac_matrix(f)
    w_dim = len(f)
    n_a = len(f[0]) if f and f[0] else 0
    if n_a != d_v:
        raise ValueError(f"f has {n_a} columns, expected sum(dims) = {d_v}")
    if d_v and rat.rank(f) != d_v:
        raise ValueError("f must be injective")
    m = w_dim - d_v
    if psi is None:
        psi = rat.identity(m)
    psi = _as_frac_matrix(psi)
    if len(psi) != m or (m and len(psi[0]) != m):
        raise ValueError(f"psi must be {m} x {m} (dim coker f)")
    if m and rat.det(psi) == 0:
        raise ValueError("psi must be invertible")

    # randomized completion of im(f) to a basis of W; h is the induced
    # projection onto the cokernel coordinates
    while True:
        r_cols = [[Fraction(rng.randint(-4, 4)) for _ in range(m)] for _ in range(w_dim)]
        full = rat.hstack(f, r_cols) if d_v else r_cols
        if m == 0 or rat.det(full) != 0:
            break
    h = rat.inv(full)[d_v:] if m else []

    # 0 -> V -> W -> coker f -> 0
    nu2 = exact_sequence_det(f, h)

    # 0 -> V + V -> W + V -> H1 -> 0 with blocks (f, 0; q, p)
    q_block = rat.zeros(d_v, d_v)
    p_block = rat.zeros(d_v, d_v)
    off = 0
    for (p, q), d in zip(s.pairs, dims):
        for j in range(d):
            q_block[off + j][off + j] = Fraction(q)
            p_block[off + j][off + j] = Fraction(p)
        off += d
    f_tilde = [f[i] + [Fraction(0)] * d_v for i in range(w_dim)]
    f_tilde += [q_block[i] + p_block[i] for i in range(d_v)]
    if m:
        psi_inv_h = rat.mat_mul(rat.inv(psi), h)
        proj3 = [psi_inv_h[i] + [Fraction(0)] * d_v for i in range(m)]
    else:
        proj3 = []
    nu3 = exact_sequence_det(f_tilde, proj3)

    # 0 -> V --id--> V -> 0 contributes 1 with identical bases
    nu7 = exact_sequence_det(rat.identity(d_v), [])

    return nu3 * nu7 / nu2
