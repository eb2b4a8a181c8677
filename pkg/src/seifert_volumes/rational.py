"""Exact linear algebra over the rationals.

Matrices are lists of row lists of Fraction.  Everything here is plain
Gaussian elimination; sizes in this package stay small enough that
asymptotics never matter, exactness does.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list


def frac_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    mat = zeros(n, n)
    for i in range(n):
        mat[i][i] = Fraction(1)
    return mat


def shape(a: Matrix) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def copy_matrix(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def transpose(a: Matrix) -> Matrix:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    m, k = shape(a)
    k2, n = shape(b)
    assert k == k2, "shape mismatch"
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        for j in range(n):
            out[i][j] = sum(ai[t] * b[t][j] for t in range(k))
    return out


def mat_vec(a: Matrix, v: list) -> list:
    m, n = shape(a)
    assert len(v) == n
    return [sum(a[i][j] * v[j] for j in range(n)) for i in range(m)]


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return copy_matrix(b)
    if not b:
        return copy_matrix(a)
    assert len(a) == len(b)
    return [a[i] + b[i] for i in range(len(a))]


def columns(a: Matrix, idx) -> Matrix:
    return [[row[j] for j in idx] for row in a]


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def _echelon(a: Matrix):
    """Row echelon form in place on a copy; returns (mat, pivots, det_factor).

    det_factor tracks the sign from row swaps and the pivots used, so a
    square full-rank input has det = det_factor * product(pivot entries
    after elimination) ... we simply return enough to recover rank and
    pivot columns; determinants are computed by det() below.
    """
    m, n = shape(a)
    mat = copy_matrix(a)
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        for i in range(r + 1, m):
            f = mat[i][c]
            if f == 0:
                continue
            fr = f / pv
            row_i, row_r = mat[i], mat[r]
            for j in range(c, n):
                row_i[j] -= row_r[j] * fr
        pivots.append(c)
        r += 1
        if r == m:
            break
    return mat, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    _, pivots = _echelon(a)
    return len(pivots)


def pivot_columns(a: Matrix) -> list:
    """Indices of a maximal independent set of columns (first ones found)."""
    if not a or not a[0]:
        return []
    _, pivots = _echelon(a)
    return pivots


def det(a: Matrix) -> Fraction:
    m, n = shape(a)
    assert m == n, "determinant of non-square matrix"
    if m == 0:
        return Fraction(1)
    mat = copy_matrix(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            mat[c], mat[pr] = mat[pr], mat[c]
            sign = -sign
        pv = mat[c][c]
        result *= pv
        for i in range(c + 1, n):
            f = mat[i][c]
            if f == 0:
                continue
            fr = f / pv
            row_i, row_c = mat[i], mat[c]
            for j in range(c, n):
                row_i[j] -= row_c[j] * fr
    return result * sign


def solve(a: Matrix, b: list):
    """One solution of a x = b, or None if inconsistent. Free variables 0."""
    m, n = shape(a)
    assert len(b) == m
    aug = [a[i][:] + [Fraction(b[i])] for i in range(m)]
    mat, pivots = _echelon(aug)
    piv_in_b = [c for c in pivots if c == n]
    if piv_in_b:
        return None
    x = [Fraction(0)] * n
    # back substitution over pivot rows
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = mat[r][n]
        for j in range(c + 1, n):
            s -= mat[r][j] * x[j]
        x[c] = s / mat[r][c]
    return x


def solve_matrix(a: Matrix, b: Matrix):
    """Solve a X = b columnwise; None if any column is inconsistent."""
    bt = transpose(b)
    cols = []
    for col in bt:
        x = solve(a, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def inv(a: Matrix) -> Matrix:
    m, n = shape(a)
    assert m == n
    x = solve_matrix(a, identity(n))
    if x is None or det(a) == 0:
        raise ZeroDivisionError("matrix not invertible")
    return x


def right_inverse(a: Matrix) -> Matrix:
    """X with a X = I; requires full row rank."""
    m, n = shape(a)
    x = solve_matrix(a, identity(m))
    if x is None:
        raise ZeroDivisionError("no right inverse: row rank deficient")
    return x


def nullspace(a: Matrix) -> Matrix:
    """Columns span ker(a)."""
    m, n = shape(a)
    if n == 0:
        return []
    mat, pivots = _echelon(a)
    free = [c for c in range(n) if c not in pivots]
    basis_cols = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = Fraction(0)
            for j in range(c + 1, n):
                if x[j]:
                    s -= mat[r][j] * x[j]
            x[c] = s / mat[r][c]
        basis_cols.append(x)
    return transpose(basis_cols) if basis_cols else [[] for _ in range(n)]
