"""Small dense linear algebra: exact over Fraction, certified over balls.

Exact routines (rref, solve, nullspace, det, charpoly) are used wherever the
objects are rational: group-ring structure constants, idempotents, rational
change-of-basis certificates.  Ball routines mirror the same operations with
radius tracking for the transcendental side (Gram matrices of log lattices).
"""

from __future__ import annotations

from fractions import Fraction

from .ball import BigReal
from .errors import RankDeficient


# -- exact rational matrices ------------------------------------------------

def frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(mat):
    """Reduced row echelon form; returns (result, pivot column list)."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis of the right kernel (list of column vectors)."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """Solve mat @ x = rhs (single vector); None if inconsistent."""
    rows = len(mat)
    aug = [mat[i][:] + [Fraction(rhs[i])] for i in range(rows)]
    red, pivots = rref(aug)
    cols = len(mat[0]) if rows else 0
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    # verify (handles underdetermined/inconsistent rows)
    for i in range(rows):
        if sum(mat[i][j] * x[j] for j in range(cols)) != Fraction(rhs[i]):
            return None
    return x


def inverse(mat):
    n = len(mat)
    aug = [mat[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise RankDeficient("matrix not invertible")
    return [row[n:] for row in red]


def det(mat) -> Fraction:
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        out *= pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out * sign


def charpoly(mat):
    """Characteristic polynomial det(xI - M), ascending coefficients.

    Faddeev-LeVerrier: exact over Fraction, fine for the small dimensions
    used here.
    """
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        M = mat_mul(mat, M)
        for i in range(n):
            M[i][i] += c
        MM = mat_mul(mat, M)
        trace = sum(MM[i][i] for i in range(n))
        c = -trace / k
        coeffs[n - k] = c
    return coeffs


# -- ball matrices -----------------------------------------------------------

def ball_mat(rows, prec: int):
    from .ball import coerce
    return [[coerce(v, prec) for v in row] for row in rows]


def ball_mat_mul(a, b, prec: int):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = BigReal.exact(0, prec)
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def ball_mat_vec(a, v, prec: int):
    out = []
    for row in a:
        s = BigReal.exact(0, prec)
        for c, x in zip(row, v):
            s = s + c * x
        out.append(s)
    return out


def ball_det(mat, prec: int) -> BigReal:
    """Determinant by Gaussian elimination with certified nonzero pivots.

    Raises RankDeficient when no pivot in a column separates from zero (the
    determinant then cannot be certified at this precision).
    """
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    out = BigReal.exact(1, prec)
    for c in range(n):
        pivot = None
        best = None
        for i in range(c, n):
            if m[i][c].is_nonzero():
                mag = abs(m[i][c].mid)
                if best is None or mag > best:
                    best = mag
                    pivot = i
        if pivot is None:
            raise RankDeficient(f"no certified pivot in column {c}")
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        out = out * pv
        for i in range(c + 1, n):
            f = m[i][c] / pv
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out if sign > 0 else -out


def ball_solve(mat, rhs, prec: int):
    """Solve a square certified-nonsingular system by Gaussian elimination."""
    n = len(mat)
    m = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for c in range(n):
        pivot = None
        best = None
        for i in range(c, n):
            if m[i][c].is_nonzero():
                mag = abs(m[i][c].mid)
                if best is None or mag > best:
                    best = mag
                    pivot = i
        if pivot is None:
            raise RankDeficient(f"no certified pivot in column {c}")
        m[c], m[pivot] = m[pivot], m[c]
        pv = m[c][c]
        for i in range(n):
            if i != c and not (m[i][c].mid == 0 and m[i][c].rad == 0):
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def ball_cholesky(mat, prec: int):
    """Lower-triangular ball Cholesky; None when positive definiteness
    cannot be certified (some pivot ball touches zero)."""
    n = len(mat)
    L = [[BigReal.exact(0, prec) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = mat[i][j]
            for k in range(j):
                s = s - L[i][k] * L[j][k]
            if i == j:
                if not s.is_positive():
                    return None
                L[i][j] = s.sqrt()
            else:
                L[i][j] = s / L[j][j]
    return L


def is_positive_definite(mat, prec: int) -> bool:
    return ball_cholesky(mat, prec) is not None
