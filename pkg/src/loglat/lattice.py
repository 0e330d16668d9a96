"""Lattice algorithms over real-entry Gram matrices.

Bases are stored as rows; for a row basis B the Gram matrix is B B^T and a
unimodular change of basis T acts by G -> T G T^T.  Entries are BigReal
balls: every verdict emitted here is certified relative to the ball radii
plus an explicit tolerance, and isometry is three-valued (a failed search is
Inconclusive, never a silent "no").
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .ball import guarded_workprec, BigReal, coerce, fraction_to_mpf_exact
from .errors import (EnumerationBudgetExceeded, NotPositiveDefinite,
                     PrecisionExhausted, RankDeficient, RankMismatch)
from .linalg import ball_cholesky, ball_det

DEFAULT_DELTA = Fraction(99, 100)
SEARCH_NODE_BUDGET = 10 ** 6
ENUM_NODE_BUDGET = 10 ** 7


def dyadic_to_decimal(q: Fraction) -> str:
    """Canonical exact decimal string of a dyadic rational."""
    q = Fraction(q)
    if q == 0:
        return "0"
    den = q.denominator
    k = den.bit_length() - 1
    if den != 1 << k:
        raise ValueError("not dyadic")
    digits = q.numerator * 5 ** k
    sign = "-" if digits < 0 else ""
    s = str(abs(digits)).rjust(k + 1, "0")
    return sign + (s if k == 0 else f"{s[:-k]}.{s[-k:]}")


def decimal_to_fraction(s: str) -> Fraction:
    return Fraction(s.replace(" ", ""))


class GramMatrix:
    """Symmetric positive matrix of BigReal inner products."""

    def __init__(self, entries, prec: int):
        self.entries = entries
        self.prec = prec
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if entries[i][j].separates(entries[j][i]):
                    raise ValueError("gram matrix certified asymmetric")

    @property
    def rank(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, rows, prec: int) -> "GramMatrix":
        n = len(rows)
        ent = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = BigReal.exact(0, prec)
                for a, b in zip(rows[i], rows[j]):
                    s = s + a * b
                ent[i][j] = s
                ent[j][i] = s
        return cls(ent, prec)

    @classmethod
    def from_rational(cls, rows, prec: int) -> "GramMatrix":
        return cls([[BigReal.from_fraction(v, prec) for v in row]
                    for row in rows], prec)

    def entry(self, i: int, j: int) -> BigReal:
        return self.entries[i][j]

    def det(self) -> BigReal:
        if self.rank == 0:
            return BigReal.exact(1, self.prec)
        return ball_det(self.entries, self.prec)

    def is_positive_definite(self) -> bool:
        return ball_cholesky(self.entries, self.prec) is not None

    def scale(self, lam) -> "GramMatrix":
        lam = coerce(lam, self.prec)
        return GramMatrix([[v * lam for v in row] for row in self.entries],
                          self.prec)

    def transform(self, T) -> "GramMatrix":
        """Gram of the transformed row basis T·B, i.e. T G T^T (T integer)."""
        n = self.rank
        ent = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = BigReal.exact(0, self.prec)
                for a in range(n):
                    if T[i][a] == 0:
                        continue
                    for b in range(n):
                        if T[j][b] == 0:
                            continue
                        s = s + self.entries[a][b] * (T[i][a] * T[j][b])
                ent[i][j] = s
        return GramMatrix(ent, self.prec)

    def max_abs_diff(self, other: "GramMatrix") -> BigReal:
        out = BigReal.exact(0, self.prec)
        for ra, rb in zip(self.entries, other.entries):
            for a, b in zip(ra, rb):
                d = abs(a - b)
                if d.hi() > out.hi():
                    out = d
        return out

    def value_at(self, x) -> BigReal:
        """Quadratic form x^T G x for an integer coordinate vector."""
        s = BigReal.exact(0, self.prec)
        n = self.rank
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if x[j] == 0:
                    continue
                s = s + self.entries[i][j] * (x[i] * x[j])
        return s

    def is_exact_rational(self) -> bool:
        return all(v.rad == 0 for row in self.entries for v in row)

    # -- serialization (bit-exact decimal strings) ----------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": "gram/v1",
            "rank": self.rank,
            "prec": self.prec,
            "entries": [[{"mid": dyadic_to_decimal(v.mid_fraction()),
                          "rad": dyadic_to_decimal(v.rad_fraction())}
                         for v in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True,
                          separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, d: dict) -> "GramMatrix":
        if d.get("schema") != "gram/v1":
            raise ValueError("unknown gram schema")
        prec = int(d["prec"])
        ent = [[BigReal(fraction_to_mpf_exact(decimal_to_fraction(e["mid"])),
                        fraction_to_mpf_exact(decimal_to_fraction(e["rad"])),
                        prec)
                for e in row] for row in d["entries"]]
        return cls(ent, prec)

    @classmethod
    def from_json(cls, s: str) -> "GramMatrix":
        return cls.from_json_dict(json.loads(s))


@dataclass
class IsometryVerdict:
    tag: str  # "isometric" | "not_isometric" | "inconclusive"
    witness: Optional[list] = None           # unimodular T, T^T g1 T = g2
    separating: Optional[tuple] = None       # (invariant name, value1, value2)
    tol: Optional[BigReal] = None

    @property
    def is_isometric(self):
        return self.tag == "isometric"


def default_tol(prec: int) -> BigReal:
    return BigReal(mp.mpf(2) ** (-(prec // 2)), mp.mpf(0), prec)


# -- LLL ---------------------------------------------------------------------


def lll_reduce(rows, delta: Fraction = DEFAULT_DELTA, prec: int = None):
    """LLL-reduce a row basis of BigReal vectors.

    Returns (reduced rows as BigReal vectors, T) with reduced = T·rows and
    |det T| = 1.  Gram-Schmidt runs on midpoints at guarded precision; the
    output rows are recombined from the inputs in ball arithmetic, so their
    radii stay honest.
    """
    if not (Fraction(1, 4) < Fraction(delta) < 1):
        raise ValueError("delta must lie in (1/4, 1)")
    n = len(rows)
    if n == 0:
        return [], []
    prec = prec or rows[0][0].prec
    gram = GramMatrix.from_rows(rows, prec)
    try:
        d = gram.det()
    except RankDeficient:
        raise RankDeficient("input rows not certified independent")
    if not d.is_positive():
        raise RankDeficient("input rows not certified independent")

    wp = prec + 64
    deltaf = mp.mpf(Fraction(delta).numerator) / mp.mpf(Fraction(delta).denominator)
    with guarded_workprec(wp):
        B = [[x.mid for x in row] for row in rows]
        T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

        def gso():
            star = []
            mu = [[mp.mpf(0)] * n for _ in range(n)]
            for i in range(n):
                v = list(B[i])
                for j in range(i):
                    denom = _dot(star[j], star[j])
                    mu[i][j] = _dot(B[i], star[j]) / denom
                    v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
                star.append(v)
            return star, mu

        star, mu = gso()
        k = 1
        guard = 0
        while k < n:
            guard += 1
            if guard > 10000 * n * n:
                raise PrecisionExhausted("LLL failed to terminate")
            for j in range(k - 1, -1, -1):
                m = int(mp.nint(mu[k][j]))
                if m:
                    B[k] = [a - m * b for a, b in zip(B[k], B[j])]
                    T[k] = [a - m * b for a, b in zip(T[k], T[j])]
                    star, mu = gso()
            lhs = _dot(star[k], star[k])
            rhs = (deltaf - mu[k][k - 1] ** 2) * _dot(star[k - 1], star[k - 1])
            if lhs >= rhs:
                k += 1
            else:
                B[k], B[k - 1] = B[k - 1], B[k]
                T[k], T[k - 1] = T[k - 1], T[k]
                star, mu = gso()
                k = max(k - 1, 1)

    out = []
    for i in range(n):
        vec = [BigReal.exact(0, prec) for _ in rows[0]]
        for j in range(n):
            c = T[i][j]
            if c:
                vec = [a + x * c for a, x in zip(vec, rows[j])]
        out.append(vec)
    return out, T


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lll_reduce_gram(g: GramMatrix, delta: Fraction = DEFAULT_DELTA):
    """LLL on a Gram matrix alone (via its ball Cholesky rows)."""
    L = ball_cholesky(g.entries, g.prec)
    if L is None:
        raise NotPositiveDefinite("gram not certified positive definite")
    rows = [[v for v in row] for row in L]
    _, T = lll_reduce(rows, delta, g.prec)
    return g.transform(T), T


# -- shortest vectors --------------------------------------------------------


def _canonical_sign(x):
    for v in x:
        if v > 0:
            return list(x)
        if v < 0:
            return [-w for w in x]
    return list(x)


def shortest_vectors(g: GramMatrix, count_bound: int = 64):
    """Certified lattice minimum and minimal vectors (modulo sign).

    Fincke-Pohst enumeration below the best diagonal bound of the
    LLL-reduced Gram; candidates are re-evaluated in ball arithmetic (or
    exactly, for rational Grams) to certify the minimum.
    """
    n = g.rank
    if n == 0:
        raise NotPositiveDefinite("empty gram has no nonzero vectors")
    if n > 12:
        raise EnumerationBudgetExceeded(f"rank {n} exceeds enumeration cap 12")
    red, T = lll_reduce_gram(g)
    if not red.is_positive_definite():
        raise NotPositiveDefinite("gram not certified positive definite")

    wp = g.prec + 48
    with guarded_workprec(wp):
        G = [[v.mid for v in row] for row in red.entries]
        # upper Cholesky G = R^T R
        R = [[mp.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s = G[i][j] - sum(R[k][i] * R[k][j] for k in range(i))
                if i == j:
                    if s <= 0:
                        raise NotPositiveDefinite("midpoint Cholesky failed")
                    R[i][i] = mp.sqrt(s)
                else:
                    R[i][j] = s / R[i][i]
        bound = min(G[i][i] for i in range(n)) * (1 + mp.mpf(2) ** -24)

        sols = []
        budget = [ENUM_NODE_BUDGET]

        def recurse(i, partial, rem):
            budget[0] -= 1
            if budget[0] <= 0:
                raise EnumerationBudgetExceeded("enumeration node budget hit")
            if i < 0:
                if any(partial):
                    sols.append(list(partial))
                return
            center = -sum(R[i][j] * partial[j] for j in range(i + 1, n)) / R[i][i]
            radius = mp.sqrt(rem) / R[i][i]
            lo = int(mp.ceil(center - radius - mp.mpf(2) ** -20))
            hi = int(mp.floor(center + radius + mp.mpf(2) ** -20))
            for x in range(lo, hi + 1):
                partial[i] = x
                t = R[i][i] * (x - center)
                used = t * t
                if used <= rem * (1 + mp.mpf(2) ** -20):
                    recurse(i - 1, partial, max(rem - used, mp.mpf(0)))
            partial[i] = 0

        recurse(n - 1, [0] * n, bound)

    # dedupe modulo sign
    seen = {}
    for s in sols:
        seen[tuple(_canonical_sign(s))] = True
    cands = [list(t) for t in seen]

    use_exact = g.is_exact_rational()
    red_exact = None
    if use_exact:
        red_exact = [[v.mid_fraction() for v in row] for row in red.entries]

    def exact_value(x):
        return sum(red_exact[i][j] * x[i] * x[j]
                   for i in range(n) for j in range(n))

    if use_exact:
        vals = [(exact_value(x), x) for x in cands]
        mval = min(v for v, _ in vals)
        mins = [x for v, x in vals if v == mval]
        minimum = BigReal.from_fraction(mval, g.prec)
    else:
        vals = [(red.value_at(x), x) for x in cands]
        mball = min(vals, key=lambda vx: vx[0].mid)[0]
        mins = []
        for v, x in vals:
            if not v.separates(mball):
                if v.overlaps(mball) and (v - mball).contains_zero():
                    mins.append(x)
        # certify: every excluded candidate strictly above the minimum
        for v, x in vals:
            if x not in mins and not (v - mball).is_positive():
                raise PrecisionExhausted(
                    "cannot certify minimal vector set at this precision")
        minimum = mball

    # map back to original coordinates: row y on reduced basis -> y·T
    out_vecs = []
    for x in mins:
        orig = [sum(x[a] * T[a][b] for a in range(n)) for b in range(n)]
        out_vecs.append(_canonical_sign(orig))
    out_vecs.sort()
    return minimum, out_vecs[:count_bound]


# -- isometry / similarity ---------------------------------------------------


def _int_det(mat):
    m = [[Fraction(v) for v in row] for row in mat]
    from .linalg import det as fdet
    return fdet(m)


def _separated(a: BigReal, b: BigReal, tol: BigReal) -> bool:
    d = abs(a - b)
    return (d - tol).is_positive()


def isometry_test(g1: GramMatrix, g2: GramMatrix, tol: BigReal = None,
                  node_budget: int = SEARCH_NODE_BUDGET) -> IsometryVerdict:
    """Three-valued isometry check for ball Gram matrices.

    NotIsometric is only declared with a separating invariant certified
    beyond combined radii + tol; a failed backtracking search yields
    Inconclusive.
    """
    if g1.rank != g2.rank:
        raise RankMismatch(f"ranks differ: {g1.rank} vs {g2.rank}")
    n = g1.rank
    prec = min(g1.prec, g2.prec)
    if tol is None:
        tol = default_tol(prec)
    if n == 0:
        return IsometryVerdict("isometric", witness=[], tol=tol)

    d1, d2 = g1.det(), g2.det()
    if _separated(d1, d2, tol):
        return IsometryVerdict("not_isometric",
                               separating=("determinant", d1, d2), tol=tol)
    m1, v1 = shortest_vectors(g1)
    m2, v2 = shortest_vectors(g2)
    if _separated(m1, m2, tol):
        return IsometryVerdict("not_isometric",
                               separating=("minimum", m1, m2), tol=tol)
    if len(v1) != len(v2):
        return IsometryVerdict(
            "not_isometric",
            separating=("minimal vector count", len(v1), len(v2)), tol=tol)

    # short-vector norm multisets up to the largest reduced diagonal
    red1, T1 = lll_reduce_gram(g1)
    red2, T2 = lll_reduce_gram(g2)
    ns1 = sorted([red1.entry(i, i) for i in range(n)], key=lambda b: b.mid)
    ns2 = sorted([red2.entry(i, i) for i in range(n)], key=lambda b: b.mid)
    for a, b in zip(ns1, ns2):
        if _separated(a, b, tol):
            return IsometryVerdict(
                "not_isometric",
                separating=("reduced diagonal norms", a, b), tol=tol)

    T = _isometry_search(red1, red2, tol, node_budget)
    if T is not None:
        # red2 = U red1 U^T with rows U; pull back to the original grams:
        # g2 = T2^-1 U T1 g1 (')^T; witness in column convention.
        from .linalg import inverse as finv
        U = T
        T2f = [[Fraction(x) for x in row] for row in T2]
        comp = _int_mat_mul(_rat_to_int(finv(T2f)), _int_mat_mul(U, T1))
        cand = [list(r) for r in zip(*comp)]  # transpose: T^T g1 T = g2
        resid = g1.transform(comp).max_abs_diff(g2)
        if (resid - tol).is_negative() and abs(_int_det(comp)) == 1:
            return IsometryVerdict("isometric", witness=cand, tol=tol)
    return IsometryVerdict("inconclusive", tol=tol)


def _rat_to_int(m):
    out = []
    for row in m:
        r = []
        for v in row:
            if Fraction(v).denominator != 1:
                raise ValueError("expected integer matrix")
            r.append(int(v))
        out.append(r)
    return out


def _int_mat_mul(a, b):
    n, k, m0 = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m0)]
            for i in range(n)]


def _isometry_search(r1: GramMatrix, r2: GramMatrix, tol, node_budget):
    """Backtracking search for integer U with U r1 U^T = r2 (rows of U are
    r1-coordinates of the images of r2's basis vectors)."""
    n = r1.rank
    prec = r1.prec
    with guarded_workprec(prec + 48):
        maxdiag = max(float(r2.entry(i, i).mid) for i in range(n))
        # enumerate candidate image vectors in r1 up to maxdiag
        cands = _vectors_below(r1, maxdiag * (1 + 1e-9) + float(tol.mid))
        tolm = tol.mid + tol.rad

        g1m = [[v.mid for v in row] for row in r1.entries]
        g2m = [[v.mid for v in row] for row in r2.entries]

        def qval(x, y):
            return sum(g1m[i][j] * x[i] * y[j]
                       for i in range(n) for j in range(n)
                       if x[i] and g1m[i][j] and y[j])

        per_index = []
        for i in range(n):
            ci = []
            for v in cands:
                for s in (1, -1):
                    w = [s * a for a in v]
                    if abs(qval(w, w) - g2m[i][i]) <= 4 * tolm + 1e-12 * abs(g2m[i][i]):
                        ci.append(w)
            per_index.append(ci)

        budget = [node_budget]
        rows = []

        def backtrack(i):
            budget[0] -= 1
            if budget[0] <= 0:
                return None
            if i == n:
                if abs(_int_det(rows)) == 1:
                    return [list(r) for r in rows]
                return None
            for w in per_index[i]:
                ok = True
                for j in range(i):
                    if abs(qval(w, rows[j]) - g2m[i][j]) > 4 * tolm + 1e-12:
                        ok = False
                        break
                if ok:
                    rows.append(w)
                    got = backtrack(i + 1)
                    if got is not None:
                        return got
                    rows.pop()
            return None

        return backtrack(0)


def _vectors_below(g: GramMatrix, bound: float):
    """All nonzero integer vectors (mod sign) with x^T g x <= bound."""
    n = g.rank
    prec = g.prec
    with guarded_workprec(prec + 48):
        G = [[v.mid for v in row] for row in g.entries]
        R = [[mp.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s = G[i][j] - sum(R[k][i] * R[k][j] for k in range(i))
                if i == j:
                    if s <= 0:
                        raise NotPositiveDefinite("midpoint Cholesky failed")
                    R[i][i] = mp.sqrt(s)
                else:
                    R[i][j] = s / R[i][i]
        sols = []
        budget = [ENUM_NODE_BUDGET]

        def recurse(i, partial, rem):
            budget[0] -= 1
            if budget[0] <= 0:
                raise EnumerationBudgetExceeded("enumeration node budget hit")
            if i < 0:
                if any(partial):
                    sols.append(list(partial))
                return
            center = -sum(R[i][j] * partial[j] for j in range(i + 1, n)) / R[i][i]
            radius = mp.sqrt(rem) / R[i][i]
            lo = int(mp.ceil(center - radius - mp.mpf(2) ** -20))
            hi = int(mp.floor(center + radius + mp.mpf(2) ** -20))
            for x in range(lo, hi + 1):
                partial[i] = x
                t = R[i][i] * (x - center)
                used = t * t
                if used <= rem * (1 + mp.mpf(2) ** -20):
                    recurse(i - 1, partial, max(rem - used, mp.mpf(0)))
            partial[i] = 0

        recurse(n - 1, [0] * n, mp.mpf(bound))
    seen = {}
    for s in sols:
        seen[tuple(_canonical_sign(s))] = True
    return [list(t) for t in seen]


def similarity_test(g1: GramMatrix, g2: GramMatrix, tol: BigReal = None):
    """Similarity verdict and the witness scale lambda with
    det(lambda·g2) = det(g1); isometry is then tested on (g1, lambda·g2)."""
    if g1.rank != g2.rank:
        raise RankMismatch(f"ranks differ: {g1.rank} vs {g2.rank}")
    n = g1.rank
    lam = (g1.det() / g2.det()).root(n) if n else BigReal.exact(1, g1.prec)
    verdict = isometry_test(g1, g2.scale(lam), tol)
    return verdict, lam
