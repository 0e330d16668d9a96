"""Dense exact-rational univariate polynomials (degree capped at 64).

Coefficients are `fractions.Fraction`, ascending order (coeffs[k] multiplies
x**k).  All arithmetic is exact; ball evaluation is provided for interval
Newton and embedding work.
"""

from __future__ import annotations

from fractions import Fraction

from .ball import BigComplex, BigReal, coerce, coerce_complex
from .errors import NotSquarefree

MAX_DEGREE = 64


def _norm(coeffs):
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


class RationalPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _norm(coeffs)
        if self.degree > MAX_DEGREE:
            raise ValueError(f"degree {self.degree} exceeds cap {MAX_DEGREE}")

    @classmethod
    def from_roots(cls, roots) -> "RationalPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def monic(self) -> "RationalPoly":
        lc = self.leading()
        return RationalPoly([c / lc for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPoly([
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)])

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPoly([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RationalPoly(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return RationalPoly([]), self
        blc = b[-1]
        quot = [Fraction(0)] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k] / blc
            if c:
                quot[k - db] = c
                for j in range(db + 1):
                    a[k - db + j] -= c * b[j]
        return RationalPoly(quot), RationalPoly(a[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def primitive(self) -> "RationalPoly":
        """Integer-primitive associate (positive leading coefficient)."""
        if self.is_zero():
            return self
        from math import gcd, lcm
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return RationalPoly([Fraction(v, g) for v in ints])

    def gcd(self, other) -> "RationalPoly":
        """Monic gcd via the primitive Euclidean remainder sequence."""
        a, b = self.primitive(), other.primitive()
        while not b.is_zero():
            r = a % b
            a, b = b, (r if r.is_zero() else r.primitive())
        return a if a.is_zero() else a.monic()

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return not self.is_zero()
        return self.gcd(self.derivative()).degree == 0

    def compose(self, other) -> "RationalPoly":
        out = RationalPoly([])
        for c in reversed(self.coeffs):
            out = out * other + RationalPoly([c])
        return out

    # -- evaluation -----------------------------------------------------

    def eval_fraction(self, x) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_ball(self, x: BigReal) -> BigReal:
        out = BigReal.exact(0, x.prec)
        for c in reversed(self.coeffs):
            out = out * x + coerce(c, x.prec)
        return out

    def eval_cball(self, z: BigComplex) -> BigComplex:
        prec = z.prec
        out = BigComplex.exact(0, 0, prec)
        for c in reversed(self.coeffs):
            out = out * z + coerce_complex(coerce(c, prec), prec)
        return out

    def eval_mpf(self, x):
        """Plain Horner over mpf/mpc (no radius tracking)."""
        out = x * 0
        for c in reversed(self.coeffs):
            out = out * x + _mp_fraction(c)
        return out

    def __repr__(self):
        if self.is_zero():
            return "RationalPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*x^{k}" if k else f"{c}")
        return "RationalPoly(" + " + ".join(parts) + ")"


def _mp_fraction(c: Fraction):
    import mpmath as mp
    return mp.mpf(c.numerator) / mp.mpf(c.denominator)


def require_squarefree(p: RationalPoly):
    if not p.is_squarefree():
        raise NotSquarefree("polynomial shares a factor with its derivative")


def _scale_primitive(p: RationalPoly) -> RationalPoly:
    """Divide by the positive content; sign preserved (needed for Sturm)."""
    if p.is_zero():
        return p
    prim = p.primitive()
    return prim if p.leading() > 0 else -prim


def sturm_sequence(p: RationalPoly):
    seq = [_scale_primitive(p), _scale_primitive(p.derivative())]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        rem = seq[-2] % seq[-1]
        if rem.is_zero():
            break
        seq.append(_scale_primitive(-rem))
    return [q for q in seq if not q.is_zero()]


def _sign_changes(seq, x):
    signs = []
    for q in seq:
        v = q.eval_fraction(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_at_inf(seq, positive: bool):
    signs = []
    for q in seq:
        s = 1 if q.leading() > 0 else -1
        if not positive and q.degree % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RationalPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of squarefree `p` in (lo, hi]."""
    seq = sturm_sequence(p)
    vl = _sign_changes_at_inf(seq, False) if lo is None else _sign_changes(seq, lo)
    vh = _sign_changes_at_inf(seq, True) if hi is None else _sign_changes(seq, hi)
    return vl - vh


def poly_xgcd(a: RationalPoly, b: RationalPoly):
    """Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = RationalPoly([1]), RationalPoly([])
    t0, t1 = RationalPoly([]), RationalPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading()
    inv = Fraction(1) / lc
    return r0.monic(), s0 * inv, t0 * inv


def resultant(p: RationalPoly, q: RationalPoly) -> Fraction:
    """Res(p, q) by the Euclidean recursion (exact)."""
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    a, b = p, q
    res = Fraction(1)
    if a.degree < b.degree:
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            res = -res
        a, b = b, a
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return Fraction(0)
        res *= b.leading() ** (a.degree - r.degree)
        if (a.degree * b.degree) % 2 == 1:
            res = -res
        a, b = b, r
    res *= b.leading() ** a.degree
    return res
