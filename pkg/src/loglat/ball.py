"""Midpoint-radius ball arithmetic over mpmath arbitrary-precision floats.

Every quantity that is not an exact rational travels through this module as a
:class:`BigReal` (or a rectangular :class:`BigComplex`) so that downstream
equality and sign tests can be certified "beyond the ball radius".  Radius
propagation is conservative: each operation adds the exact first-order
Lipschitz bound for the input radii plus a rounding allowance of a few ulps
of the midpoint, so the ball of a composite always contains the exact result.

Precision is an explicit argument everywhere; no global mpmath state leaks
out of this module.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

import mpmath as mp
from mpmath import mpf

from .errors import BallTooWide

# mpmath's working precision is process-global mutable state; concurrent
# callers serialize on this reentrant lock so that every ball operation sees
# the precision it asked for.  Values themselves are immutable.
_PREC_LOCK = threading.RLock()


@contextmanager
def guarded_workprec(prec: int):
    with _PREC_LOCK:
        with mp.workprec(prec):
            yield

# Guard bits used for midpoint work beyond the requested precision, and the
# relative rounding allowance 2**(ROUND_SLACK - prec) charged per operation.
GUARD_BITS = 10
ROUND_SLACK = 4

# Radius bookkeeping runs at this fixed precision with a multiplicative
# safety factor covering its own round-to-nearest drift.
_RAD_PREC = 80
_RAD_FUDGE = mpf(1) + mpf(2) ** -60


def _round_err(m, prec: int):
    """Allowance for the rounding of midpoint `m` computed at `prec` bits."""
    if m == 0:
        return mpf(0)
    with guarded_workprec(_RAD_PREC):
        return abs(m) * mpf(2) ** (ROUND_SLACK - prec - GUARD_BITS)


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a (dyadic) mpf."""
    sign, man, exp, _ = mp.mpmathify(x)._mpf_
    man, exp = int(man), int(exp)
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError(f"non-finite mpf {x}")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def fraction_to_mpf_exact(q: Fraction):
    """mpf with exactly the value q; q's denominator must be a power of 2."""
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    shift = den.bit_length() - 1
    if den != 1 << shift:
        raise ValueError("fraction is not dyadic")
    with guarded_workprec(max(abs(num).bit_length() + 8, 8)):
        return mpf(num) / mpf(den)


class BigReal:
    """A real number known to lie in [mid - rad, mid + rad]."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad, prec: int):
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int) -> "BigReal":
        """Ball of radius zero around an int or dyadic mpf."""
        if isinstance(value, int):
            with guarded_workprec(max(prec + GUARD_BITS, value.bit_length() + 4)):
                return cls(mpf(value), mpf(0), prec)
        if isinstance(value, mpf):
            return cls(value, mpf(0), prec)
        raise TypeError(f"cannot take {type(value)} as exact")

    @classmethod
    def from_fraction(cls, q, prec: int) -> "BigReal":
        q = Fraction(q)
        with guarded_workprec(prec + GUARD_BITS):
            m = mpf(q.numerator) / mpf(q.denominator)
        return cls(m, _round_err(m, prec), prec)

    # -- interval accessors -------------------------------------------

    def lo(self):
        with guarded_workprec(_RAD_PREC + self.prec):
            return self.mid - self.rad

    def hi(self):
        with guarded_workprec(_RAD_PREC + self.prec):
            return self.mid + self.rad

    def mid_fraction(self) -> Fraction:
        """Exact rational value of the (dyadic) midpoint."""
        return mpf_to_fraction(self.mid)

    def rad_fraction(self) -> Fraction:
        return abs(mpf_to_fraction(self.rad))

    # -- predicates ----------------------------------------------------

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def contains(self, q) -> bool:
        """Whether the exact rational q lies in the ball (exact test)."""
        return abs(self.mid_fraction() - Fraction(q)) <= self.rad_fraction()

    def is_positive(self) -> bool:
        return self.mid > self.rad

    def is_negative(self) -> bool:
        return self.mid < -self.rad

    def is_nonzero(self) -> bool:
        return self.is_positive() or self.is_negative()

    def separates(self, other: "BigReal") -> bool:
        """Certified |self - other| > 0."""
        return (self - other).is_nonzero()

    def overlaps(self, other: "BigReal") -> bool:
        return not self.separates(other)

    # -- arithmetic -----------------------------------------------------

    def _wp(self, other=None) -> int:
        p = self.prec if other is None else max(self.prec, other.prec)
        return p + GUARD_BITS

    def __add__(self, other):
        other = coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        with guarded_workprec(prec + GUARD_BITS):
            m = self.mid + other.mid
        with guarded_workprec(_RAD_PREC):
            r = (self.rad + other.rad) * _RAD_FUDGE + _round_err(m, prec)
        return BigReal(m, r, prec)

    __radd__ = __add__

    def __neg__(self):
        # mpf unary minus rounds at the *global* context precision; fneg with
        # exact=True keeps the mantissa intact.
        return BigReal(mp.fneg(self.mid, exact=True), self.rad, self.prec)

    def __sub__(self, other):
        return self + (-coerce(other, self.prec))

    def __rsub__(self, other):
        return coerce(other, self.prec) + (-self)

    def __mul__(self, other):
        other = coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        with guarded_workprec(prec + GUARD_BITS):
            m = self.mid * other.mid
        with guarded_workprec(_RAD_PREC):
            r = (abs(self.mid) * other.rad + abs(other.mid) * self.rad
                 + self.rad * other.rad) * _RAD_FUDGE + _round_err(m, prec)
        return BigReal(m, r, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = coerce(other, self.prec)
        if not other.is_nonzero():
            raise BallTooWide("division by a ball containing zero")
        prec = max(self.prec, other.prec)
        with guarded_workprec(prec + GUARD_BITS):
            m = self.mid / other.mid
        with guarded_workprec(_RAD_PREC):
            den = abs(other.mid) - other.rad
            r = ((self.rad + abs(m) * other.rad) / den) * _RAD_FUDGE \
                + _round_err(m, prec)
        return BigReal(m, r, prec)

    def __rtruediv__(self, other):
        return coerce(other, self.prec) / self

    def __abs__(self):
        m = self.mid if self.mid >= 0 else mp.fneg(self.mid, exact=True)
        return BigReal(m, self.rad, self.prec)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only nonnegative integer powers")
        out = BigReal.exact(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def sqrt(self) -> "BigReal":
        if not self.is_positive():
            raise BallTooWide("sqrt of a ball not certified positive")
        prec = self.prec
        with guarded_workprec(prec + GUARD_BITS):
            m = mp.sqrt(self.mid)
        with guarded_workprec(_RAD_PREC):
            lo = self.mid - self.rad
            r = (self.rad / (2 * mp.sqrt(lo))) * _RAD_FUDGE + _round_err(m, prec)
        return BigReal(m, r, prec)

    def log(self) -> "BigReal":
        if not self.is_positive():
            raise BallTooWide("log of a ball not certified positive")
        prec = self.prec
        with guarded_workprec(prec + GUARD_BITS):
            m = mp.log(self.mid)
        with guarded_workprec(_RAD_PREC):
            lo = self.mid - self.rad
            r = (self.rad / lo) * _RAD_FUDGE + _round_err(m, prec)
            if m == 0:
                r += mpf(2) ** (ROUND_SLACK - prec - GUARD_BITS)
        return BigReal(m, r, prec)

    def exp(self) -> "BigReal":
        prec = self.prec
        with guarded_workprec(prec + GUARD_BITS):
            m = mp.exp(self.mid)
        with guarded_workprec(_RAD_PREC):
            hi = mp.exp(self.mid + self.rad)
            r = (self.rad * hi) * _RAD_FUDGE + _round_err(m, prec)
        return BigReal(m, r, prec)

    def root(self, n: int) -> "BigReal":
        """Positive n-th root of a certified-positive ball."""
        if not self.is_positive():
            raise BallTooWide("root of a ball not certified positive")
        prec = self.prec
        with guarded_workprec(prec + GUARD_BITS):
            m = mp.root(self.mid, n)
        with guarded_workprec(_RAD_PREC):
            lo = self.mid - self.rad
            deriv = mp.root(lo, n) / (n * lo)
            r = (self.rad * deriv) * _RAD_FUDGE + _round_err(m, prec)
        return BigReal(m, r, prec)

    def widen(self, extra) -> "BigReal":
        with guarded_workprec(_RAD_PREC):
            return BigReal(self.mid, (self.rad + abs(extra)) * _RAD_FUDGE, self.prec)

    def at_prec(self, prec: int) -> "BigReal":
        return BigReal(self.mid, self.rad, prec)

    def __repr__(self):
        with guarded_workprec(max(self.prec, 53)):
            return f"BigReal({mp.nstr(self.mid, 12)} ± {mp.nstr(self.rad, 3)})"


def coerce(x, prec: int) -> BigReal:
    if isinstance(x, BigReal):
        return x
    if isinstance(x, int):
        return BigReal.exact(x, prec)
    if isinstance(x, Fraction):
        return BigReal.from_fraction(x, prec)
    if isinstance(x, mpf):
        return BigReal.exact(x, prec)
    raise TypeError(f"cannot coerce {type(x)} to BigReal")


class BigComplex:
    """Rectangular complex ball: independent real/imaginary BigReals."""

    __slots__ = ("re", "im")

    def __init__(self, re: BigReal, im: BigReal):
        self.re = re
        self.im = im

    @classmethod
    def exact(cls, re, im, prec: int) -> "BigComplex":
        return cls(BigReal.exact(re, prec), BigReal.exact(im, prec))

    @classmethod
    def from_real(cls, re: BigReal) -> "BigComplex":
        return cls(re, BigReal.exact(0, re.prec))

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def is_real(self) -> bool:
        return self.im.mid == 0 and self.im.rad == 0

    def conj(self) -> "BigComplex":
        return BigComplex(self.re, -self.im)

    def __add__(self, other):
        other = coerce_complex(other, self.prec)
        return BigComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return BigComplex(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-coerce_complex(other, self.prec))

    def __rsub__(self, other):
        return coerce_complex(other, self.prec) + (-self)

    def __mul__(self, other):
        other = coerce_complex(other, self.prec)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return BigComplex(re, im)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = coerce_complex(other, self.prec)
        den = other.re * other.re + other.im * other.im
        num = self * other.conj()
        return BigComplex(num.re / den, num.im / den)

    def abs2(self) -> BigReal:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> BigReal:
        a2 = self.abs2()
        if a2.contains_zero():
            # |z| for a box containing 0: midpoint sqrt is unusable; bound
            # from above by the corner distance.
            with guarded_workprec(_RAD_PREC):
                hi = mp.sqrt(abs(a2.mid) + a2.rad)
            return BigReal(mpf(0), hi * _RAD_FUDGE, a2.prec)
        return a2.sqrt()

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def disjoint(self, other: "BigComplex") -> bool:
        return self.re.separates(other.re) or self.im.separates(other.im)

    def __repr__(self):
        return f"BigComplex({self.re!r}, {self.im!r})"


def coerce_complex(x, prec: int) -> BigComplex:
    if isinstance(x, BigComplex):
        return x
    if isinstance(x, BigReal):
        return BigComplex.from_real(x)
    return BigComplex.from_real(coerce(x, prec))


def pi_ball(prec: int) -> BigReal:
    with guarded_workprec(prec + GUARD_BITS):
        m = +mp.pi
    return BigReal(m, _round_err(m, prec), prec)


def ball_sum(xs, prec: int) -> BigReal:
    out = BigReal.exact(0, prec)
    for x in xs:
        out = out + x
    return out


def ball_dot(xs, ys, prec: int) -> BigReal:
    return ball_sum((x * y for x, y in zip(xs, ys)), prec)


def rational_reconstruct(x: BigReal, denom_bound: int):
    """Unique rational p/q, q <= denom_bound, inside the ball, or None.

    Requires x.rad < 1/(2*denom_bound**2) so that at most one such rational
    can exist; raises BallTooWide otherwise.  The search walks the continued
    fraction of the midpoint and exactly verifies the candidate against the
    ball.
    """
    if denom_bound < 1:
        raise ValueError("denom_bound must be >= 1")
    radq = x.rad_fraction()
    if radq >= Fraction(1, 2 * denom_bound * denom_bound):
        raise BallTooWide(
            f"radius {float(radq):.3g} too wide for denominator bound {denom_bound}")
    target = x.mid_fraction()
    # Any rational within rad < 1/(2*q^2) of the midpoint is a continued
    # fraction convergent of the midpoint, so scanning convergents is exact.
    h_prev, h_cur = 0, 1
    k_prev, k_cur = 1, 0
    frac = target
    while True:
        a = frac.numerator // frac.denominator
        h_prev, h_cur = h_cur, a * h_cur + h_prev
        k_prev, k_cur = k_cur, a * k_cur + k_prev
        if k_cur > denom_bound:
            return None
        cand = Fraction(h_cur, k_cur)
        if abs(cand - target) <= radq:
            return cand
        rest = frac - a
        if rest == 0:
            return None
        frac = 1 / rest
