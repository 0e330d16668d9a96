"""Certified complex root isolation for exact rational polynomials.

Pipeline: Aberth-Ehrlich simultaneous iteration at roughly twice the target
precision produces approximations; a Sturm count fixes the number of real
roots exactly; each root is then certified and refined by an interval Newton
operator in ball arithmetic (real intervals for real roots, rectangular boxes
for the complex pairs).  The returned balls are pairwise disjoint, so each is
proved to contain exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .ball import guarded_workprec, BigComplex, BigReal
from .errors import PrecisionExhausted
from .ratpoly import RationalPoly, count_real_roots, require_squarefree


@dataclass(frozen=True)
class RootBall:
    ball: BigComplex
    is_real: bool

    @property
    def re(self) -> BigReal:
        return self.ball.re

    @property
    def im(self) -> BigReal:
        return self.ball.im


def _aberth(p: RationalPoly, wp: int):
    """Aberth-Ehrlich iteration at working precision wp (bits)."""
    n = p.degree
    dp = p.derivative()
    with guarded_workprec(wp):
        lc = abs(mp.mpf(p.coeffs[-1].numerator) / mp.mpf(p.coeffs[-1].denominator))
        bound = 1 + max(
            abs(mp.mpf(c.numerator) / mp.mpf(c.denominator)) / lc
            for c in p.coeffs[:-1]) if n > 0 else mp.mpf(1)
        zs = [bound * mp.exp(2j * mp.pi * (mp.mpf(k) / n + mp.mpf(1) / (2 * n))
                             + 0.35j / n)
              for k in range(n)]
        tol = mp.mpf(2) ** (-(wp - 12))
        for _ in range(600):
            max_step = mp.mpf(0)
            new = list(zs)
            for k in range(n):
                pk = p.eval_mpf(zs[k])
                dk = dp.eval_mpf(zs[k])
                if dk == 0:
                    new[k] = zs[k] + tol * (1 + 1j)
                    max_step = max(max_step, tol * 2)
                    continue
                w = pk / dk
                s = sum(1 / (zs[k] - zs[j]) for j in range(n) if j != k)
                denom = 1 - w * s
                corr = w if denom == 0 else w / denom
                new[k] = zs[k] - corr
                max_step = max(max_step, abs(corr))
            zs = new
            if max_step < tol * (1 + bound):
                break
        return zs


def _frac_lo(b: BigReal) -> Fraction:
    return b.mid_fraction() - b.rad_fraction()


def _frac_hi(b: BigReal) -> Fraction:
    return b.mid_fraction() + b.rad_fraction()


def _strictly_inside(inner: BigReal, outer: BigReal) -> bool:
    return _frac_lo(inner) > _frac_lo(outer) and _frac_hi(inner) < _frac_hi(outer)


def _newton_refine_real(p, dp, x0, delta, wp, target_rad):
    """Certify and shrink a real root interval around x0; None if it fails."""
    B = BigReal(x0, delta, wp)
    certified = False
    for _ in range(80):
        mid = BigReal.exact(B.mid, wp)
        dB = dp.eval_ball(B)
        if not dB.is_nonzero():
            return None
        N = mid - p.eval_ball(mid) / dB
        if not certified:
            if _strictly_inside(N, B):
                certified = True
            else:
                return None
        # intersect N with B (both contain the root once certified)
        lo = max(_frac_lo(N), _frac_lo(B))
        hi = min(_frac_hi(N), _frac_hi(B))
        if hi < lo:
            return None
        c = (lo + hi) / 2
        r = (hi - lo) / 2
        B = BigReal.from_fraction(c, wp).widen(
            BigReal.from_fraction(r, wp).mid + BigReal.from_fraction(r, wp).rad)
        if B.rad_fraction() <= target_rad:
            return B
    return B if certified and B.rad_fraction() <= target_rad * 4 else None


def _newton_refine_complex(p, dp, z0, delta, wp, target_rad):
    B = BigComplex(BigReal(z0.real, delta, wp), BigReal(z0.imag, delta, wp))
    certified = False
    for _ in range(80):
        mid = BigComplex.exact(B.re.mid, B.im.mid, wp)
        dB = p_der = dp.eval_cball(B)
        if p_der.contains_zero():
            return None
        N = mid - p.eval_cball(mid) / dB
        if not certified:
            if _strictly_inside(N.re, B.re) and _strictly_inside(N.im, B.im):
                certified = True
            else:
                return None
        parts = []
        for nc, bc in ((N.re, B.re), (N.im, B.im)):
            lo = max(_frac_lo(nc), _frac_lo(bc))
            hi = min(_frac_hi(nc), _frac_hi(bc))
            if hi < lo:
                return None
            mid_f = BigReal.from_fraction((lo + hi) / 2, wp)
            rad_f = BigReal.from_fraction((hi - lo) / 2, wp)
            parts.append(mid_f.widen(rad_f.mid + rad_f.rad))
        B = BigComplex(parts[0], parts[1])
        if max(B.re.rad_fraction(), B.im.rad_fraction()) <= target_rad:
            return B
    ok = max(B.re.rad_fraction(), B.im.rad_fraction()) <= target_rad * 4
    return B if certified and ok else None


def poly_roots(p: RationalPoly, prec: int) -> list[RootBall]:
    """All roots of squarefree p as disjoint certified balls at `prec` bits."""
    require_squarefree(p)
    n = p.degree
    if n <= 0:
        return []
    if n == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [RootBall(BigComplex(BigReal.from_fraction(r, prec),
                                    BigReal.exact(0, prec)), True)]
    n_real = count_real_roots(p)
    dp = p.derivative()
    wp = 2 * prec + 32
    for _attempt in range(3):
        roots = _try_isolate(p, dp, n, n_real, wp, prec)
        if roots is not None:
            return roots
        wp *= 2
    raise PrecisionExhausted(f"could not isolate roots of degree-{n} polynomial")


def _try_isolate(p, dp, n, n_real, wp, prec):
    approx = _aberth(p, wp)
    with guarded_workprec(wp):
        approx.sort(key=lambda z: abs(z.imag))
        scale = max(1, max(abs(z) for z in approx))
        target = Fraction(1, 2) ** (prec + 2)
        delta0 = mp.mpf(2) ** (-(wp // 2))
        out = []
        for idx, z in enumerate(approx[:n_real]):
            got = None
            delta = delta0 * scale
            for _ in range(6):
                got = _newton_refine_real(p, dp, z.real, delta, wp, target)
                if got is not None:
                    break
                delta *= 64
            if got is None:
                return None
            out.append(RootBall(BigComplex(got.at_prec(prec),
                                           BigReal.exact(0, prec)), True))
        pos = [z for z in approx[n_real:] if z.imag > 0]
        if 2 * len(pos) != n - n_real:
            return None
        for z in pos:
            got = None
            delta = delta0 * scale
            for _ in range(6):
                got = _newton_refine_complex(p, dp, z, delta, wp, target)
                if got is not None:
                    break
                delta *= 64
            if got is None or not got.im.is_positive():
                return None
            box = BigComplex(got.re.at_prec(prec), got.im.at_prec(prec))
            out.append(RootBall(box, False))
            out.append(RootBall(box.conj(), False))
        # order: real ascending, then complex by (argument, imag sign)
        reals = sorted([r for r in out if r.is_real],
                       key=lambda r: r.re.mid)
        comps = sorted([r for r in out if not r.is_real],
                       key=lambda r: (mp.atan2(r.im.mid, r.re.mid),))
        out = reals + comps
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                if not out[i].ball.disjoint(out[j].ball):
                    return None
        return out
