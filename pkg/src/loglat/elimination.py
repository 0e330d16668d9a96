"""Exact multivariate polynomials for sign-orbit elimination.

Sparse representation {exponent tuple: Fraction} in graded-lex term order.
The sign-orbit product of a linear form is even in every variable; halving
the exponents gives the polynomial cutting out the image hypersurface of the
coordinate-squaring map, which is what the relation probes evaluate at
psi-tuples.
"""

from __future__ import annotations

from fractions import Fraction

from .ball import BigReal
from .errors import BudgetExceeded, NotEven

MAX_SIGN_VARS = 8


class MultiPoly:
    __slots__ = ("terms", "nvars")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exp, c in (terms.items() if isinstance(terms, dict) else terms):
                c = Fraction(c)
                if c == 0:
                    continue
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError("exponent arity mismatch")
                cur = self.terms.get(exp, Fraction(0)) + c
                if cur:
                    self.terms[exp] = cur
                else:
                    self.terms.pop(exp, None)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {tuple([0] * nvars): Fraction(c)})

    @classmethod
    def linear_form(cls, coeffs) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = Fraction(c)
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for exp, c in other.terms.items():
            cur = out.get(exp, Fraction(0)) + c
            if cur:
                out[exp] = cur
            else:
                out.pop(exp, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.nvars,
                             {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                cur = out.get(e, Fraction(0)) + c1 * c2
                if cur:
                    out[e] = cur
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        """Graded-lex descending (canonical print/serialization order)."""
        return sorted(self.terms.items(),
                      key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def substitute_squares(self) -> "MultiPoly":
        """x_i -> x_i^2 for every variable."""
        return MultiPoly(self.nvars,
                         {tuple(2 * x for x in e): c
                          for e, c in self.terms.items()})

    def sign_flip(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            out[e] = -c if e[i] % 2 else c
        return MultiPoly(self.nvars, out)

    def is_even(self) -> bool:
        return all(x % 2 == 0 for e in self.terms for x in e)

    def eval_ball(self, point, prec: int = None) -> BigReal:
        prec = prec or (point[0].prec if point else 64)
        total = BigReal.exact(0, prec)
        for e, c in self.terms.items():
            term = BigReal.from_fraction(c, prec)
            for x, k in zip(point, e):
                if k:
                    term = term * (x ** k)
            total = total + term
        return total

    def eval_fraction(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"


def sign_orbit_product(coeffs) -> MultiPoly:
    """Product of s·f over sign vectors s modulo global negation, where
    f = sum c_i x_i; even in every variable (verified before returning)."""
    cs = [Fraction(c) for c in coeffs]
    if all(c == 0 for c in cs):
        raise ValueError("all coefficients zero")
    n = len(cs) - 1
    if n > MAX_SIGN_VARS:
        raise BudgetExceeded(f"{n} exceeds the sign-variable cap {MAX_SIGN_VARS}")
    factors = []
    for bits in range(1 << n):
        signs = [1] + [1 if (bits >> k) & 1 == 0 else -1 for k in range(n)]
        factors.append(MultiPoly.linear_form(
            [s * c for s, c in zip(signs, cs)]))
    prod = _balanced_product(factors)
    for i in range(n + 1):
        if prod.sign_flip(i) != prod:
            raise AssertionError("sign-orbit product not sign-invariant")
    if not prod.is_even():
        raise AssertionError("sign-orbit product not even")
    return prod


def _balanced_product(factors):
    while len(factors) > 1:
        nxt = []
        for i in range(0, len(factors) - 1, 2):
            nxt.append(factors[i] * factors[i + 1])
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def desquare(h: MultiPoly) -> MultiPoly:
    """Replace every x_i^2 by x_i (exponents halved); requires evenness."""
    if not h.is_even():
        raise NotEven("polynomial has an odd exponent")
    return MultiPoly(h.nvars,
                     {tuple(x // 2 for x in e): c for e, c in h.terms.items()})


def vanishing_check(p: MultiPoly, point, prec: int = None):
    """Certified evaluation; returns (ball value, bits N such that the value
    is certified below 2^-N, or None when separated from zero)."""
    val = p.eval_ball(point, prec)
    hi = abs(val.mid_fraction()) + val.rad_fraction()
    if val.is_nonzero():
        return val, None
    if hi == 0:
        return val, 10 ** 6
    bits = 0
    from fractions import Fraction as F
    while hi < F(1, 2) ** (bits + 1) and bits < 10 ** 6:
        bits += 1
    return val, bits


# -- plain-text monomial syntax -------------------------------------------------


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                        for i, k in enumerate(e) if k)
        coeff = abs(c)
        if mono:
            body = mono if coeff == 1 else f"{coeff}*{mono}"
        else:
            body = str(coeff)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_poly(s: str, nvars: int = None) -> MultiPoly:
    """Parse the plain-text monomial syntax; exact round-trip with format."""
    text = s.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial string")
    # split into signed terms
    terms = []
    cur = ""
    for i, ch in enumerate(text):
        if ch in "+-" and i > 0 and text[i - 1] not in "+-*^/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    parsed = []
    max_var = -1
    for t in terms:
        sign = Fraction(1)
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        coeff = sign
        exps = {}
        for factor in t.split("*"):
            if not factor:
                continue
            if factor.startswith("x"):
                if "^" in factor:
                    var, e = factor[1:].split("^")
                    exps[int(var)] = exps.get(int(var), 0) + int(e)
                else:
                    exps[int(factor[1:])] = exps.get(int(factor[1:]), 0) + 1
                max_var = max(max_var, max(exps))
            else:
                coeff *= Fraction(factor)
        parsed.append((coeff, exps))
    n = nvars if nvars is not None else max_var + 1
    out = {}
    for coeff, exps in parsed:
        e = [0] * n
        for v, k in exps.items():
            if v >= n:
                raise ValueError(f"variable x{v} beyond arity {n}")
            e[v] = k
        e = tuple(e)
        cur = out.get(e, Fraction(0)) + coeff
        if cur:
            out[e] = cur
        else:
            out.pop(e, None)
    return MultiPoly(n, out)
