"""One-shot data-prep: find fundamental unit systems for the two septic
fields and cross-check them with an Euler-product residue estimate.

Not part of the library: this is the tooling that produced the checked-in
golden bundles.  Strategy:
  1. small-norm algebraic integers via LLL on randomly re-weighted Minkowski
     embeddings of Z[theta];
  2. units from elements of norm ±1 and from exact quotients of equal-norm,
     equal-ideal pairs;
  3. a Z-basis of the discovered unit group via relation LLL at high
     precision, with exact verification of every multiplicative relation;
  4. saturation at small primes via p-th-root reconstruction;
  5. the class-number-formula cross-check: a partial Euler product estimates
     res_{s=1} zeta_K, and h·reg / reg(found) ≈ h/index pins h and the index.
"""

from __future__ import annotations

import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import mpmath as mp

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from loglat.linalg import det as frac_det, solve as frac_solve  # noqa: E402
from loglat.numberfield import build_field  # noqa: E402
from loglat.ratpoly import RationalPoly  # noqa: E402

P1 = [-5217, -3782, 496, 755, 25, -47, -2, 1]
P2 = [19, 233, 793, 480, -8, -47, -2, 1]
DISC_K = 5 ** 2 * 11 ** 6 * 19 ** 4   # common field discriminant


# ---------------------------------------------------------------- float LLL

def lll_floats(basis, delta=0.99):
    """Textbook LLL on float row vectors; returns (basis, T) with exact
    integer T tracking row operations."""
    n = len(basis)
    B = [list(map(float, row)) for row in basis]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def gso():
        star, mu = [], [[0.0] * n for _ in range(n)]
        for i in range(n):
            v = B[i][:]
            for j in range(i):
                denom = sum(x * x for x in star[j])
                mu[i][j] = sum(a * b for a, b in zip(B[i], star[j])) / denom
                v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
            star.append(v)
        return star, mu

    star, mu = gso()
    k = 1
    count = 0
    while k < n:
        count += 1
        if count > 10000:
            break
        for j in range(k - 1, -1, -1):
            m = round(mu[k][j])
            if m:
                B[k] = [a - m * b for a, b in zip(B[k], B[j])]
                T[k] = [a - m * b for a, b in zip(T[k], T[j])]
        star, mu = gso()
        if sum(x * x for x in star[k]) >= \
                (delta - mu[k][k - 1] ** 2) * sum(x * x for x in star[k - 1]):
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            T[k], T[k - 1] = T[k - 1], T[k]
            star, mu = gso()
            k = max(k - 1, 1)
    return B, T


class Septic:
    def __init__(self, coeffs, dps=140, index=1):
        self.poly = RationalPoly(coeffs)
        self.n = self.poly.degree
        self.index = index   # [O_K : Z[theta]]; bounds unit denominators
        mp.mp.dps = dps
        self.roots = mp.polyroots([mp.mpf(int(c)) for c in
                                   reversed(coeffs)], maxsteps=200,
                                  extraprec=120)
        self.roots = sorted([r.real for r in self.roots])
        self.K = build_field(self.poly, 192, trust_irreducible=True)

    def embed_coords(self, coords):
        """Embedding vector of sum coords[k] theta^k (mpf)."""
        out = []
        for r in self.roots:
            acc = mp.mpf(0)
            for c in reversed(coords):
                acc = acc * r + (mp.mpf(c.numerator) / c.denominator
                                 if isinstance(c, Fraction) else mp.mpf(c))
            out.append(acc)
        return out

    def norm_int(self, coords):
        """Exact integer norm of an integer-coordinate element (via the
        numeric product, rounded, then certified by magnitude)."""
        prod = mp.mpf(1)
        for r in self.roots:
            acc = mp.mpf(0)
            for c in reversed(coords):
                acc = acc * r + c
            prod *= acc
        val = mp.nint(prod)
        if abs(prod - val) > 0.01:
            return None
        return int(val)

    def element(self, coords):
        return self.K.element(list(coords))

    def logs(self, coords):
        return [mp.log(abs(x)) for x in self.embed_coords(coords)]


def find_small_norm_elements(F: Septic, tries=260, seed=11,
                             norm_cap=120000):
    """LLL on randomly reweighted embeddings; returns {coords: norm}."""
    rnd = random.Random(seed)
    found = {}
    basis_cols = [[r ** k for r in F.roots] for k in range(F.n)]
    for t in range(tries):
        w = [rnd.uniform(-7.5, 7.5) for _ in range(F.n)]
        shift = sum(w) / F.n
        w = [x - shift for x in w]
        rows = []
        for k in range(F.n):
            rows.append([float(basis_cols[k][i] * mp.e ** w[i])
                         for i in range(F.n)])
        _, T = lll_floats(rows)
        for coeffs in T:
            coords = tuple(coeffs)
            if coords in found or all(c == 0 for c in coords):
                continue
            nrm = F.norm_int(list(coords))
            if nrm is not None and nrm != 0 and abs(nrm) <= norm_cap:
                found[coords] = nrm
    return found


def units_from_elements(F: Septic, elements):
    """Units: direct |N|=1 hits plus exact quotients of equal-|norm| pairs."""
    units = []
    seen = set()

    def add_unit(fe):
        key = tuple(fe.coords)
        negkey = tuple(-c for c in fe.coords)
        if key in seen or negkey in seen:
            return
        if fe.is_unit():
            seen.add(key)
            units.append(fe)

    by_norm = {}
    for coords, nrm in elements.items():
        if abs(nrm) == 1:
            add_unit(F.element(coords))
        else:
            by_norm.setdefault(abs(nrm), []).append(coords)

    V = mp.matrix(F.n, F.n)
    for i in range(F.n):
        for k in range(F.n):
            V[i, k] = F.roots[i] ** k
    emb_cache = {}

    def emb(coords):
        if coords not in emb_cache:
            emb_cache[coords] = F.embed_coords(list(coords))
        return emb_cache[coords]

    for nrm, group in sorted(by_norm.items()):
        if len(group) < 2 or nrm > 50000:
            continue
        group = group[:24]
        for i, a in enumerate(group):
            ea = emb(a)
            for b in group[i + 1:]:
                eb = emb(b)
                # numeric quotient; cheap pre-filter before exact work
                ratios = mp.matrix([x / y for x, y in zip(ea, eb)])
                coords_num = mp.lu_solve(V, ratios)
                cand = []
                ok = True
                for vnum in coords_num:
                    q = _rational_near(vnum, F.index)
                    if q is None:
                        ok = False
                        break
                    cand.append(q)
                if not ok:
                    continue
                qe = F.element(cand)
                if qe * F.element(b) == F.element(a) and qe.is_unit():
                    add_unit(qe)
    return units


def unit_log_matrix(F: Septic, units):
    return [F.logs(list(u.coords)) for u in units]


def build_basis_incremental(F: Septic, units, target_rank=6, verbose=True):
    """Z-basis of the group generated by `units`, one unit at a time so the
    relation-LLL dimension stays tiny."""
    basis = []
    for u in units:
        if all(c == 0 for c in u.coords[1:]):
            continue
        trial = basis + [u]
        exps = relation_lll_basis(F, trial, verbose=False)
        new_basis = [materialize(F, trial, e) for e in exps]
        if len(new_basis) < len(basis):
            continue   # numerical hiccup; keep the old basis
        # replace only if the lattice grew (more vectors, or an index gain
        # detected by a regulator drop)
        if len(new_basis) > len(basis):
            basis = new_basis
        else:
            old_reg = regulator_of(F, basis) if len(basis) == target_rank else None
            new_reg = regulator_of(F, new_basis) if len(new_basis) == target_rank else None
            if old_reg is not None and new_reg is not None \
                    and new_reg < old_reg * (1 - mp.mpf(2) ** -30):
                basis = new_basis
            elif old_reg is None:
                basis = new_basis
        if verbose and len(basis) == target_rank:
            pass
    if verbose:
        print(f"    incremental basis: rank {len(basis)}")
    return basis


def relation_lll_basis(F: Septic, units, verbose=True):
    """Z-basis of the subgroup generated by `units`, by LLL on
    [I | C·logs] and exact verification of the detected relations."""
    k = len(units)
    logs = unit_log_matrix(F, units)
    C = mp.mpf(2) ** 160
    rows = []
    for i in range(k):
        rows.append([mp.mpf(1 if j == i else 0) for j in range(k)]
                    + [C * x for x in logs[i]])
    red, T = _mp_lll(rows)
    # rows whose log part is tiny are relations; the rest span the lattice
    basis_exps = []
    for i in range(k):
        tail = red[i][k:]
        tailnorm = mp.sqrt(sum(x * x for x in tail)) / C
        if tailnorm < mp.mpf(2) ** -100:
            rel = T[i]
            if any(rel):
                _verify_relation(F, units, rel)
        else:
            basis_exps.append(T[i])
    if verbose:
        print(f"    relation-LLL: {k} generators -> "
              f"{len(basis_exps)} basis exponent vectors")
    return basis_exps


def _verify_relation(F: Septic, units, rel):
    """Exact check of prod units[i]^rel[i] = ±1."""
    acc = F.K.one()
    for u, e in zip(units, rel):
        if e:
            acc = acc * (u ** int(e))
    if tuple(acc.coords) not in ((Fraction(1),) + (Fraction(0),) * (F.n - 1),
                                 (Fraction(-1),) + (Fraction(0),) * (F.n - 1)):
        raise AssertionError(f"claimed relation {rel} is false")


def _mp_lll(rows, delta=0.99):
    n = len(rows)
    B = [row[:] for row in rows]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def gso():
        star, mu = [], [[mp.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            v = B[i][:]
            for j in range(i):
                denom = sum(x * x for x in star[j])
                mu[i][j] = sum(a * b for a, b in zip(B[i], star[j])) / denom
                v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
            star.append(v)
        return star, mu

    star, mu = gso()
    k = 1
    count = 0
    while k < n:
        count += 1
        if count > 20000:
            break
        for j in range(k - 1, -1, -1):
            m = int(mp.nint(mu[k][j]))
            if m:
                B[k] = [a - m * b for a, b in zip(B[k], B[j])]
                T[k] = [a - m * b for a, b in zip(T[k], T[j])]
        star, mu = gso()
        if sum(x * x for x in star[k]) >= \
                (delta - mu[k][k - 1] ** 2) * sum(x * x for x in star[k - 1]):
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            T[k], T[k - 1] = T[k - 1], T[k]
            star, mu = gso()
            k = max(k - 1, 1)
    return B, T


def materialize(F: Septic, units, exps):
    acc = F.K.one()
    for u, e in zip(units, exps):
        if e:
            acc = acc * (u ** int(e))
    return acc


def regulator_of(F: Septic, unit_elems):
    logs = [F.logs(list(u.coords)) for u in unit_elems]
    n = len(logs)
    G = [[sum(a * b for a, b in zip(logs[i], logs[j])) for j in range(n)]
         for i in range(n)]
    return mp.sqrt(_mp_det(G) / F.n)


def _mp_det(M):
    n = len(M)
    A = [row[:] for row in M]
    det = mp.mpf(1)
    for c in range(n):
        piv = max(range(c, n), key=lambda i: abs(A[i][c]))
        if abs(A[piv][c]) == 0:
            return mp.mpf(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def saturate(F: Septic, basis_units, primes=(2, 3, 5, 7, 11, 13)):
    """Try to replace the lattice by a p-fold denser one via p-th roots.

    Exhaustive over (Z/p)^6 classes for p <= 5; generator-and-pairs probing
    beyond.  A candidate root must reconstruct to exact rational coordinates
    and pass the exact unit check.
    """
    changed = True
    while changed:
        changed = False
        for p in primes:
            classes = _classes_to_probe(len(basis_units), p)
            for exps in classes:
                root = _try_root(F, basis_units, exps, p)
                if root is not None:
                    print(f"    saturation hit at p={p}: exponents {exps}")
                    basis_units = _enlarge(F, basis_units, exps, p, root)
                    changed = True
                    break
            if changed:
                break
    return basis_units


def _classes_to_probe(k, p):
    if p <= 5:
        import itertools
        out = []
        for exps in itertools.product(range(p), repeat=k):
            if any(exps):
                out.append(exps)
        # quotient by scalar multiples: keep first nonzero coordinate == 1
        seen = set()
        final = []
        for e in out:
            canon = None
            for s in range(1, p):
                cand = tuple((s * x) % p for x in e)
                if canon is None or cand < canon:
                    canon = cand
            if canon not in seen:
                seen.add(canon)
                final.append(canon)
        return final
    # large p: single generators and pairs
    out = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        out.append(tuple(e))
    for i in range(k):
        for j in range(i + 1, k):
            for a in (1, p - 1):
                e = [0] * k
                e[i] = 1
                e[j] = a
                out.append(tuple(e))
    return out


def _try_root(F: Septic, units, exps, p):
    """Reconstruct (prod u^e)^(1/p) if it lies in O_K; None otherwise.

    For odd p the real p-th root of each conjugate is unique; for p = 2 the
    root's conjugates carry an unknown sign pattern, scanned exhaustively
    (modulo a global sign) with a cheap one-coordinate snap prefilter.
    """
    vec = [mp.mpf(1)] * F.n
    for u, e in zip(units, exps):
        if e:
            emb = F.embed_coords(list(u.coords))
            vec = [v * x ** int(e) for v, x in zip(vec, emb)]
    V = mp.matrix(F.n, F.n)
    for i in range(F.n):
        for k in range(F.n):
            V[i, k] = F.roots[i] ** k
    Vinv = V ** -1

    def attempt(roots):
        c = Vinv * mp.matrix(roots)
        coords = []
        for v in c:
            q = _rational_near(v, F.index * p)
            if q is None:
                return None
            coords.append(q)
        fe = F.element(coords)
        if not fe.is_unit():
            return None
        target = F.K.one()
        for u, e in zip(units, exps):
            if e:
                target = target * (u ** int(e))
        powed = fe ** p
        if powed == target or powed == target * Fraction(-1):
            return fe
        return None

    if p % 2 == 1:
        roots = [mp.sign(x) * mp.root(abs(x), p) for x in vec]
        return attempt(roots)
    # p == 2: the candidate must be totally positive up to a global sign
    if any(x < 0 for x in vec):
        vec = [-x for x in vec]
        if any(x < 0 for x in vec):
            return None
    base = [mp.sqrt(x) for x in vec]
    for bits in range(1 << (F.n - 1)):
        roots = [base[0]]
        for i in range(1, F.n):
            s = -1 if (bits >> (i - 1)) & 1 else 1
            roots.append(s * base[i])
        # one-coordinate snap prefilter
        c0 = sum(Vinv[0, k] * roots[k] for k in range(F.n))
        scaled = c0 * (F.index * p)
        if abs(scaled - mp.nint(scaled)) > mp.mpf(2) ** -70:
            continue
        got = attempt(roots)
        if got is not None:
            return got
    return None


def _rational_near(x, denmult):
    """x as a rational with denominator dividing denmult, or None."""
    scaled = mp.mpf(x) * denmult
    n = mp.nint(scaled)
    if abs(scaled - n) > mp.mpf(2) ** -70:
        return None
    if abs(n) > mp.mpf(10) ** 60:
        return None
    return Fraction(int(n), denmult)


def _enlarge(F: Septic, units, exps, p, root):
    """New basis of the lattice generated by `units` and `root` (whose p-th
    power is the exps-combination)."""
    gens = list(units) + [root]
    return [materialize(F, gens, e) for e in relation_lll_basis(
        F, gens, verbose=False)]


# ------------------------------------------------- closure transport (K1->K2)

def fano_lines_of_roots(F1: Septic):
    """The 7 root triples of p1 that the Galois closure permutes as Fano
    lines, found through the degree-35 triple-sum resolvent."""
    import itertools
    import sympy as sp
    triples = list(itertools.combinations(range(F1.n), 3))
    sums = [F1.roots[a] + F1.roots[b] + F1.roots[c] for a, b, c in triples]
    poly = [mp.mpf(1)]
    for s in sums:
        poly = [p - s * q for p, q in
                zip(poly + [mp.mpf(0)], [mp.mpf(0)] + poly)]
    # poly is now monic of degree 35 (built in falling order)
    coeffs = []
    for c in poly:
        r = mp.nint(c)
        if abs(c - r) > 1e-60:
            raise AssertionError("resolvent coefficients not integral")
        coeffs.append(int(r))
    x = sp.symbols("x")
    fac = sp.Poly(coeffs, x).factor_list()[1]
    deg7 = [g for g, e in fac if sp.degree(g) == 7]
    if len(deg7) != 1:
        raise AssertionError(f"expected a unique degree-7 factor, got {len(deg7)}")
    f7 = deg7[0]
    f7_coeffs = [int(c) for c in sp.Poly(f7, x).all_coeffs()]
    # which triples belong to the degree-7 orbit: f7 vanishes at their sums
    lines = []
    for T, s in zip(triples, sums):
        acc = mp.mpf(0)
        for c in f7_coeffs:
            acc = acc * s + c
        if abs(acc) < mp.mpf(10) ** (-40):
            lines.append(T)
    if len(lines) != 7:
        raise AssertionError(f"found {len(lines)} lines, expected 7")
    # sanity: pairwise intersections of lines have size exactly 1
    for i in range(7):
        for j in range(i + 1, 7):
            if len(set(lines[i]) & set(lines[j])) != 1:
                raise AssertionError("line structure is not a Fano plane")
    return lines


def transport_units(F1: Septic, units1, F2: Septic, verbose=True):
    """Units of K2 from units of K1: the product of a unit's conjugates over
    a Fano line of p1's roots lies in the plane field, which is K2."""
    lines = fano_lines_of_roots(F1)
    emb1 = {tuple(u.coords): F1.embed_coords(list(u.coords)) for u in units1}

    V2 = mp.matrix(F2.n, F2.n)
    for i in range(F2.n):
        for k in range(F2.n):
            V2[i, k] = F2.roots[i] ** k
    V2inv = V2 ** -1

    def reconstruct(vals_in_t_order):
        c = V2inv * mp.matrix(vals_in_t_order)
        coords = []
        for v in c:
            q = _rational_near(v, F2.index)
            if q is None:
                return None
            coords.append(q)
        return coords

    # find the embedding matching once, with the first non-degenerate unit
    matching = None
    import itertools as it
    for u in units1:
        vals = [_line_product(emb1[tuple(u.coords)], L) for L in lines]
        if len({mp.nstr(v, 20) for v in vals}) != 7:
            continue
        for perm in it.permutations(range(7)):
            w = [mp.mpf(0)] * 7
            for j, v in enumerate(vals):
                w[perm[j]] = v
            # cheap single-coordinate snap prefilter
            c0 = sum(V2inv[0, k] * w[k] for k in range(7))
            if abs(c0 * F2.index - mp.nint(c0 * F2.index)) > mp.mpf(2) ** -70:
                continue
            coords = reconstruct(w)
            if coords is None:
                continue
            fe = F2.element(coords)
            if fe.is_unit():
                matching = perm
                break
        if matching:
            break
    if matching is None:
        if verbose:
            print("    transport: no embedding matching found")
        return []
    out = []
    for u in units1:
        vals = [_line_product(emb1[tuple(u.coords)], L) for L in lines]
        w = [mp.mpf(0)] * 7
        for j, v in enumerate(vals):
            w[matching[j]] = v
        coords = reconstruct(w)
        if coords is None:
            continue
        fe = F2.element(coords)
        if fe.is_unit():
            out.append(fe)
    if verbose:
        print(f"    transport: {len(out)} units carried over")
    return out


def _line_product(embedding_values, line):
    prod = mp.mpf(1)
    for i in line:
        prod *= embedding_values[i]
    return prod


# ------------------------------------------------------------ Euler product

def small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = b"\x00" * len(sieve[i * i::i])
    return [i for i in range(limit + 1) if sieve[i]]


def residue_degrees(coeffs, p):
    """Multiset of residue degrees of the primes above p (p unramified,
    p-maximal polynomial) via distinct-degree gcd splitting."""
    f = [c % p for c in coeffs]

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return out

    def pmod(a, m):
        a = a[:]
        dm = len(m) - 1
        inv = pow(m[-1], p - 2, p)
        while len(a) - 1 >= dm:
            c = a[-1] * inv % p
            if c:
                shift = len(a) - 1 - dm
                for j in range(len(m)):
                    a[shift + j] = (a[shift + j] - c * m[j]) % p
            a.pop()
            while a and a[-1] == 0 and len(a) - 1 >= dm:
                a.pop()
        while a and a[-1] == 0:
            a.pop()
        return a or [0]

    def pgcd(a, b):
        while b != [0]:
            a, b = b, pmod(a, b)
        inv = pow(a[-1], p - 2, p)
        return [c * inv % p for c in a]

    def _pow_mod(base, exp, m):
        out = [1]
        b = base[:]
        while exp:
            if exp & 1:
                out = pmod(pmul(out, b), m)
            exp >>= 1
            if exp:
                b = pmod(pmul(b, b), m)
        return out

    rem = [c for c in f]
    degs = []
    d = 0
    h = [0, 1]
    while len(rem) - 1 > 0:
        d += 1
        if d > (len(rem) - 1) // 2:
            degs.append(len(rem) - 1)
            break
        h = _pow_mod(h, p, rem)
        sub = h[:]
        while len(sub) < 2:
            sub.append(0)
        sub[1] = (sub[1] - 1) % p
        while len(sub) > 1 and sub[-1] == 0:
            sub.pop()
        if sub == [0]:
            # x^(p^d) = x on the whole cofactor: all factors of degree d
            degs.extend([d] * ((len(rem) - 1) // d))
            rem = [1]
            break
        g = pgcd(rem, sub)
        if len(g) - 1 > 0:
            k = (len(g) - 1) // d
            degs.extend([d] * k)
            quot = rem
            for _ in range(1):
                quot = _pdiv(quot, g, p)
            rem = quot
            h = pmod(h, rem)
    return degs


def _pdiv(a, b, p):
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv % p
        out[k] = c
        if c:
            for j in range(len(b)):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return out


def euler_residue_estimate(limit=400000):
    """Partial Euler product for res_{s=1} zeta_K of the (common) septic
    zeta, using the p-maximal polynomial at each awkward prime."""
    import sympy as sp
    x = sp.symbols("x")
    ram = {}
    # ramified / index primes with a p-maximal defining polynomial
    for p, coeffs in ((5, P2), (11, P1), (19, P1), (3881, P1)):
        fp = sp.Poly([int(c) for c in reversed(coeffs)], x,
                     modulus=p, symmetric=False)
        fac = fp.factor_list()[1]
        ram[p] = [int(sp.degree(g)) for g, e in fac]
    primes = small_primes(limit)
    prod = mp.mpf(1)
    for p in primes:
        if p in ram:
            degs = ram[p]
        else:
            degs = residue_degrees([int(c) for c in P1], p)
        local = mp.mpf(1) - mp.mpf(1) / p
        for d in degs:
            local /= (mp.mpf(1) - mp.mpf(p) ** (-d))
        prod *= local
    return prod


# ------------------------------------------------------------------- driver

def hunt(label, coeffs, seed, tries, index=1):
    print(f"== {label}")
    F = Septic(coeffs, index=index)
    elements = find_small_norm_elements(F, tries=tries, seed=seed)
    print(f"    {len(elements)} small-norm elements", flush=True)
    units = units_from_elements(F, elements)
    print(f"    {len(units)} verified units collected", flush=True)
    basis = build_basis_incremental(F, units)
    if len(basis) != 6:
        raise SystemExit(f"rank {len(basis)} != 6; widen the search")
    basis = saturate(F, basis)
    reg = regulator_of(F, basis)
    print(f"    regulator of found lattice: {mp.nstr(reg, 20)}", flush=True)
    return F, basis, reg


def main():
    mp.mp.dps = 140
    tries = int(sys.argv[1]) if len(sys.argv) > 1 else 260
    F1, b1, r1 = hunt("septic-1", P1, seed=11, tries=tries, index=625)
    F2, b2, r2 = hunt("septic-2", P2, seed=23, tries=tries, index=3881)
    print("reg ratio r1/r2 =", mp.nstr(r1 / r2, 30))
    est = euler_residue_estimate()
    hreg = est * mp.sqrt(DISC_K) / 2 ** 6
    print("Euler estimate of res:", mp.nstr(est, 10),
          "=> h*reg ~", mp.nstr(hreg, 12))
    print("h/index for field 1:", mp.nstr(hreg / r1, 8))
    print("h/index for field 2:", mp.nstr(hreg / r2, 8))
    out = {
        "septic1": [[str(c) for c in u.coords] for u in b1],
        "septic2": [[str(c) for c in u.coords] for u in b2],
        "reg1": mp.nstr(r1, 40), "reg2": mp.nstr(r2, 40),
        "euler_h_reg": mp.nstr(hreg, 12),
    }
    Path(__file__).with_name("unit_hunt_result.json").write_text(
        json.dumps(out, indent=2) + "\n")
    print("wrote unit_hunt_result.json")


if __name__ == "__main__":
    main()
