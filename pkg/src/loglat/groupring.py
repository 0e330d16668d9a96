"""The ring R[G] = Z[G]/(N_G) over Q and C, and its invariant-form calculus.

Representatives of R are coefficient vectors over the group elements
normalized to mean zero (subtracting the right multiple of N_G).  The bar
involution is the linear extension of g -> g^{-1}.

Rational central idempotents of Q[G] are computed exactly: a separating
element of the center has an exact minimal polynomial (linear algebra over
Q), its rational factorization gives the primitive idempotents by CRT, and
every claimed identity (e^2 = e, orthogonality, completeness, centrality) is
re-verified exactly before anything is returned.  The complex (per-character)
idempotents reuse the same minimal polynomial through certified root balls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp

from .ball import BigComplex, BigReal
from .errors import (AllZero, InvarianceViolated, OrderBudgetExceeded,
                     ReconstructionFailed, SetupViolated)
from .groups import PermGroupData, identity_perm, invert
from .linalg import rref
from .ratpoly import RationalPoly
from .roots import poly_roots


class GroupRing:
    """Exact arithmetic in Q[G] and its quotient R = Q[G]/(N_G)."""

    def __init__(self, G: PermGroupData):
        self.G = G
        self.m = G.order
        self.table = G.mult_table()
        self.inv = G.inv_table()
        self.ident = G.identity_index()

    # vectors are lists of Fractions of length m (coefficients over elements)

    def zero(self):
        return [Fraction(0)] * self.m

    def group_elem(self, i: int):
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def normalize(self, v):
        """Canonical R-representative: subtract the mean (mod N_G)."""
        mean = sum(v) / self.m
        return [c - mean for c in v]

    def one_r(self):
        return self.normalize(self.group_elem(self.ident))

    def mul(self, a, b, normalize: bool = True):
        out = [Fraction(0)] * self.m
        t = self.table
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            ti = t[i]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                out[ti[j]] += ai * bj
        return self.normalize(out) if normalize else out

    def bar(self, v):
        out = [Fraction(0)] * self.m
        for i, c in enumerate(v):
            out[self.inv[i]] = c
        return out

    def left_action(self, g_idx: int, v):
        """Left multiplication by the group element g (a permutation of
        coefficients; preserves normalization)."""
        out = [Fraction(0)] * self.m
        row = self.table[g_idx]
        for j, c in enumerate(v):
            out[row[j]] = c
        return out

    def r_basis(self):
        """Basis of R: normalized cosets of all elements but the last."""
        return [self.normalize(self.group_elem(i)) for i in range(self.m - 1)]

    def coords_in_r_basis(self, v):
        """Coordinates of a normalized vector over r_basis()."""
        last = v[self.m - 1]
        return [v[i] - last for i in range(self.m - 1)]

    def trace_r(self, v):
        """Trace of left multiplication by the normalized v on R."""
        return self.m * v[self.ident]

    def subgroup_indicator(self, H: PermGroupData):
        s = frozenset(H.elements)
        return [Fraction(1) if g in s else Fraction(0)
                for g in self.G.elements]


# -- A_F and trace forms ------------------------------------------------------


def bar_fixed_basis(ring: GroupRing):
    """Exact basis of A_Q = bar-fixed subspace of R (normalized vectors).

    Indicators of the {g, g^-1} orbits span the bar-fixed space of Q[G];
    their normalizations span A_Q with one redundancy (the all-ones vector),
    so the last orbit is dropped.
    """
    m = ring.m
    seen = [False] * m
    orbits = []
    for i in range(m):
        if seen[i]:
            continue
        j = ring.inv[i]
        orbits.append(sorted({i, j}))
        seen[i] = True
        seen[j] = True
    basis = []
    for orb in orbits[:-1]:
        v = ring.zero()
        for i in orb:
            v[i] = Fraction(1)
        basis.append(ring.normalize(v))
    return basis


def trace_form_matrix(ring: GroupRing, eta):
    """Matrix of (x, y) -> trace_R(x·eta·bar(y)) over the r_basis."""
    basis = ring.r_basis()
    n = len(basis)
    right = [ring.mul(eta, ring.bar(b)) for b in basis]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = ring.trace_r(ring.mul(basis[i], right[j]))
    return out


@dataclass
class SymGBasis:
    forms: list            # list of rational matrices over r_basis
    etas: list             # the bar-fixed elements generating them
    dimension: int


def form_value(ring: GroupRing, form, x_coords, y_coords):
    """Evaluate a form matrix over r_basis coordinates."""
    n = len(form)
    return sum(form[i][j] * x_coords[i] * y_coords[j]
               for i in range(n) for j in range(n)
               if x_coords[i] and y_coords[j])


def is_g_invariant(ring: GroupRing, form) -> bool:
    """Exact G-invariance check of a rational form over r_basis."""
    basis = ring.r_basis()
    gens = [ring.G.index[g] for g in ring.G.generators]
    for gi in gens:
        moved = [ring.coords_in_r_basis(ring.left_action(gi, b)) for b in basis]
        n = len(basis)
        for i in range(n):
            for j in range(n):
                lhs = form_value(ring, form, moved[i], moved[j])
                if lhs != form[i][j]:
                    return False
    return True


def sym_g_space(G: PermGroupData) -> SymGBasis:
    """Basis of Sym^G(R_Q): trace forms of a basis of A_Q, verified exactly."""
    if G.order > 500:
        raise OrderBudgetExceeded("sym_g_space caps order at 500")
    ring = GroupRing(G)
    etas = bar_fixed_basis(ring)
    forms = []
    for eta in etas:
        M = trace_form_matrix(ring, eta)
        n = len(M)
        for i in range(n):
            for j in range(n):
                if M[i][j] != M[j][i]:
                    raise AssertionError("trace form not symmetric")
        if not is_g_invariant(ring, M):
            raise AssertionError("trace form not G-invariant")
        forms.append(M)
    flat = [[M[i][j] for i in range(len(M)) for j in range(len(M))]
            for M in forms]
    from .linalg import rank as frac_rank
    if forms and frac_rank(flat) != len(forms):
        raise AssertionError("trace forms not independent")
    return SymGBasis(forms=forms, etas=etas, dimension=len(etas))


# -- rational and complex central idempotents ---------------------------------


@dataclass
class RationalIdempotent:
    class_coeffs: list     # Fractions, one per conjugacy class
    vector: list           # full coefficient vector over group elements
    is_trivial: bool       # the idempotent N_G/#G


def _center_minpoly(ring: GroupRing, class_vectors):
    """A separating central element and its exact minimal polynomial."""
    k = len(class_vectors)
    m = ring.m
    for seed in range(1, 12):
        weights = [Fraction(pow(i + 1, seed, 10 ** 6 + 3)) for i in range(k)]
        z = [Fraction(0)] * m
        for w, cv in zip(weights, class_vectors):
            for i in range(m):
                z[i] += w * cv[i]
        powers = [ring.group_elem(ring.ident)]
        for _ in range(k):
            powers.append(ring.mul(powers[-1], z, normalize=False))
        # find the first linear dependence among powers (exists at deg <= k)
        rows = []
        for deg in range(1, k + 1):
            rows = [powers[d] for d in range(deg + 1)]
            from .linalg import nullspace
            ker = nullspace([[rows[d][i] for d in range(deg + 1)]
                             for i in range(m)])
            if ker:
                coeffs = ker[0]
                if coeffs[deg] == 0:
                    continue
                poly = [c / coeffs[deg] for c in coeffs]
                if deg == k:
                    return z, poly
                break
    raise ReconstructionFailed(
        "no separating central element found (raise the seed range)")


def _poly_to_sympy(coeffs):
    x = sp.symbols("x")
    return sp.Poly([sp.Rational(c.numerator, c.denominator)
                    for c in reversed(coeffs)], x, domain="QQ")


def _sympy_to_fractions(poly) -> list:
    cs = poly.all_coeffs()
    return [Fraction(int(c.p), int(c.q)) for c in reversed(cs)]


def rational_idempotents(G: PermGroupData):
    """Primitive central idempotents of Q[G], exactly verified.

    The center is Q[z] for a separating central z; CRT against the rational
    factorization of z's minimal polynomial yields the idempotents.
    """
    if G.order > 2000:
        raise OrderBudgetExceeded("rational_idempotents caps order at 2000")
    ring = GroupRing(G)
    classes = G.conjugacy_classes()
    class_vectors = []
    for cls in classes:
        v = ring.zero()
        for i in cls:
            v[i] = Fraction(1)
        class_vectors.append(v)
    z, minpoly = _center_minpoly(ring, class_vectors)
    fac = _poly_to_sympy(minpoly).factor_list()[1]
    factors = [_sympy_to_fractions(f) for f, mult in fac for _ in range(mult)]
    if any(mult != 1 for _, mult in fac):
        raise ReconstructionFailed("center minimal polynomial not squarefree")

    mp_poly = RationalPoly(minpoly)
    idems = []
    from .ratpoly import poly_xgcd
    for fcoeffs in factors:
        f = RationalPoly(fcoeffs)
        cof = mp_poly // f
        g, s, t = poly_xgcd(cof, f)
        if g.degree != 0 and g.coeffs != [Fraction(1)]:
            raise ReconstructionFailed("center factors not coprime")
        # e = cof * s mod minpoly evaluated at z:  e ≡ 1 mod f, 0 mod cof
        epoly = (cof * s) % mp_poly
        e = _eval_poly_at(ring, epoly, z)
        idems.append(e)

    # exact verification
    total = ring.zero()
    for e in idems:
        ee = ring.mul(e, e, normalize=False)
        if ee != e:
            raise ReconstructionFailed("idempotent identity e^2=e failed")
        for i in range(ring.m):
            total[i] += e[i]
    ident_vec = ring.group_elem(ring.ident)
    if total != ident_vec:
        raise ReconstructionFailed("idempotents do not sum to 1")
    for i in range(len(idems)):
        for j in range(i + 1, len(idems)):
            if any(c != 0 for c in ring.mul(idems[i], idems[j],
                                            normalize=False)):
                raise ReconstructionFailed("idempotents not orthogonal")

    out = []
    for e in idems:
        class_coeffs = []
        for cls in classes:
            c0 = e[cls[0]]
            for i in cls:
                if e[i] != c0:
                    raise ReconstructionFailed("idempotent not central")
            class_coeffs.append(c0)
        is_triv = all(c == Fraction(1, G.order) for c in e)
        out.append(RationalIdempotent(class_coeffs=class_coeffs,
                                      vector=e, is_trivial=is_triv))
    out.sort(key=lambda r: (not r.is_trivial, r.class_coeffs))
    return out


def _eval_poly_at(ring: GroupRing, poly: RationalPoly, z):
    out = ring.zero()
    for c in reversed(poly.coeffs):
        out = ring.mul(out, z, normalize=False)
        out[ring.ident] += c
    return out


# -- complex characters through certified root balls --------------------------


@dataclass
class ComplexCharacter:
    values: list          # BigComplex per conjugacy class (class order of G)
    degree: int           # chi(1), certified integer
    idempotent: list      # BigComplex coefficient per class of e_chi
    is_trivial: bool


def _int_from_ball(b: BigReal) -> Optional[int]:
    q = b.mid_fraction()
    r = b.rad_fraction()
    cand = round(q)
    if abs(q - cand) + r < Fraction(1, 2):
        return int(cand)
    return None


def complex_characters(G: PermGroupData, prec: int = 192):
    """Irreducible complex characters as certified balls, one per character.

    Derived from the primitive idempotents of the center evaluated through
    certified root balls of the center's exact minimal polynomial.
    """
    ring = GroupRing(G)
    classes = G.conjugacy_classes()
    k = len(classes)
    class_vectors = []
    for cls in classes:
        v = ring.zero()
        for i in cls:
            v[i] = Fraction(1)
        class_vectors.append(v)
    z, minpoly = _center_minpoly(ring, class_vectors)
    roots = poly_roots(RationalPoly(minpoly), prec)

    # center arithmetic in class-sum coordinates (exact structure constants)
    struct = _center_structure(ring, classes, class_vectors)
    z_coords = _center_coords(ring, classes, z)

    chars = []
    for rb in roots:
        lam = rb.ball
        # Lagrange idempotent prod_{mu != lam} (z - mu)/(lam - mu), in the
        # center, with ball arithmetic over the exact structure constants
        e = _center_one(classes, prec)
        for rb2 in roots:
            if rb2 is rb:
                continue
            mu = rb2.ball
            zz = [_bc_sub(c, _bc_mul_scalar(mu, i == _ident_class(classes)),
                          prec)
                  for i, c in enumerate(_coords_to_balls(z_coords, prec))]
            num = _center_mul_ball(struct, e, zz, prec)
            den = _bc_sub(lam, mu, prec)
            e = [_bc_div(c, den) for c in num]
        # e's coefficient on class c (per element) -> character data
        ident_cls = _ident_class(classes)
        e_ident = e[ident_cls]
        n2 = _bc_mul_scalar_int(e_ident, G.order)
        if not n2.im.contains_zero():
            raise ReconstructionFailed("character degree not real")
        deg2 = _int_from_ball(n2.re)
        if deg2 is None:
            raise ReconstructionFailed("character degree not certified")
        import math
        deg = math.isqrt(deg2)
        if deg * deg != deg2:
            raise ReconstructionFailed("character degree squared not a square")
        # chi(g) = |G| * e(g^{-1}) / chi(1); on classes: invert class index
        inv_class = _class_inversion(G, classes)
        values = []
        for ci in range(k):
            coeff = e[inv_class[ci]]
            v = _bc_div_scalar_int(_bc_mul_scalar_int(coeff, G.order), deg)
            values.append(v)
        is_triv = all(v.re.contains(1) and v.im.contains_zero()
                      for v in values)
        chars.append(ComplexCharacter(values=values, degree=deg,
                                      idempotent=e, is_trivial=is_triv))
    # deterministic order: trivial first, then by degree, then by midpoints
    def key(ch):
        mids = tuple((float(v.re.mid), float(v.im.mid)) for v in ch.values)
        return (not ch.is_trivial, ch.degree, mids)
    chars.sort(key=key)
    return chars, classes


def _ident_class(classes) -> int:
    for i, cls in enumerate(classes):
        if len(cls) == 1 and cls[0] == 0:
            return i
    # identity is element index 0 by sorted order; its class has size 1
    for i, cls in enumerate(classes):
        if 0 in cls:
            return i
    raise AssertionError("identity class not found")


def _class_inversion(G: PermGroupData, classes):
    inv_of = [0] * len(classes)
    elem_class = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            elem_class[i] = ci
    inv_table = G.inv_table()
    for ci, cls in enumerate(classes):
        inv_of[ci] = elem_class[inv_table[cls[0]]]
    return inv_of


def _center_structure(ring: GroupRing, classes, class_vectors):
    """struct[a][b] = coordinates of C_a · C_b over the class sums (exact)."""
    k = len(classes)
    elem_class = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            elem_class[i] = ci
    struct = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            prod = ring.mul(class_vectors[a], class_vectors[b],
                            normalize=False)
            coords = [Fraction(0)] * k
            for i, c in enumerate(prod):
                if c:
                    coords[elem_class[i]] = c  # constant on classes
            struct[a][b] = coords
    return struct


def _center_coords(ring: GroupRing, classes, v):
    coords = []
    for cls in classes:
        coords.append(v[cls[0]])
    return coords


def _coords_to_balls(coords, prec):
    return [BigComplex(BigReal.from_fraction(c, prec),
                       BigReal.exact(0, prec)) for c in coords]


def _center_one(classes, prec):
    k = len(classes)
    ident = _ident_class(classes)
    return [BigComplex.exact(1 if i == ident else 0, 0, prec)
            for i in range(k)]


def _center_mul_ball(struct, a, b, prec):
    k = len(struct)
    out = [BigComplex.exact(0, 0, prec) for _ in range(k)]
    for i in range(k):
        if a[i].contains_zero() and a[i].re.rad == 0 and a[i].im.rad == 0:
            continue
        for j in range(k):
            coeffs = struct[i][j]
            prod = a[i] * b[j]
            for t in range(k):
                if coeffs[t]:
                    out[t] = out[t] + prod * _frac_ball(coeffs[t], prec)
    return out


def _frac_ball(q, prec):
    return BigComplex(BigReal.from_fraction(q, prec), BigReal.exact(0, prec))


def _bc_sub(a, b, prec):
    return a - b


def _bc_mul_scalar(a, flag):
    return a if flag else BigComplex.exact(0, 0, a.prec)


def _bc_mul_scalar_int(a, n: int):
    return BigComplex(a.re * n, a.im * n)


def _bc_div_scalar_int(a, n: int):
    d = BigReal.exact(n, a.prec)
    return BigComplex(a.re / d, a.im / d)


def _bc_div(a, b):
    return a / b


def character_inner_with_triv_on_subgroup(ch: ComplexCharacter,
                                          G: PermGroupData,
                                          classes, H: PermGroupData) -> int:
    """<Res_H chi, 1> = (1/|H|) sum_{h in H} chi(h), certified integer."""
    elem_class = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            elem_class[i] = ci
    prec = ch.values[0].prec
    total = BigComplex.exact(0, 0, prec)
    for h in H.elements:
        total = total + ch.values[elem_class[G.index[h]]]
    total = _bc_div_scalar_int(total, H.order)
    if not total.im.contains_zero():
        raise ReconstructionFailed("multiplicity not real")
    val = _int_from_ball(total.re)
    if val is None:
        raise ReconstructionFailed("multiplicity not certified; raise prec")
    return val


def isotypic_dims(G: PermGroupData, subgroups, prec: int = 192):
    """d[pi][i] = multiplicity of nontrivial pi in N_{H_i}R, exact integers."""
    if G.order > 2000:
        raise OrderBudgetExceeded("isotypic_dims caps order at 2000")
    chars, classes = complex_characters(G, prec)
    rows = []
    for ch in chars:
        if ch.is_trivial:
            continue
        rows.append([character_inner_with_triv_on_subgroup(ch, G, classes, H)
                     for H in subgroups])
    return rows


# -- isotypic split and the psi map -------------------------------------------


def idempotent_block_basis(ring: GroupRing, idem: RationalIdempotent):
    """r_basis coordinates of a basis of e·R (exact column reduction)."""
    vecs = []
    for i in range(ring.m - 1):
        b = ring.normalize(ring.group_elem(i))
        eb = ring.mul(idem.vector, b)
        vecs.append(ring.coords_in_r_basis(eb))
    red, pivots = rref(vecs)
    return [red[r] for r in range(len(pivots))]


def isotypic_split(G: PermGroupData, form, idempotents=None,
                   tol: Optional[BigReal] = None):
    """Restrictions of a symmetric G-invariant form to the isotypic blocks.

    `form` is a matrix over the r_basis with Fraction or BigReal entries.
    Cross-block entries are certified below tolerance (exactly zero for
    rational forms); InvarianceViolated otherwise.
    """
    ring = GroupRing(G)
    if idempotents is None:
        idempotents = [e for e in rational_idempotents(G) if not e.is_trivial]
    bases = [idempotent_block_basis(ring, e) for e in idempotents]
    exact = all(isinstance(v, Fraction) for row in form for v in row)

    def val(x, y):
        n = len(form)
        if exact:
            return sum(form[i][j] * x[i] * y[j]
                       for i in range(n) for j in range(n))
        prec = next(v.prec for row in form for v in row)
        s = BigReal.exact(0, prec)
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                s = s + form[i][j] * BigReal.from_fraction(x[i] * y[j], prec)
        return s

    # cross-block mass
    for a in range(len(bases)):
        for b in range(a + 1, len(bases)):
            for x in bases[a]:
                for y in bases[b]:
                    v = val(x, y)
                    if exact:
                        if v != 0:
                            raise InvarianceViolated(
                                "cross-isotypic entry nonzero")
                    else:
                        bad = (abs(v) - tol).is_positive() if tol is not None \
                            else v.is_nonzero()
                        if bad:
                            raise InvarianceViolated(
                                "cross-isotypic mass exceeds tolerance")
    blocks = []
    for basis in bases:
        blocks.append([[val(x, y) for y in basis] for x in basis])
    return blocks, bases


def right_ideal_basis(ring: GroupRing, H: PermGroupData):
    """Exact basis (r_basis coordinates) of the right ideal N_H·R."""
    nh = ring.subgroup_indicator(H)
    vecs = []
    for i in range(ring.m):
        prod = ring.mul(nh, ring.group_elem(i))
        vecs.append(ring.coords_in_r_basis(prod))
    red, pivots = rref(vecs)
    return [red[r] for r in range(len(pivots))]


def psi_map(G: PermGroupData, form, subgroups, bases=None):
    """Tuple of restricted-Gram determinants, one per subgroup.

    For rational forms the determinants are exact; for ball forms they are
    certified balls.  Raises AllZero when every determinant is (certifiably)
    zero, which is outside the projective map's domain.
    """
    ring = GroupRing(G)
    if bases is None:
        bases = [right_ideal_basis(ring, H) for H in subgroups]
    exact = all(isinstance(v, Fraction) for row in form for v in row)
    from .linalg import det as fdet
    out = []
    for basis in bases:
        n = len(basis)
        if exact:
            M = [[sum(form[i][j] * x[i] * y[j]
                      for i in range(len(form)) for j in range(len(form)))
                  for y in basis] for x in basis]
            out.append(fdet(M) if n else Fraction(1))
        else:
            prec = next(v.prec for row in form for v in row)
            M = [[_ball_restrict(form, x, y, prec) for y in basis]
                 for x in basis]
            if n == 0:
                out.append(BigReal.exact(1, prec))
            else:
                out.append(_ball_det_general(M, prec))
    if exact:
        if all(v == 0 for v in out):
            raise AllZero("all psi determinants vanish")
    else:
        if all(v.contains_zero() for v in out):
            raise AllZero("all psi determinants contain zero")
    return out


def _ball_restrict(form, x, y, prec):
    s = BigReal.exact(0, prec)
    for i in range(len(form)):
        if x[i] == 0:
            continue
        for j in range(len(form)):
            if y[j] == 0:
                continue
            s = s + form[i][j] * BigReal.from_fraction(x[i] * y[j], prec)
    return s


def _ball_det_general(M, prec):
    """Determinant of a ball matrix by cofactor/Gauss without pivoting
    certification (determinant ball may legitimately contain zero)."""
    n = len(M)
    if n == 0:
        return BigReal.exact(1, prec)
    if n == 1:
        return M[0][0]
    # Laplace expansion is fine at these sizes and avoids division
    out = BigReal.exact(0, prec)
    for j in range(n):
        minor = [[M[i][jj] for jj in range(n) if jj != j]
                 for i in range(1, n)]
        term = M[0][j] * _ball_det_general(minor, prec)
        out = out + (term if j % 2 == 0 else -term)
    return out


# -- compositum decomposition -------------------------------------------------


@dataclass
class CompositumDecomposition:
    dim_v: int
    dim_rs: int
    dim_w1: int
    dim_w2: int

    @property
    def consistent(self) -> bool:
        return self.dim_v == self.dim_rs + self.dim_w1 + self.dim_w2


def compositum_decomposition(G: PermGroupData, H1: PermGroupData,
                             H2: PermGroupData) -> CompositumDecomposition:
    """Dimension record of V = (N_H1 + N_H2)R against R[S] + W1⊥ + W2⊥."""
    ident = identity_perm(G.degree)
    inter = set(H1.elements) & set(H2.elements)
    if inter != {ident}:
        raise SetupViolated("H1 ∩ H2 must be trivial")
    if not (G.is_normal(H1) and G.is_normal(H2)):
        raise SetupViolated("H1 and H2 must be normal (Galois subfields)")
    ring = GroupRing(G)
    T = G.subgroup(H1.generators + H2.generators, name="T")
    nh1 = ring.subgroup_indicator(H1)
    nh2 = ring.subgroup_indicator(H2)
    nsum = [a + b for a, b in zip(nh1, nh2)]
    vecs = []
    for i in range(ring.m):
        prod = ring.mul(nsum, ring.group_elem(i))
        vecs.append(ring.coords_in_r_basis(prod))
    _, pivots = rref(vecs)
    dim_v = len(pivots)
    dim_rs = G.order // T.order - 1
    dim_w1 = G.order // H1.order - G.order // T.order
    dim_w2 = G.order // H2.order - G.order // T.order
    return CompositumDecomposition(dim_v=dim_v, dim_rs=dim_rs,
                                   dim_w1=dim_w1, dim_w2=dim_w2)
