"""Galois action recovery and the R[G]-module structure of the log lattice.

Automorphisms are found numerically (integer relations between embedding
values) and then verified exactly: a candidate theta -> q(theta) is accepted
only when p(q(x)) = 0 mod p(x) holds in Q[x].  A wrong reconstruction can
therefore never certify.  The embedding permutations expose the group to the
permutation machinery; their composition table is checked against exact
polynomial composition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .ball import BigReal, rational_reconstruct
from .errors import (BallTooWide, FixedFieldConstructionFailed, NotGalois,
                     NotNormal, NotWeakMinkowski, RankDeficient,
                     ReconstructionFailed, SearchExhausted)
from .groupring import GroupRing, right_ideal_basis
from .groups import PermGroupData, identity_perm, invert
from .lattice import GramMatrix
from .linalg import solve as frac_solve
from .numberfield import (FieldElement, LogLattice, NumberField, UnitSystem,
                          log_embed)
from .ratpoly import RationalPoly
from .relations import integer_relation

DEFAULT_DENOM_BOUND = 10 ** 6
ESCALATED_DENOM_BOUND = 10 ** 12


@dataclass
class Automorphism:
    poly: RationalPoly   # exact: sigma(theta) = poly(theta), verified
    perm: tuple          # homomorphic permutation of embeddings


class GaloisAction:
    """The full automorphism group of a totally real Galois field."""

    def __init__(self, field: NumberField, autos):
        self.field = field
        self.autos = list(autos)
        perms = [a.perm for a in self.autos]
        if len(set(perms)) != len(perms):
            raise NotGalois("embedding permutations not faithful")
        self.group = PermGroupData(field.degree, perms, name="Gal")
        if self.group.order != field.degree:
            raise NotGalois("automorphisms do not form a regular group")
        self._by_perm = {a.perm: a for a in self.autos}

    def automorphism_for(self, perm) -> Automorphism:
        return self._by_perm[tuple(perm)]

    def apply(self, perm, u: FieldElement) -> FieldElement:
        """Apply the automorphism with the given embedding permutation."""
        a = self._by_perm[tuple(perm)]
        K = self.field
        out = K.element([0])
        for c in reversed(list(u.coords)):
            out = out * K.element(a.poly.coeffs) + K.element([c])
        return out

    def permute_vector(self, perm, v):
        """Action on log vectors: (g·v)[perm[i]] = v[i]."""
        out = [None] * len(v)
        for i, x in enumerate(v):
            out[perm[i]] = x
        return out

    def ring_apply(self, coeffs, v, prec: int):
        """Action of a group-ring coefficient vector on a log vector."""
        n = len(v)
        out = [BigReal.exact(0, prec) for _ in range(n)]
        for idx, c in enumerate(coeffs):
            if c == 0:
                continue
            perm = self.group.elements[idx]
            moved = self.permute_vector(perm, v)
            out = [o + m * c for o, m in zip(out, moved)]
        return out

    def verify_composition_table(self) -> bool:
        """Exact check: polynomial composition matches permutation product."""
        K = self.field
        p = K.defining_poly
        for a in self.autos:
            for b in self.autos:
                # (a∘b)(theta) = q_b(q_a(theta)) mod p
                comp = b.poly.compose(a.poly) % p
                target_perm = tuple(a.perm[b.perm[i]]
                                    for i in range(K.degree))
                cand = self._by_perm.get(target_perm)
                if cand is None or cand.poly != comp:
                    return False
        return True


def recover_galois_action(K: NumberField, prec: int = None,
                          denom_bound: int = DEFAULT_DENOM_BOUND) -> GaloisAction:
    """Recover Gal(K/Q) for a totally real Galois K; NotGalois otherwise."""
    if not K.totally_real:
        raise ValueError("scope: only totally real fields")
    prec = prec or K.prec
    n = K.degree
    if n == 1:
        return GaloisAction(K, [Automorphism(RationalPoly([0, 1]),
                                             identity_perm(1))])
    for attempt_prec, bound in ((prec, denom_bound),
                                (2 * prec, denom_bound),
                                (4 * prec, ESCALATED_DENOM_BOUND)):
        Kw = K.at_prec(attempt_prec)
        autos = _attempt_recover(Kw, attempt_prec, bound)
        if autos is not None:
            action = GaloisAction(K, autos)
            if not action.verify_composition_table():
                raise NotGalois("composition table failed exact verification")
            return action
    raise NotGalois(f"fewer than {n} automorphisms certified")


def _attempt_recover(K: NumberField, prec: int, denom_bound: int):
    n = K.degree
    p = K.defining_poly
    theta_powers = []
    r0 = K.embeddings[0].re
    acc = BigReal.exact(1, prec)
    for _ in range(n):
        theta_powers.append(acc)
        acc = acc * r0
    autos = []
    for j in range(n):
        rj = K.embeddings[j].re
        if j == 0:
            q = RationalPoly([0, 1])
        else:
            q = _reconstruct_auto_poly(theta_powers, rj, prec, denom_bound)
            if q is None:
                return None
            if not ((p.compose(q) % p).is_zero()):
                return None
        perm = _embedding_perm(K, q, prec)
        if perm is None:
            return None
        autos.append(Automorphism(poly=q, perm=invert(perm)))
    return autos


def _reconstruct_auto_poly(theta_powers, rj, prec, denom_bound):
    values = theta_powers + [rj]
    try:
        res = integer_relation(values, denom_bound, prec)
    except Exception:
        return None
    if not res.found:
        return None
    rel = res.relation
    d = rel[-1]
    if d == 0:
        return None
    return RationalPoly([Fraction(-c, d) for c in rel[:-1]])


def _embedding_perm(K: NumberField, q: RationalPoly, prec: int):
    """perm with q(r_i) = r_perm[i], matched through certified balls."""
    n = K.degree
    out = [None] * n
    used = set()
    for i in range(n):
        val = q.eval_ball(K.embeddings[i].re)
        match = None
        for j in range(n):
            d = val - K.embeddings[j].re
            if not d.is_nonzero():
                if match is not None:
                    return None   # ambiguous at this precision
                match = j
        if match is None or match in used:
            return None
        used.add(match)
        out[i] = match
    return tuple(out)


# -- weak Minkowski units ------------------------------------------------------


def _certified_rank(vectors, prec: int) -> int:
    """Greedy certified rank of a list of ball vectors."""
    chosen = []
    for v in vectors:
        g = GramMatrix.from_rows(chosen + [v], prec)
        try:
            d = g.det()
        except RankDeficient:
            continue
        if d.is_positive():
            chosen.append(v)
    return len(chosen)


def weak_minkowski_check(K: NumberField, action: GaloisAction,
                         u: FieldElement, prec: int = None):
    """(is_weak_minkowski, rank of span{Log(gu)})."""
    prec = prec or K.prec
    v = log_embed(K, u, prec)
    orbit = [action.permute_vector(g, v) for g in action.group.elements]
    rank = _certified_rank(orbit, prec)
    return rank == K.degree - 1, rank


def weak_minkowski_search(K: NumberField, action: GaloisAction,
                          units: UnitSystem, effort: int = 2,
                          prec: int = None) -> FieldElement:
    """First unit in a bounded product search that passes the check.

    Candidates u1^e1···uk^ek are visited in order of increasing exponent
    L1-norm; Galois conjugates of the base units enter at the second stage.
    """
    prec = prec or K.prec
    base = list(units.units)
    if _certified_rank([log_embed(K, u, prec) for u in base],
                       prec) < K.degree - 1:
        raise RankDeficient("unit system does not span full rank")

    def candidates(unit_list):
        k = len(unit_list)
        boxes = sorted(itertools.product(range(-effort, effort + 1), repeat=k),
                       key=lambda e: (sum(abs(x) for x in e),
                                      [-x for x in e]))
        for e in boxes:
            if all(x == 0 for x in e):
                continue
            u = K.one()
            for exp_i, ui in zip(e, unit_list):
                if exp_i:
                    u = u * (ui ** exp_i)
            yield u

    for u in candidates(base):
        ok, _ = weak_minkowski_check(K, action, u, prec)
        if ok:
            return u
    # second stage: adjoin one conjugate of each base unit
    extended = list(base)
    gen_perms = action.group.generators
    for ui in base:
        for g in gen_perms:
            extended.append(action.apply(g, ui))
    for u in candidates(extended[:min(len(extended), 6)]):
        ok, _ = weak_minkowski_check(K, action, u, prec)
        if ok:
            return u
    raise SearchExhausted(
        f"no weak Minkowski unit within exponent box {effort}")


@dataclass
class GramForm:
    """Matrix of <alpha v, beta v> over a rational basis of R_Q[G]."""
    matrix: list                 # BigReal matrix
    basis_coeffs: list           # group-ring coefficient vectors of the basis
    vectors: list                # alpha v as ball vectors
    action: GaloisAction
    prec: int

    def gram_matrix(self) -> GramMatrix:
        return GramMatrix(self.matrix, self.prec)


def gram_form(action: GaloisAction, v, prec: int = None,
              basis: Optional[list] = None) -> GramForm:
    """The invariant bilinear form (alpha, beta) -> <alpha v, beta v>.

    `v` is the log vector of a weak Minkowski unit; the default basis is the
    element-coset basis of R_Q[G].  Positive definiteness (= the weak
    Minkowski property in this basis) and G-invariance are certified.
    """
    prec = prec or v[0].prec
    ring = GroupRing(action.group)
    if basis is None:
        basis = ring.r_basis()
    vecs = [action.ring_apply(b, v, prec) for b in basis]
    gm = GramMatrix.from_rows(vecs, prec)
    if not gm.is_positive_definite():
        raise NotWeakMinkowski(
            "Gram of the basis orbit is not certified positive definite")
    # G-invariance on generators: form(g·alpha, g·beta) = form(alpha, beta)
    for gperm in action.group.generators:
        gi = action.group.index[gperm]
        moved = [ring.left_action(gi, b) for b in basis]
        mvecs = [action.ring_apply(mb, v, prec) for mb in moved]
        gm2 = GramMatrix.from_rows(mvecs, prec)
        for i in range(gm.rank):
            for j in range(gm.rank):
                if gm.entry(i, j).separates(gm2.entry(i, j)):
                    raise NotWeakMinkowski("form not G-invariant")
    return GramForm(matrix=gm.entries, basis_coeffs=basis, vectors=vecs,
                    action=action, prec=prec)


# -- norms to subfields and subfield bases -------------------------------------


@dataclass
class SubfieldNorm:
    element: FieldElement        # N_H(u) expressed in the fixed field
    fixed_field: NumberField
    generator_in_parent: FieldElement
    norm_in_parent: FieldElement


def fixed_field_of(action: GaloisAction, H: PermGroupData,
                   prec: int = None):
    """Generator and defining polynomial of K^H (exact)."""
    K = action.field
    prec = prec or K.prec
    n = K.degree
    m = n // H.order
    for k in range(1, 2 * n + 1):
        theta_k = K.theta() ** k
        w = K.element([0])
        for h in H.elements:
            w = w + action.apply(h, theta_k)
        cp = w.charpoly()
        p_w = RationalPoly(cp)
        minpoly = p_w // p_w.gcd(p_w.derivative())
        minpoly = minpoly.monic()
        if minpoly.degree == m:
            return w, minpoly
    raise FixedFieldConstructionFailed(
        f"no power sum of degree [G:H]={m} found")


def norm_to_subfield(action: GaloisAction, H: PermGroupData,
                     u: FieldElement, prec: int = None) -> SubfieldNorm:
    """N_H(u) = prod_{h in H} h(u), expressed in the fixed field of H.

    Requires H normal in the Galois group (Galois subfield scope).
    """
    K = action.field
    prec = prec or K.prec
    if not action.group.is_normal(H):
        raise NotNormal("H must be normal in the Galois group")
    z = K.one()
    for h in H.elements:
        z = z * action.apply(h, u)
    w, minpoly = fixed_field_of(action, H, prec)
    m = minpoly.degree
    F = NumberField(minpoly, prec, _trust_irreducible=True)
    # solve z = sum b_i w^i exactly in K's power basis
    cols = []
    acc = K.one()
    for _ in range(m):
        cols.append(list(acc.coords))
        acc = acc * w
    mat = [[cols[j][i] for j in range(m)] for i in range(K.degree)]
    sol = frac_solve(mat, list(z.coords))
    if sol is None:
        raise FixedFieldConstructionFailed(
            "norm does not lie in the constructed fixed field")
    elem = F.element(sol)
    return SubfieldNorm(element=elem, fixed_field=F,
                        generator_in_parent=w, norm_in_parent=z)


def subfield_log_basis(action: GaloisAction, H: PermGroupData, v,
                       prec: int = None):
    """{alpha v : alpha in basis of N_H·R_Q[G]}, with certified rank.

    The rank must equal [G:H] - 1 (the unit rank of the totally real fixed
    field); NotWeakMinkowski otherwise.
    """
    K = action.field
    prec = prec or K.prec
    ring = GroupRing(action.group)
    coords_basis = right_ideal_basis(ring, H)
    vectors = []
    for coords in coords_basis:
        coeffs = ring.zero()
        for c, b in zip(coords, ring.r_basis()):
            if c:
                for t in range(ring.m):
                    coeffs[t] += c * b[t]
        vectors.append(action.ring_apply(coeffs, v, prec))
    expected = action.group.order // H.order - 1
    got = _certified_rank(vectors, prec)
    if got != expected:
        raise NotWeakMinkowski(
            f"subfield log basis rank {got} != expected {expected}")
    return vectors


# -- rational change-of-basis certificate --------------------------------------


@dataclass
class ChangeOfBasisCertificate:
    matrix: list            # rational (n-1)x(n-1), invertible
    residual: BigReal       # certified sup-norm of A·Gr_v·A^T - b_K
    denom_bound_used: int


def change_of_basis_certificate(L: LogLattice, form: GramForm,
                                denom_bound: int = DEFAULT_DENOM_BOUND,
                                prec: int = None) -> ChangeOfBasisCertificate:
    """Rational A with A·Gr_v·A^T = b_K, certified below 2^(-prec/2).

    Each lattice basis vector is solved for in the spanning set {alpha v}
    (normal equations through the form's Gram), rationally reconstructed,
    then the certificate is re-verified in ball arithmetic.
    """
    prec = prec or min(L.prec, form.prec)
    n = len(form.vectors)
    if L.rank != n:
        raise ReconstructionFailed("rank mismatch between lattice and form")
    from .linalg import ball_solve
    gram_v = form.matrix
    rows = []
    for w in L.basis:
        rhs = []
        for av in form.vectors:
            s = BigReal.exact(0, prec)
            for a, b in zip(av, w):
                s = s + a * b
            rhs.append(s)
        rows.append(ball_solve(gram_v, rhs, prec))
    for bound in (denom_bound, ESCALATED_DENOM_BOUND):
        try:
            A = [[rational_reconstruct(x, bound) for x in row]
                 for row in rows]
        except BallTooWide:
            raise
        if any(v is None for row in A for v in row):
            continue
        from .linalg import det as fdet
        if fdet(A) == 0:
            continue
        resid = _certificate_residual(A, gram_v, L.gram, prec)
        thresh = BigReal(mp.mpf(2) ** (-(prec // 2)), mp.mpf(0), prec)
        if (resid - thresh).is_negative():
            return ChangeOfBasisCertificate(matrix=A, residual=resid,
                                            denom_bound_used=bound)
    raise ReconstructionFailed(
        f"no rational certificate below denominator bound {ESCALATED_DENOM_BOUND}")


def _certificate_residual(A, gram_v, b_K: GramMatrix, prec: int) -> BigReal:
    n = len(A)
    worst = BigReal.exact(0, prec)
    for i in range(n):
        for j in range(n):
            s = BigReal.exact(0, prec)
            for a in range(n):
                if A[i][a] == 0:
                    continue
                for b in range(n):
                    if A[j][b] == 0:
                        continue
                    s = s + gram_v[a][b] * BigReal.from_fraction(
                        A[i][a] * A[j][b], prec)
            d = abs(s - b_K.entry(i, j))
            if d.hi() > worst.hi():
                worst = d
    return worst
