"""Constructive factorization nu·bar(nu) = eta in R_C[G], and its use to
solve Gram-form preimages.

The complex group algebra is split into matrix blocks through numerically
constructed matrix units (spectral projectors of a generic block element,
then standard rectangular units).  The bar involution either swaps a pair of
blocks (one factor is set to the block identity) or stabilizes a block, where
it transports to x -> w x^T w^-1 with w symmetric or antisymmetric; the
corresponding congruence factorizations (LDL^T, symplectic Gram-Schmidt)
produce the block factor.  All внутренние numerics run at a guarded floating
precision; the final candidate is re-verified in ball arithmetic against the
exact input, which is the only certification that counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .ball import guarded_workprec, BigComplex, BigReal
from .errors import ResidualTooLarge, SingularBlock
from .groupring import (GroupRing, bar_fixed_basis, complex_characters,
                        trace_form_matrix)
from .groups import PermGroupData
from .linalg import solve as frac_solve

_WEDDERBURN_CACHE: dict = {}


def _conv(table, a, b):
    m = len(table)
    out = [mp.mpc(0)] * m
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        ti = table[i]
        for j in range(m):
            bj = b[j]
            if bj == 0:
                continue
            out[ti[j]] += ai * bj
    return out


def _vec_bar(inv, a):
    out = [mp.mpc(0)] * len(a)
    for i, c in enumerate(a):
        out[inv[i]] = c
    return out


@dataclass
class Block:
    char_index: int
    degree: int
    idem: list                    # block identity vector (mpc)
    units: list                   # units[i][j] = E_{ij} vector
    ref_index: int                # coefficient index used for scalar pairing
    ref_value: object             # E_{11}[ref_index]
    bar_partner: int = -1         # index of bar(Block) in the block list
    w_matrix: list = None         # for bar-stable blocks
    w_symmetric: bool = True


class WedderburnData:
    """Block decomposition of R_C[G] = C[G]/(N_G) at working precision."""

    def __init__(self, G: PermGroupData, prec: int):
        self.G = G
        self.prec = prec
        self.wp = 2 * prec + 96
        self.ring = GroupRing(G)
        self.table = G.mult_table()
        self.inv = G.inv_table()
        self.m = G.order
        with guarded_workprec(self.wp):
            self._build()

    # -- construction ----------------------------------------------------

    def _build(self):
        chars, classes = complex_characters(self.G, min(self.prec + 64, self.wp))
        elem_class = {}
        for ci, cls in enumerate(classes):
            for i in cls:
                elem_class[i] = ci
        self.blocks = []
        nontriv = [ch for ch in chars if not ch.is_trivial]
        for bi, ch in enumerate(nontriv):
            idem = [mp.mpc(ch.idempotent[elem_class[i]].re.mid,
                           ch.idempotent[elem_class[i]].im.mid)
                    for i in range(self.m)]
            units = self._matrix_units(idem, ch.degree, seed=bi + 1)
            ref_index = max(range(self.m), key=lambda i: abs(units[0][0][i]))
            ref_value = units[0][0][ref_index]
            self.blocks.append(Block(char_index=bi, degree=ch.degree,
                                     idem=idem, units=units,
                                     ref_index=ref_index,
                                     ref_value=ref_value))
        self._pair_blocks()

    def _matrix_units(self, idem, n, seed):
        if n == 1:
            return [[idem]]
        for attempt in range(8):
            try:
                return self._matrix_units_attempt(idem, n, seed * 37 + attempt)
            except _RetryBlock:
                continue
        raise SingularBlock("matrix unit construction failed")

    def _random_vec(self, seed):
        # deterministic small-rational vector
        vals = []
        state = seed
        for i in range(self.m):
            state = (state * 1103515245 + 12345) % (1 << 31)
            vals.append(mp.mpf(state % 199 - 99) / 64)
        return vals

    def _matrix_units_attempt(self, idem, n, seed):
        r = self._random_vec(seed)
        s = _conv(self.table, idem, _conv(self.table, r, idem))
        # minimal polynomial of s inside the block (degree n, generic)
        powers = [idem]
        for _ in range(n):
            powers.append(_conv(self.table, powers[-1], s))
        A = mp.matrix(self.m, n)
        rhs = mp.matrix(self.m, 1)
        for i in range(self.m):
            for j in range(n):
                A[i, j] = powers[j][i]
            rhs[i] = -powers[n][i]
        coeffs = mp.qr_solve(A, rhs)[0]
        poly = [mp.mpc(1)] + [coeffs[n - 1 - k] for k in range(n)]
        lam = mp.polyroots(poly, maxsteps=200, extraprec=80)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(lam[i] - lam[j]) < mp.mpf(2) ** (-self.prec // 2):
                    raise _RetryBlock()
        projs = []
        for i in range(n):
            p = idem
            for j in range(n):
                if j == i:
                    continue
                shifted = [a - lam[j] * b for a, b in zip(s, idem)]
                p = _conv(self.table, p, shifted)
                p = [c / (lam[i] - lam[j]) for c in p]
            projs.append(p)
        # rectangular units from the projectors
        u = self._random_vec(seed + 101)
        v = self._random_vec(seed + 202)
        e1 = [[None] * n for _ in range(n)]   # e1[0][j] = E_{0j}, e1[j][0]
        units = [[None] * n for _ in range(n)]
        units[0][0] = projs[0]
        ref = max(range(self.m), key=lambda i: abs(projs[0][i]))
        refv = projs[0][ref]
        col = [None] * n
        row = [None] * n
        for j in range(1, n):
            c = _conv(self.table, projs[0], _conv(self.table, u, projs[j]))
            d = _conv(self.table, projs[j], _conv(self.table, v, projs[0]))
            cd = _conv(self.table, c, d)
            gamma = cd[ref] / refv
            if abs(gamma) < mp.mpf(2) ** (-self.prec):
                raise _RetryBlock()
            d = [x / gamma for x in d]
            row[j] = c      # E_{0j}
            col[j] = d      # E_{j0}
        for i in range(n):
            for j in range(n):
                if i == 0 and j == 0:
                    continue
                if i == 0:
                    units[0][j] = row[j]
                elif j == 0:
                    units[i][0] = col[i]
                else:
                    units[i][j] = _conv(self.table, col[i], row[j])
        # sanity: units must reproduce the block identity
        tot = [mp.mpc(0)] * self.m
        for i in range(n):
            for k in range(self.m):
                tot[k] += units[i][i][k]
        err = max(abs(a - b) for a, b in zip(tot, idem))
        if err > mp.mpf(2) ** (-self.prec // 2):
            raise _RetryBlock()
        return units

    def _pair_blocks(self):
        tol = mp.mpf(2) ** (-self.prec // 2)
        for i, blk in enumerate(self.blocks):
            if blk.bar_partner >= 0:
                continue
            bidem = _vec_bar(self.inv, blk.idem)
            partner = None
            for j, other in enumerate(self.blocks):
                if max(abs(a - b) for a, b in zip(bidem, other.idem)) < tol:
                    partner = j
                    break
            if partner is None:
                raise SingularBlock("bar image of a block not recognized")
            blk.bar_partner = partner
            self.blocks[partner].bar_partner = i
            if partner == i:
                self._setup_involution(blk)

    def _setup_involution(self, blk):
        """w with bar(x) = w x^T w^-1 on a bar-stable block."""
        n = blk.degree
        if n == 1:
            blk.w_matrix = [[mp.mpc(1)]]
            blk.w_symmetric = True
            return
        # tau as a matrix map; phi(x) := tau(x)^T is an automorphism, so
        # phi(x) = u x u^-1 with u = sum phi(E_ab) Y E_ba; then w = (u^T)^-1.
        for attempt in range(8):
            Y = mp.matrix(n, n)
            state = 7919 + attempt
            for i in range(n):
                for j in range(n):
                    state = (state * 48271) % 2147483647
                    Y[i, j] = mp.mpf(state % 97 - 48) / 16
            u = mp.matrix(n, n)
            for a in range(n):
                for b in range(n):
                    tau_ab = self.to_matrix(_vec_bar(self.inv,
                                                     blk.units[a][b]), blk)
                    phi = tau_ab.T
                    # u += phi(E_ab) Y E_ba, i.e. u[:, a] += (phi Y)[:, b]
                    phiY = phi * Y
                    for i in range(n):
                        u[i, a] += phiY[i, b]
            try:
                w = u.T ** -1
            except Exception:
                continue
            sym_err = max(abs(w[i, j] - w[j, i]) for i in range(n)
                          for j in range(n))
            skew_err = max(abs(w[i, j] + w[j, i]) for i in range(n)
                           for j in range(n))
            scale = max(abs(w[i, j]) for i in range(n) for j in range(n))
            if sym_err < 1e-6 * scale or skew_err < 1e-6 * scale:
                # verify the intertwining property on the units
                ok = True
                winv = w ** -1
                for a in range(n):
                    for b in range(n):
                        x = self.to_matrix(blk.units[a][b], blk)
                        lhs = self.to_matrix(
                            _vec_bar(self.inv, blk.units[a][b]), blk)
                        rhs = w * x.T * winv
                        err = max(abs(lhs[i, j] - rhs[i, j])
                                  for i in range(n) for j in range(n))
                        if err > mp.mpf(2) ** (-self.prec // 2) * (1 + scale):
                            ok = False
                if ok:
                    blk.w_matrix = [[w[i, j] for j in range(n)]
                                    for i in range(n)]
                    blk.w_symmetric = sym_err <= skew_err
                    return
        raise SingularBlock("could not transport the bar involution")

    # -- block/vector conversions -----------------------------------------

    def to_matrix(self, vec, blk: Block):
        """Coefficients of the block component of vec as an n×n matrix."""
        n = blk.degree
        out = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                # E_{0i} x E_{j0} = x_ij E_{00}
                t = _conv(self.table, blk.units[0][i],
                          _conv(self.table, vec, blk.units[j][0]))
                out[i, j] = t[blk.ref_index] / blk.ref_value
        return out

    def from_matrix(self, M, blk: Block):
        out = [mp.mpc(0)] * self.m
        n = blk.degree
        for i in range(n):
            for j in range(n):
                c = M[i, j]
                if c == 0:
                    continue
                for k in range(self.m):
                    out[k] += c * blk.units[i][j][k]
        return out


class _RetryBlock(Exception):
    pass


def get_wedderburn(G: PermGroupData, prec: int) -> WedderburnData:
    key = (id(G), tuple(G.generators), prec)
    if key not in _WEDDERBURN_CACHE:
        _WEDDERBURN_CACHE[key] = WedderburnData(G, prec)
    return _WEDDERBURN_CACHE[key]


# -- congruence factorizations -------------------------------------------------


def _sym_factor(M, n, wp, seed=1):
    """A with A A^T = M for invertible complex symmetric M (LDL^T with a
    random congruence retry when a pivot degenerates)."""
    for attempt in range(10):
        R = mp.eye(n)
        if attempt:
            state = seed * 911 + attempt
            R = mp.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    state = (state * 69621) % 2147483647
                    R[i, j] = mp.mpf(state % 19 - 9) / 4
            try:
                R ** -1
            except Exception:
                continue
        Mp = R * M * R.T
        L = mp.eye(n)
        D = [mp.mpc(0)] * n
        ok = True
        W = mp.matrix(Mp)
        for k in range(n):
            D[k] = W[k, k]
            if abs(D[k]) < mp.mpf(2) ** (-(wp // 2)):
                ok = False
                break
            for i in range(k + 1, n):
                L[i, k] = W[i, k] / D[k]
            for i in range(k + 1, n):
                for j in range(k + 1, i + 1):
                    W[i, j] -= L[i, k] * D[k] * L[j, k]
                    W[j, i] = W[i, j]
        if not ok:
            continue
        A = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                A[i, j] = L[i, j] * mp.sqrt(D[j])
        # undo congruence: A' = R^{-1} A
        return (R ** -1) * A
    raise SingularBlock("symmetric factorization failed")


def _skew_factor(M, n, wp):
    """A with A J A^T = M for invertible complex antisymmetric M (n even),
    J the standard block-diagonal symplectic form."""
    if n % 2:
        raise SingularBlock("antisymmetric block of odd dimension")
    basis = [mp.matrix([[1 if k == i else 0] for k in range(n)])
             for i in range(n)]

    def omega(x, y):
        return (x.T * M * y)[0, 0]

    pairs = []
    vecs = list(basis)
    while vecs:
        v1 = vecs.pop(0)
        # find partner with omega(v1, v2) farthest from zero
        best = None
        for idx, cand in enumerate(vecs):
            val = omega(v1, cand)
            if best is None or abs(val) > abs(best[1]):
                best = (idx, val)
        if best is None or abs(best[1]) < mp.mpf(2) ** (-(wp // 2)):
            raise SingularBlock("skew factorization pivot failed")
        v2 = vecs.pop(best[0]) / best[1]
        pairs.extend([v1, v2])
        rest = []
        for u in vecs:
            u2 = u + omega(v2, u) * v1 - omega(v1, u) * v2
            rest.append(u2)
        vecs = rest
    V = mp.matrix(n, n)
    for j, v in enumerate(pairs):
        for i in range(n):
            V[i, j] = v[i]
    # V^T M V = J  =>  M = V^{-T} J V^{-1};  A = V^{-T}
    return (V ** -1).T


def _std_J(n):
    J = mp.matrix(n, n)
    for k in range(0, n, 2):
        J[k, k + 1] = 1
        J[k + 1, k] = -1
    return J


# -- the factorization nu bar(nu) = eta ----------------------------------------


def _coerce_eta(G: PermGroupData, eta, prec):
    """Normalize eta to (exact BigComplex list, mpc list) representations."""
    m = G.order
    out_ball = []
    out_mpc = []
    with guarded_workprec(2 * prec + 96):
        for c in eta:
            if isinstance(c, BigComplex):
                out_ball.append(c)
                out_mpc.append(mp.mpc(c.re.mid, c.im.mid))
            elif isinstance(c, BigReal):
                out_ball.append(BigComplex(c, BigReal.exact(0, prec)))
                out_mpc.append(mp.mpc(c.mid))
            elif isinstance(c, (Fraction, int)):
                out_ball.append(BigComplex(BigReal.from_fraction(c, prec),
                                           BigReal.exact(0, prec)))
                out_mpc.append(mp.mpc(mp.mpf(Fraction(c).numerator)
                                      / mp.mpf(Fraction(c).denominator)))
            elif isinstance(c, (complex, mp.mpc)):
                out_ball.append(BigComplex(
                    BigReal.exact(mp.mpf(c.real), prec),
                    BigReal.exact(mp.mpf(c.imag), prec)))
                out_mpc.append(mp.mpc(c))
            else:
                raise TypeError(f"unsupported eta coefficient {type(c)}")
    if len(out_ball) != m:
        raise ValueError("eta must have one coefficient per group element")
    return out_ball, out_mpc


def factor_nu(G: PermGroupData, eta, prec: int):
    """nu with ||nu·bar(nu) - eta||_inf < 2^(-prec/2), certified by balls.

    eta is a coefficient vector over the group elements representing a
    bar-fixed element of R_C[G] (sum-zero representative), invertible in
    every block.
    """
    eta_ball, eta_mpc = _coerce_eta(G, eta, prec)
    wd = get_wedderburn(G, prec)
    with guarded_workprec(wd.wp):
        # bar-fixed check (numeric; final residual check is the certification)
        bar_eta = _vec_bar(wd.inv, eta_mpc)
        scale = max(1, max(abs(c) for c in eta_mpc))
        if max(abs(a - b) for a, b in zip(bar_eta, eta_mpc)) \
                > mp.mpf(2) ** (-(prec // 2)) * scale:
            raise ValueError("eta is not bar-fixed within tolerance")
        nu = [mp.mpc(0)] * wd.m
        done = set()
        for bi, blk in enumerate(wd.blocks):
            if bi in done:
                continue
            X = wd.to_matrix(eta_mpc, blk)
            n = blk.degree
            det = mp.det(X) if n > 1 else X[0, 0]
            if abs(det) < mp.mpf(2) ** (-(prec // 2)):
                raise SingularBlock(f"eta singular on block {bi}")
            if blk.bar_partner != bi:
                # swapped pair: z_i = component, z_partner = identity
                comp = wd.from_matrix(X, blk)
                partner = wd.blocks[blk.bar_partner]
                for k in range(wd.m):
                    nu[k] += comp[k] + partner.idem[k]
                done.add(bi)
                done.add(blk.bar_partner)
                continue
            done.add(bi)
            w = mp.matrix(blk.w_matrix)
            Xw = X * w
            if n == 1:
                z = mp.matrix([[mp.sqrt(X[0, 0])]])
            elif blk.w_symmetric:
                B = _sym_factor(w, n, wd.wp)
                C = _sym_factor(Xw, n, wd.wp, seed=5)
                z = C * (B ** -1)
            else:
                B = _skew_factor(w, n, wd.wp)
                C = _skew_factor(Xw, n, wd.wp)
                z = C * (B ** -1)
            comp = wd.from_matrix(z, blk)
            for k in range(wd.m):
                nu[k] += comp[k]

    # certification in ball arithmetic against the exact input
    nu_ball = [BigComplex(BigReal.exact(c.real, prec),
                          BigReal.exact(c.imag, prec)) for c in nu]
    resid = residual_nu(G, nu_ball, eta_ball, prec)
    thresh = Fraction(1, 2) ** (prec // 2)
    hi = resid.mid_fraction() + resid.rad_fraction()
    if hi >= thresh:
        raise ResidualTooLarge(
            f"residual {float(hi):.3g} not below 2^-{prec // 2}")
    return nu_ball


def ball_group_mul(G: PermGroupData, a, b, prec: int):
    """Convolution of BigComplex coefficient vectors, normalized mod N_G."""
    table = G.mult_table()
    m = G.order
    out = [BigComplex.exact(0, 0, prec) for _ in range(m)]
    for i in range(m):
        ai = a[i]
        if ai.re.mid == 0 and ai.re.rad == 0 and ai.im.mid == 0 \
                and ai.im.rad == 0:
            continue
        ti = table[i]
        for j in range(m):
            bj = b[j]
            if bj.re.mid == 0 and bj.re.rad == 0 and bj.im.mid == 0 \
                    and bj.im.rad == 0:
                continue
            out[ti[j]] = out[ti[j]] + ai * bj
    # normalize: subtract the mean
    mean_re = BigReal.exact(0, prec)
    mean_im = BigReal.exact(0, prec)
    for c in out:
        mean_re = mean_re + c.re
        mean_im = mean_im + c.im
    mfac = BigReal.exact(m, prec)
    mean = BigComplex(mean_re / mfac, mean_im / mfac)
    return [c - mean for c in out]


def residual_nu(G: PermGroupData, nu_ball, eta_ball, prec: int) -> BigReal:
    """sup-norm ball of nu·bar(nu) - eta, with eta's representative
    normalized the same way."""
    inv = G.inv_table()
    m = G.order
    nu_bar = [None] * m
    for i, c in enumerate(nu_ball):
        nu_bar[inv[i]] = c
    prod = ball_group_mul(G, nu_ball, nu_bar, prec)
    # normalize eta's representative the same way (multiply by 1 in R)
    eta_norm = ball_group_mul(G, eta_ball,
                              _identity_ball(G, prec), prec)
    worst = BigReal.exact(0, prec)
    for a, b in zip(prod, eta_norm):
        d = a - b
        mag = abs(d.re) + abs(d.im)
        if mag.hi() > worst.hi():
            worst = mag
    return worst


def _identity_ball(G: PermGroupData, prec):
    m = G.order
    out = [BigComplex.exact(0, 0, prec) for _ in range(m)]
    out[G.identity_index()] = BigComplex.exact(1, 0, prec)
    return out


# -- Gram preimage --------------------------------------------------------------


def regular_action_matrix(G: PermGroupData, elem_index: int):
    """Left regular permutation action of a group element on C^|G|."""
    table = G.mult_table()
    m = G.order
    out = [[0] * m for _ in range(m)]
    for h in range(m):
        out[table[elem_index][h]][h] = 1
    return out


def apply_ring_vector(G: PermGroupData, coeffs, vec):
    """(sum_g coeffs[g]·g) · vec under the left regular action; vec entries
    arbitrary numeric type."""
    table = G.mult_table()
    m = G.order
    out = [vec[0] * 0 for _ in range(m)]
    for g in range(m):
        c = coeffs[g]
        if c == 0:
            continue
        row = table[g]
        for h in range(m):
            out[row[h]] = out[row[h]] + c * vec[h]
    return out


def gram_of_vector(G: PermGroupData, vec):
    """Matrix <b_i w, b_j w> over the r_basis, bilinear (no conjugation)."""
    ring = GroupRing(G)
    basis = ring.r_basis()
    moved = [apply_ring_vector(G, b, vec) for b in basis]
    n = len(basis)
    out = [[sum(x * y for x, y in zip(moved[i], moved[j])) for j in range(n)]
           for i in range(n)]
    return out


def solve_trace_eta(G: PermGroupData, form, prec: int = 128):
    """eta in A with Tr_eta = form (exact when the form is rational).

    Returns the coefficient vector of eta over the group elements.  Raises
    ValueError when the form is not in the span (not symmetric G-invariant).
    """
    ring = GroupRing(G)
    etas = bar_fixed_basis(ring)
    mats = [trace_form_matrix(ring, e) for e in etas]
    n = len(form)
    rows = []
    rhs = []
    exact = all(isinstance(v, Fraction) for row in form for v in row)
    for i in range(n):
        for j in range(n):
            rows.append([mats[k][i][j] for k in range(len(etas))])
            rhs.append(form[i][j])
    if exact:
        sol = frac_solve(rows, rhs)
        if sol is None:
            raise ValueError("form is not a G-invariant symmetric trace form")
        eta = [Fraction(0)] * ring.m
        for c, e in zip(sol, etas):
            for k in range(ring.m):
                eta[k] += c * e[k]
        return eta
    # numeric path: least squares over mpc
    wp = 2 * prec + 64
    with guarded_workprec(wp):
        A = mp.matrix(len(rows), len(etas))
        y = mp.matrix(len(rows), 1)
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                A[r, c] = mp.mpf(v.numerator) / mp.mpf(v.denominator)
            val = rhs[r]
            y[r] = val if isinstance(val, (mp.mpc, mp.mpf)) else mp.mpc(val)
        sol = mp.qr_solve(A, y)[0]
        eta = [mp.mpc(0)] * G.order
        for c, e in zip(sol, etas):
            for k in range(G.order):
                eta[k] += c * mp.mpf(e[k].numerator) / mp.mpf(e[k].denominator)
        return eta


def ring_inverse_numeric(G: PermGroupData, vec_mpc, wp):
    """Inverse of an element of R_C via its multiplication matrix."""
    ring = GroupRing(G)
    basis = ring.r_basis()
    m = G.order
    with guarded_workprec(wp):
        cols = []
        for b in basis:
            bf = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in b]
            prod = _conv(G.mult_table(), vec_mpc, bf)
            # normalize and take r_basis coordinates
            mean = sum(prod) / m
            prod = [c - mean for c in prod]
            cols.append([prod[i] - prod[m - 1] for i in range(m - 1)])
        A = mp.matrix(m - 1, m - 1)
        for j, col in enumerate(cols):
            for i in range(m - 1):
                A[i, j] = col[i]
        one = ring.one_r()
        y = mp.matrix(m - 1, 1)
        onec = ring.coords_in_r_basis(one)
        for i in range(m - 1):
            y[i] = mp.mpf(onec[i].numerator) / mp.mpf(onec[i].denominator)
        sol = mp.lu_solve(A, y)
        out = [mp.mpc(0)] * m
        for j, b in enumerate(basis):
            for k in range(m):
                out[k] += sol[j] * mp.mpf(b[k].numerator) / mp.mpf(b[k].denominator)
        return out


def solve_gram_preimage(G: PermGroupData, form, w_vec, prec: int):
    """x with Gram_x ~ form, built as nu''·nu'^{-1}·w per the constructive
    surjectivity argument; the residual is certified in ball arithmetic.

    `form` is a matrix over the r_basis (Fraction entries, positive
    semidefinite, symmetric, G-invariant); `w_vec` a rational sum-zero
    reference vector whose orbit spans the hyperplane.
    """
    gamma = solve_trace_eta(G, gram_of_vector(G, w_vec))
    eta = solve_trace_eta(G, form)
    nu1 = factor_nu(G, gamma, prec)     # gamma = nu' bar(nu')
    nu2 = factor_nu(G, eta, prec)       # eta = nu'' bar(nu'')
    wd = get_wedderburn(G, prec)
    with guarded_workprec(wd.wp):
        nu1_mpc = [mp.mpc(c.re.mid, c.im.mid) for c in nu1]
        nu2_mpc = [mp.mpc(c.re.mid, c.im.mid) for c in nu2]
        nu1_inv = ring_inverse_numeric(G, nu1_mpc, wd.wp)
        mult = _conv(G.mult_table(), nu2_mpc, nu1_inv)
        wf = [mp.mpf(Fraction(c).numerator) / mp.mpf(Fraction(c).denominator)
              for c in w_vec]
        x = apply_ring_vector(G, mult, wf)
    x_ball = [BigComplex(BigReal.exact(c.real, prec),
                         BigReal.exact(c.imag, prec)) for c in x]
    return x_ball


def gram_residual(G: PermGroupData, x_ball, form, prec: int) -> BigReal:
    """sup-norm ball of Gram_x - form over the r_basis (bilinear dot)."""
    ring = GroupRing(G)
    basis = ring.r_basis()
    moved = [apply_ring_vector(G, b, x_ball) for b in basis]
    worst = BigReal.exact(0, prec)
    n = len(basis)
    for i in range(n):
        for j in range(n):
            s = BigComplex.exact(0, 0, prec)
            for a, c in zip(moved[i], moved[j]):
                s = s + a * c
            target = form[i][j]
            tb = BigComplex(BigReal.from_fraction(target, prec),
                            BigReal.exact(0, prec)) \
                if isinstance(target, (Fraction, int)) else target
            d = s - tb
            mag = abs(d.re) + abs(d.im)
            if mag.hi() > worst.hi():
                worst = mag
    return worst
