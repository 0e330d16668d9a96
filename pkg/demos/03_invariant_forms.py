"""Walkthrough: the group-ring side — invariant forms, idempotents, the
constructive nu*bar(nu) factorization, and the psi determinant map.

Run from the repo root:  python3 demos/03_invariant_forms.py
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import mpmath as mp

from loglat import (FieldBundle, change_of_basis_certificate, factor_nu,
                    gram_form, log_embed, log_lattice, psi_map,
                    rational_idempotents, recover_galois_action, sym_g_space,
                    weak_minkowski_search)
from loglat.groupring import GroupRing, bar_fixed_basis, right_ideal_basis
from loglat.groups import cyclic_table
from loglat.wedderburn import residual_nu


def _ball_list(eta, prec):
    from loglat.ball import BigComplex, BigReal
    return [BigComplex(BigReal.from_fraction(c, prec),
                       BigReal.exact(0, prec)) for c in eta]


BUNDLES = Path(__file__).resolve().parent.parent / "bundles"

print("== rational central idempotents of Q[S3] ==")
from loglat.groups import symmetric_group
S3 = symmetric_group(3)
for e in rational_idempotents(S3):
    tag = "trivial" if e.is_trivial else "      "
    print(f"  {tag} class coefficients: {[str(c) for c in e.class_coeffs]}")
print(f"  dim Sym^G(R_Q[S3]) = {sym_g_space(S3).dimension}")

print("\n== factorization nu*bar(nu) = eta on V4 ==")
V4 = cyclic_table(2).direct(cyclic_table(2)).regular_perm_group("V4")
ring = GroupRing(V4)
eta = [Fraction(0)] * 4
for k, a in enumerate(bar_fixed_basis(ring)):
    for i in range(4):
        eta[i] += Fraction(k + 2) * a[i]
nu = factor_nu(V4, eta, 128)
resid = residual_nu(V4, nu, [_b for _b in _ball_list(eta, 128)], 128)
print(f"  residual |nu*bar(nu) - eta| <= {mp.nstr(resid.hi(), 5)}")

print("\n== Gram form of the biquadratic field and its psi tuple ==")
b = FieldBundle.load(BUNDLES / "q_sqrt2_sqrt3.json")
K = b.to_field(192)
act = recover_galois_action(K)
us = b.unit_system(K)
u = weak_minkowski_search(K, act, us, effort=1, prec=192)
v = log_embed(K, u, 192)
gf = gram_form(act, v, 192)
L = log_lattice(K, us, 192)
cert = change_of_basis_certificate(L, gf, prec=192)
print(f"  weak Minkowski unit: {[str(c) for c in u.coords]}")
print(f"  change-of-basis certificate residual <= {mp.nstr(cert.residual.hi(), 4)}")

G = act.group
subs = [G.subgroup([g], name=f"H{i}") for i, g in enumerate(G.elements[1:3])]
psis = psi_map(G, gf.matrix, subs)
print("  psi tuple over two index-2 subgroups:",
      [mp.nstr(p.mid, 12) for p in psis])

