"""Walkthrough: regulators of real quadratic fields and relation probes.

Run from the repo root:  python3 demos/01_regulators_and_probes.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import mpmath as mp

from loglat import (BigReal, FieldBundle, integer_relation, log_lattice,
                    regulator, relation_probe, residue_at_one)

BUNDLES = Path(__file__).resolve().parent.parent / "bundles"

print("== regulators from golden bundles ==")
regs = {}
for name in ("q_sqrt2.json", "q_sqrt3.json", "q_sqrt5.json"):
    b = FieldBundle.load(BUNDLES / name)
    K = b.to_field(256)
    L = log_lattice(K, b.unit_system(K), 256)
    reg = regulator(L)
    regs[b.label] = reg
    print(f"  reg({b.label}) = {mp.nstr(reg.mid, 30)}  (radius ~ {mp.nstr(reg.rad, 3)})")

print("\n== a true relation: log 2 + log 3 - log 6 = 0 ==")
logs = [BigReal.exact(n, 256).log() for n in (2, 3, 6)]
res = integer_relation(logs, 10 ** 6, 256)
print(f"  integer_relation -> {res.tag} {res.relation}")

print("\n== no relation among the three regulators ==")
rep = relation_probe(list(regs.items()), 10 ** 6, 256)
print(f"  verdict: {rep.verdict}", end="")
if rep.result.bound is not None:
    print(f"  (any relation needs coefficients above ~{mp.nstr(rep.result.bound.mid, 5)})")
else:
    print()

print("\n== residues at s = 1 via the class number formula ==")
for name in ("q_sqrt2.json", "q_sqrt5.json"):
    b = FieldBundle.load(BUNDLES / name)
    rec = residue_at_one(b, 192)
    print(f"  res zeta_{b.label} = {mp.nstr(rec.residue.mid, 20)}"
          f"  = {rec.ratio_rational}/sqrt({abs(rec.disc)}) * reg")
