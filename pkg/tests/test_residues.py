from fractions import Fraction

import mpmath as mp
import pytest

from conftest import bundle_path
from loglat.ball import BigReal
from loglat.bundles import FieldBundle
from loglat.errors import RankDeficient
from loglat.galois import gram_form, recover_galois_action
from loglat.numberfield import UnitSystem, build_field, log_embed
from loglat.ratpoly import RationalPoly
from loglat.residues import genericity_probe, relation_probe, residue_at_one


def test_residue_q_sqrt5():
    b = FieldBundle.load(bundle_path("q_sqrt5.json"))
    rec = residue_at_one(b, 128)
    # DERIVED oracle: 2^2 * 1 * reg / (2 * sqrt 5) computed independently
    with mp.workprec(256):
        reg = mp.log((1 + mp.sqrt(5)) / 2)
        expect = 4 * reg / (2 * mp.sqrt(5))
    assert abs(rec.residue.mid - expect) < mp.mpf(2) ** -100
    assert rec.ratio_rational == Fraction(2)
    # frozen reference digits from the oracle above
    assert mp.nstr(rec.residue.mid, 12) == "0.430408940964"


def test_residue_q_sqrt2():
    b = FieldBundle.load(bundle_path("q_sqrt2.json"))
    rec = residue_at_one(b, 128)
    with mp.workprec(256):
        expect = 4 * mp.log(1 + mp.sqrt(2)) / (2 * mp.sqrt(8))
    assert abs(rec.residue.mid - expect) < mp.mpf(2) ** -100
    assert float(rec.residue.mid) == pytest.approx(0.623225240, rel=1e-9)


def test_residue_requires_degree_two():
    d = {
        "schema": "fieldbundle/v1", "label": "Q", "poly": ["0", "1"],
        "disc": 1, "class_number": 1, "torsion_order": 2, "units": [],
        "provenance": {"source": "manual"},
    }
    b = FieldBundle.from_dict(d)
    with pytest.raises(RankDeficient):
        residue_at_one(b, 96)


def test_residue_record_recomputation_invariant():
    b = FieldBundle.load(bundle_path("q_sqrt2.json"))
    rec = residue_at_one(b, 160)
    again = rec.recompute_residue()
    assert (again - rec.residue).contains_zero()


def test_relation_probe_found_equal_regs():
    # equal values produce Found(1, -1), re-verified at doubled precision
    x = BigReal.exact(2, 256).log()
    rep = relation_probe([("a", x), ("b", x)], 10 ** 6, 256,
                         recompute=lambda p: [BigReal.exact(2, p).log()] * 2)
    assert rep.verdict == "FOUND" and rep.result.relation == [1, -1]


def test_relation_probe_none_for_distinct_regs():
    def regs(prec):
        out = []
        for d, coords in ((2, [1, 1]), (3, [2, 1]), (5, [Fraction(1, 2),
                                                         Fraction(1, 2)])):
            K = build_field(RationalPoly([-d, 0, 1]), prec)
            from loglat.numberfield import log_lattice, regulator
            out.append(regulator(log_lattice(
                K, UnitSystem([K.element(coords)]), prec)))
        return out

    vals = regs(512)
    rep = relation_probe(list(zip(["r2", "r3", "r5"], vals)), 10 ** 6, 512,
                         recompute=regs)
    assert rep.verdict == "NONE"
    assert (rep.result.bound - BigReal.exact(10 ** 6, 512)).is_positive()


def test_relation_probe_downgrades_spurious():
    # a fake near-relation at low precision must be downgraded by the
    # double-precision recheck
    a = BigReal.exact(2, 64).log()
    with mp.workprec(96):
        shifted = a.mid + mp.mpf(2) ** -20
    b = BigReal(shifted, mp.mpf(0), 64)

    def recompute(prec):
        base = BigReal.exact(2, prec).log()
        return [base, base + BigReal(mp.mpf(2) ** -20, mp.mpf(0), prec)]
    rep = relation_probe([("a", a), ("b", b)], 10 ** 6, 64,
                         recompute=recompute)
    assert rep.result.found
    assert rep.verdict == "SPURIOUS"


def test_relation_probe_distinct_labels_required():
    x = BigReal.exact(2, 128).log()
    with pytest.raises(ValueError):
        relation_probe([("a", x), ("a", x)], 100, 128)


def _sqrt2_form(prec):
    K = build_field(RationalPoly([-2, 0, 1]), prec)
    act = recover_galois_action(K)
    v = log_embed(K, K.element([1, 1]), prec)
    return gram_form(act, v, prec)


def test_genericity_probe_sqrt2_none():
    gf = _sqrt2_form(256)
    rep = genericity_probe(gf, 2, 10 ** 4, 256,
                           recompute=lambda p: [
                               _sqrt2_form(p).matrix[0][0]])
    assert rep.verdict == "NONE"
    assert "genericity" in rep.note


def test_genericity_probe_planted_relation():
    # contrived form entries {x, 2x} carry the linear relation (2, -1)
    from loglat.galois import GramForm
    x = BigReal.exact(2, 256).log()
    fake = GramForm(matrix=[[x, x * 2], [x * 2, x * 4]],
                    basis_coeffs=None, vectors=None, action=None, prec=256)
    # distinct entries: x, 2x, 4x -> monomials include them at degree 1
    rep = genericity_probe(fake, 1, 10 ** 4, 256)
    assert rep.result.found
    # the found relation annihilates the values: e.g. 2*x - (2x) = 0
    labels = rep.labels
    assert rep.verdict in ("FOUND", "SPURIOUS")


def test_genericity_budget():
    from loglat.errors import CombinatorialBudgetExceeded
    from loglat.galois import GramForm
    n = 7
    mat = [[BigReal.exact(2 + i * n + j, 128).log() for j in range(n)]
           for i in range(n)]
    for i in range(n):
        for j in range(i):
            mat[i][j] = mat[j][i]
    fake = GramForm(matrix=mat, basis_coeffs=None, vectors=None,
                    action=None, prec=128)
    # 28 distinct entries at degree 3 blow past the 500-monomial budget
    with pytest.raises(CombinatorialBudgetExceeded):
        genericity_probe(fake, 3, 100, 128)
