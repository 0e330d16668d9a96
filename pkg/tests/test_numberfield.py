import random
from fractions import Fraction

import mpmath as mp
import pytest

from loglat.ball import BigReal
from loglat.errors import (NotASubfield, NotAUnit, RankDeficient,
                           ReducibleDetected)
from loglat.lattice import GramMatrix
from loglat.numberfield import (UnitSystem, build_field, include_sublattice,
                                log_embed, log_lattice, regulator,
                                similarity_of_inclusion)
from loglat.ratpoly import RationalPoly


def pell_fundamental_unit(d):
    """Brute-force Pell oracle: least unit > 1 of O_{Q(sqrt d)}.

    Returns (x, y, halved) with unit = (x + y*sqrt(d))/2 if halved else
    x + y*sqrt(d), found by scanning y upward; independent of the package's
    embedding machinery.
    """
    y = 1
    while True:
        cands = []
        if d % 4 == 1:
            # x^2 - d y^2 = ±4 with x ≡ y (mod 2): unit (x + y sqrt d)/2
            for target in (-4, 4):
                x2 = d * y * y + target
                if x2 > 0:
                    x = int(x2 ** 0.5)
                    for xx in (x - 1, x, x + 1):
                        if xx > 0 and xx * xx == x2 and (xx - y) % 2 == 0:
                            cands.append((xx, y, True))
        for target in (-1, 1):
            x2 = d * y * y + target
            if x2 > 0:
                x = int(x2 ** 0.5)
                for xx in (x - 1, x, x + 1):
                    if xx > 0 and xx * xx == x2:
                        cands.append((2 * xx, 2 * y, True))
        if cands:
            # least unit > 1: smallest (x + y sqrt d)/2
            best = min(cands, key=lambda c: c[0])
            x, y0, _ = best
            if x % 2 == 0 and y0 % 2 == 0:
                return x // 2, y0 // 2, False
            return x, y0, True
        y += 1


def quad_field(d, prec=128):
    return build_field(RationalPoly([-d, 0, 1]), prec)


def test_build_field_signatures():
    K = quad_field(2)
    assert K.degree == 2 and K.signature == (2, 0) and K.totally_real
    Ki = build_field(RationalPoly([1, 0, 1]), 96)
    assert Ki.signature == (0, 1) and not Ki.totally_real
    septic = build_field(RationalPoly([-5217, -3782, 496, 755, 25, -47, -2, 1]),
                         128, trust_irreducible=True)
    assert septic.signature == (7, 0)


def test_reducible_rejected():
    with pytest.raises(ReducibleDetected):
        build_field(RationalPoly([-1, 0, 1]), 64)   # x^2 - 1


def test_log_embed_sqrt2_against_pell_oracle():
    x, y, halved = pell_fundamental_unit(2)
    assert (x, y, halved) == (1, 1, False)
    K = quad_field(2)
    u = K.element([x, y])
    v = log_embed(K, u, 128)
    with mp.workprec(192):
        L = mp.log(1 + mp.sqrt(2))
    assert abs(v[1].mid - L) < mp.mpf(2) ** -100
    assert (v[0] + v[1]).contains_zero()


def test_log_embed_sqrt5_oracle():
    x, y, halved = pell_fundamental_unit(5)
    assert (x, y, halved) == (1, 1, True)
    K = quad_field(5)
    u = K.element([Fraction(1, 2), Fraction(1, 2)])
    v = log_embed(K, u, 128)
    with mp.workprec(192):
        L = mp.log((1 + mp.sqrt(5)) / 2)
    assert abs(v[1].mid - L) < mp.mpf(2) ** -100


def test_log_embed_torsion_is_zero():
    K = quad_field(2)
    v = log_embed(K, K.element([-1]), 96)
    assert all(c.contains_zero() for c in v)


def test_log_embed_rejects_nonunit():
    K = quad_field(2)
    with pytest.raises(NotAUnit):
        log_embed(K, K.element([2]), 96)


def test_log_lattice_sqrt2():
    K = quad_field(2)
    L = log_lattice(K, UnitSystem([K.element([1, 1])]), 128)
    assert L.rank == 1
    with mp.workprec(192):
        expect = 2 * mp.log(1 + mp.sqrt(2)) ** 2
    assert abs(L.gram.entry(0, 0).mid - expect) < mp.mpf(2) ** -100


def test_log_lattice_rank_deficient():
    K = quad_field(2)
    with pytest.raises(RankDeficient):
        log_lattice(K, UnitSystem([K.element([-1])]), 96)


def test_log_lattice_biquadratic_rank3():
    N = build_field(RationalPoly([1, 0, -10, 0, 1]), 128,
                    trust_irreducible=True)
    u1 = N.element([1, Fraction(-9, 2), 0, Fraction(1, 2)])
    u2 = N.element([0, 1])
    u3 = N.element([Fraction(-5, 4), Fraction(-9, 4), Fraction(1, 4),
                    Fraction(1, 4)])
    L = log_lattice(N, UnitSystem([u1, u2, u3]), 128)
    assert L.rank == 3


def test_regulator_values():
    for d, expect_unit in ((2, "1+sqrt2"), (5, "phi")):
        x, y, halved = pell_fundamental_unit(d)
        K = quad_field(d)
        den = 2 if halved else 1
        u = K.element([Fraction(x, den), Fraction(y, den)])
        L = log_lattice(K, UnitSystem([u]), 128)
        reg = regulator(L)
        with mp.workprec(256):
            oracle = mp.log((x + y * mp.sqrt(d)) / den)
        assert abs(reg.mid - oracle) < mp.mpf(2) ** -100


def test_regulator_unimodular_invariance():
    # the regulator does not depend on the choice of fundamental system
    K = quad_field(2)
    u = K.element([1, 1])
    L1 = log_lattice(K, UnitSystem([u]), 128)
    L2 = log_lattice(K, UnitSystem([(u ** -1)]), 128)
    assert (regulator(L1) - regulator(L2)).contains_zero()
    N = build_field(RationalPoly([1, 0, -10, 0, 1]), 128,
                    trust_irreducible=True)
    u1 = N.element([1, Fraction(-9, 2), 0, Fraction(1, 2)])
    u2 = N.element([0, 1])
    u3 = N.element([Fraction(-5, 4), Fraction(-9, 4), Fraction(1, 4),
                    Fraction(1, 4)])
    La = log_lattice(N, UnitSystem([u1, u2, u3]), 128)
    # unimodular change: (u1*u2^2, u2, u3*u1^-1)
    Lb = log_lattice(N, UnitSystem([u1 * (u2 ** 2), u2, u3 * (u1 ** -1)]),
                     128)
    assert (regulator(La) - regulator(Lb)).contains_zero()


def test_galois_conjugate_is_permutation():
    # for each automorphism image of the unit, the log vector is a
    # coordinate permutation of the original
    from loglat.galois import recover_galois_action
    K = build_field(RationalPoly([-1, -2, 1, 1]), 160)
    act = recover_galois_action(K)
    u = K.theta()
    v = log_embed(K, u, 160)
    mids = sorted(float(c.mid) for c in v)
    for a in act.autos:
        gu = act.apply(a.perm, u)
        gv = log_embed(K, gu, 160)
        assert sorted(float(c.mid) for c in gv) == pytest.approx(mids)


def test_include_sublattice_identity():
    K = quad_field(2)
    L = log_lattice(K, UnitSystem([K.element([1, 1])]), 128)
    inc = include_sublattice(K, K, K.theta(), L, 128)
    assert inc.index == 1 and inc.det_ratio == 1 and inc.scaling_verified


def test_include_sublattice_biquadratic():
    K = quad_field(2, 160)
    L = log_lattice(K, UnitSystem([K.element([1, 1])]), 160)
    N = build_field(RationalPoly([1, 0, -10, 0, 1]), 160,
                    trust_irreducible=True)
    gen_img = N.element([0, Fraction(-9, 2), 0, Fraction(1, 2)])
    inc = include_sublattice(K, N, gen_img, L, 160)
    assert inc.index == 2
    assert inc.scaling_verified
    assert inc.det_ratio == 2  # [N:K]^rank = 2^1
    verdict, lam = similarity_of_inclusion(L, inc)
    assert verdict.tag == "isometric"
    assert lam.contains(Fraction(1, 2))
    assert "sqrt" in inc.note  # the scaling-convention note is attached


def test_include_sublattice_rejects_bad_generator():
    K = quad_field(2)
    L = log_lattice(K, UnitSystem([K.element([1, 1])]), 128)
    N = build_field(RationalPoly([1, 0, -10, 0, 1]), 128,
                    trust_irreducible=True)
    with pytest.raises(NotASubfield):
        include_sublattice(K, N, N.element([0, 1]), L, 128)


def test_include_sublattice_rejects_complex_field():
    K = quad_field(2)
    L = log_lattice(K, UnitSystem([K.element([1, 1])]), 128)
    # x^4 - 2 is not totally real
    N = build_field(RationalPoly([-2, 0, 0, 0, 1]), 128,
                    trust_irreducible=True)
    with pytest.raises(NotASubfield):
        include_sublattice(K, N, N.element([0, 0, 1]), L, 128)


def test_unit_validation_exact():
    K = quad_field(2)
    assert K.element([1, 1]).is_unit()
    assert K.element([-1]).is_unit()
    assert not K.element([2]).is_unit()
    assert not K.element([Fraction(1, 2), Fraction(1, 2)]).is_unit()
    with pytest.raises(NotAUnit):
        UnitSystem([K.element([3, 1])])
