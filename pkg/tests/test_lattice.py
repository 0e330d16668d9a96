import itertools
import random
from fractions import Fraction

import mpmath as mp
import pytest

from loglat.ball import BigReal
from loglat.errors import RankDeficient, RankMismatch
from loglat.lattice import (GramMatrix, isometry_test, lll_reduce,
                            lll_reduce_gram, shortest_vectors,
                            similarity_test)


def exact_rows(rows, prec=128):
    return [[BigReal.from_fraction(Fraction(v), prec) for v in row]
            for row in rows]


def gs_lovasz_ok(rows, delta=0.99):
    """Float Gram-Schmidt check of size reduction and the Lovasz condition."""
    B = [[float(v.mid) for v in row] for row in rows]
    n = len(B)
    star, mu = [], [[0.0] * n for _ in range(n)]
    for i in range(n):
        v = B[i][:]
        for j in range(i):
            denom = sum(x * x for x in star[j])
            mu[i][j] = sum(a * b for a, b in zip(B[i], star[j])) / denom
            v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
        star.append(v)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > 0.5 + 1e-9:
                return False
    for k in range(1, n):
        lhs = sum(x * x for x in star[k])
        rhs = (delta - mu[k][k - 1] ** 2) * sum(x * x for x in star[k - 1])
        if lhs < rhs - 1e-9 * rhs:
            return False
    return True


def test_lll_identity_unchanged():
    rows = exact_rows([[1, 0], [0, 1]])
    red, T = lll_reduce(rows)
    assert T == [[1, 0], [0, 1]]


def test_lll_skew_basis():
    source = [[1, 0], [10, 1]]
    rows = exact_rows(source)
    red, T = lll_reduce(rows)
    assert abs(T[0][0] * T[1][1] - T[0][1] * T[1][0]) == 1
    for i, row in enumerate(red):
        for j, v in enumerate(row):
            expect = sum(Fraction(T[i][k]) * source[k][j] for k in range(2))
            assert v.contains(expect)
    assert gs_lovasz_ok(red)


def test_lll_random_bases_postconditions():
    rnd = random.Random(12)
    for _ in range(15):
        n = rnd.randint(2, 5)
        source = [[rnd.randint(-30, 30) for _ in range(n)] for _ in range(n)]
        from loglat.linalg import det as fdet
        if fdet([[Fraction(v) for v in row] for row in source]) == 0:
            continue
        red, T = lll_reduce(exact_rows(source))
        dT = fdet([[Fraction(v) for v in row] for row in T])
        assert abs(dT) == 1
        for i, row in enumerate(red):
            for j, v in enumerate(row):
                expect = sum(Fraction(T[i][k]) * source[k][j]
                             for k in range(n))
                assert v.contains(expect)
        assert gs_lovasz_ok(red)


def test_lll_rank_deficient():
    with pytest.raises(RankDeficient):
        lll_reduce(exact_rows([[1, 2], [2, 4]]))


def test_lll_gram_determinant_invariance():
    # rank-3 biquadratic log-lattice style input: any PD gram works; the
    # invariance of the determinant under the returned transform is exact
    g = GramMatrix.from_rational([[5, 1, 0], [1, 7, 2], [0, 2, 11]], 160)
    red, T = lll_reduce_gram(g)
    assert (red.det() - g.det()).contains_zero()


def brute_force_min(gram_rows, box=4):
    n = len(gram_rows)
    best = None
    vecs = []
    for x in itertools.product(range(-box, box + 1), repeat=n):
        if not any(x):
            continue
        q = sum(gram_rows[i][j] * x[i] * x[j]
                for i in range(n) for j in range(n))
        if best is None or q < best:
            best = q
            vecs = [x]
        elif q == best:
            vecs.append(x)
    return best, vecs


def test_hexagonal_minimum():
    g = GramMatrix.from_rational([[2, 1], [1, 2]], 128)
    m, vecs = shortest_vectors(g)
    assert m.contains(2)
    bm, bv = brute_force_min([[2, 1], [1, 2]], box=3)
    assert bm == 2 and len(bv) == 6  # six minimal vectors with signs
    assert len(vecs) == 3            # three modulo sign
    signed = {tuple(v) for v in vecs} | {tuple(-c for c in v) for v in vecs}
    assert signed == {tuple(v) for v in bv}


def test_identity_minimum():
    g = GramMatrix.from_rational([[1, 0], [0, 1]], 96)
    m, vecs = shortest_vectors(g)
    assert m.contains(1)
    assert sorted(vecs) == [[0, 1], [1, 0]]


def test_shortest_agrees_with_brute_force_random():
    rnd = random.Random(31)
    trials = 0
    while trials < 12:
        n = rnd.randint(2, 4)
        A = [[rnd.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        G = [[sum(A[i][k] * A[j][k] for k in range(n)) + (4 if i == j else 0)
              for j in range(n)] for i in range(n)]
        gram = GramMatrix.from_rational(G, 128)
        if not gram.is_positive_definite():
            continue
        trials += 1
        m, vecs = shortest_vectors(gram)
        bm, bv = brute_force_min(G)
        assert m.contains(bm)
        signed = {tuple(v) for v in vecs} | {tuple(-c for c in v)
                                             for v in vecs}
        assert signed == {tuple(v) for v in bv}


def test_isometry_permuted():
    g = GramMatrix.from_rational([[5, 1, 0], [1, 6, 2], [0, 2, 7]], 128)
    P = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    g2 = g.transform(P)
    v = isometry_test(g, g2)
    assert v.tag == "isometric"
    # witness re-verifies: T^T g T = g2 entrywise within tolerance
    T = v.witness
    n = 3
    Tt = [[T[j][i] for j in range(n)] for i in range(n)]
    resid = g.transform(Tt).max_abs_diff(g2)
    assert not (resid - v.tol).is_positive()
    from loglat.linalg import det as fdet
    assert abs(fdet([[Fraction(x) for x in row] for row in T])) == 1


def test_isometry_determinant_separates():
    g1 = GramMatrix.from_rational([[1, 0], [0, 1]], 96)
    g2 = GramMatrix.from_rational([[1, 0], [0, 4]], 96)
    v = isometry_test(g1, g2)
    assert v.tag == "not_isometric"
    assert v.separating[0] in ("determinant", "minimum")
    assert v.separating[0] == "determinant"  # minima agree (both 1)


def test_isometry_symmetry_of_arguments():
    g1 = GramMatrix.from_rational([[2, 1], [1, 2]], 96)
    g2 = GramMatrix.from_rational([[2, 0], [0, 6]], 96)
    va = isometry_test(g1, g2)
    vb = isometry_test(g2, g1)
    assert va.tag == vb.tag == "not_isometric"
    p = [[0, 1], [1, 0]]
    g3 = g1.transform(p)
    assert isometry_test(g1, g3).tag == isometry_test(g3, g1).tag == "isometric"


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        isometry_test(GramMatrix.from_rational([[1]], 64),
                      GramMatrix.from_rational([[1, 0], [0, 1]], 64))


def test_similarity_homothety():
    g = GramMatrix.from_rational([[5, 1], [1, 3]], 128)
    g4 = g.scale(BigReal.exact(4, 128))
    v, lam = similarity_test(g, g4)
    assert v.tag == "isometric"
    assert lam.contains(Fraction(1, 4))
    # symmetry: swapped arguments give the inverse scale
    v2, lam2 = similarity_test(g4, g)
    assert v2.tag == "isometric"
    assert lam2.contains(4)


def test_similarity_normalized_minima_differ():
    g1 = GramMatrix.from_rational([[1, 0], [0, 1]], 128)
    g2 = GramMatrix.from_rational([[1, 0], [0, 4]], 128)
    v, lam = similarity_test(g1, g2)
    assert v.tag == "not_isometric"


def test_gram_json_bit_exact_round_trip():
    g = GramMatrix.from_rows(
        [[BigReal.exact(2, 96).sqrt(), BigReal.exact(0, 96)],
         [BigReal.exact(3, 96).sqrt(), BigReal.exact(5, 96).sqrt()]], 96)
    s = g.to_json()
    g2 = GramMatrix.from_json(s)
    assert g2.to_json() == s
    for i in range(2):
        for j in range(2):
            assert g.entry(i, j).mid == g2.entry(i, j).mid
            assert g.entry(i, j).rad == g2.entry(i, j).rad
