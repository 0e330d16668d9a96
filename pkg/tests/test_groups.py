import random

import pytest

from loglat.errors import IndexMismatch, OrderBudgetExceeded
from loglat.groups import (PermGroupData, alternating_group, catalog_upto_24,
                           cycles_to_perm, cyclic_table, dihedral_table,
                           fano_group, gassmann_equivalent, perm_to_cycles,
                           symmetric_group)


def brute_force_classes(G):
    """Conjugation-closure oracle over *all* elements (no generator trick)."""
    els = G.elements
    classes = []
    assigned = set()
    for x in els:
        if x in assigned:
            continue
        orb = set()
        for g in els:
            gi = tuple(sorted(range(len(g)), key=lambda i: g[i]))
            # inverse of g
            inv = [0] * len(g)
            for i, v in enumerate(g):
                inv[v] = i
            from loglat.groups import compose
            orb.add(compose(g, compose(x, tuple(inv))))
        classes.append(sorted(orb))
        assigned |= orb
    return sorted([sorted(map(els.index, c)) for c in classes],
                  key=lambda c: (len(c), els[c[0]]))


def test_c2_classes():
    C2 = cyclic_table(2).regular_perm_group("C2")
    assert len(C2.conjugacy_classes()) == 2


def test_s3_classes_textbook():
    S3 = symmetric_group(3)
    sizes = [len(c) for c in S3.conjugacy_classes()]
    assert sizes == [1, 2, 3]  # deterministic order: by size


def test_classes_match_brute_force():
    for G in (symmetric_group(4), dihedral_table(6).regular_perm_group("D6")):
        assert G.conjugacy_classes() == brute_force_classes(G)


def test_fano_group_classes():
    G, Hpt, Hpl = fano_group()
    assert G.order == 168
    assert len(G.conjugacy_classes()) == 6
    assert sorted(len(c) for c in G.conjugacy_classes()) == \
        [1, 21, 24, 24, 42, 56]


def test_fano_gassmann_nonconjugate():
    G, Hpt, Hpl = fano_group()
    assert Hpt.order == Hpl.order == 24
    assert gassmann_equivalent(G, Hpt, Hpl)
    assert not G.subgroups_conjugate(Hpt, Hpl)


def test_conjugate_subgroups_always_gassmann():
    rnd = random.Random(17)
    for n in (4, 5, 6):
        G = symmetric_group(n)
        for _ in range(6):
            gens = [G.elements[rnd.randrange(G.order)] for _ in range(2)]
            H = G.subgroup(gens)
            g = G.elements[rnd.randrange(G.order)]
            Hg = G.conjugate_subgroup(H, g)
            assert gassmann_equivalent(G, H, Hg)
            assert gassmann_equivalent(G, Hg, H)   # symmetric


def test_gassmann_index_mismatch():
    S3 = symmetric_group(3)
    H1 = S3.subgroup([cycles_to_perm("(1,2)", 3)])
    H2 = S3.subgroup([cycles_to_perm("(1,2,3)", 3)])
    with pytest.raises(IndexMismatch):
        gassmann_equivalent(S3, H1, H2)


def test_equal_index_non_gassmann_in_d4():
    D4 = dihedral_table(4).regular_perm_group("D4")
    els = D4.elements
    # find an order-2 central element (r^2) and a non-central reflection
    from loglat.groups import compose, identity_perm
    ident = identity_perm(D4.degree)
    order2 = [g for g in els if g != ident and compose(g, g) == ident]
    central = [g for g in order2
               if all(compose(g, h) == compose(h, g) for h in els)]
    noncentral = [g for g in order2 if g not in central]
    H1 = D4.subgroup([central[0]])
    H2 = D4.subgroup([noncentral[0]])
    assert not gassmann_equivalent(D4, H1, H2)


def test_cycle_string_round_trip():
    for s in ("(1,2,3)(4,5)", "()", "(2,7)(3,5)"):
        p = cycles_to_perm(s, 7)
        assert cycles_to_perm(perm_to_cycles(p), 7) == p


def test_order_budget():
    with pytest.raises(OrderBudgetExceeded):
        PermGroupData(8, symmetric_group(8).generators, budget=5000)


def test_catalog_covers_every_order():
    cat = catalog_upto_24()
    orders = {g.order for g in cat}
    assert orders == set(range(1, 25))
    # the classification counts for a few orders where we claim completeness
    from collections import Counter
    per = Counter(g.order for g in cat)
    assert per[16] >= 14
    assert per[24] >= 15
    assert per[8] >= 5
    assert per[12] >= 5


def test_group_json_round_trip():
    G, Hpt, Hpl = fano_group()
    G.record_subgroup("point-stab", Hpt)
    G.record_subgroup("plane-stab", Hpl)
    d = G.to_json_dict()
    G2 = PermGroupData.from_json_dict(d)
    assert G2.order == 168
    H2 = G2.subgroup(G2.subgroup_records["plane-stab"])
    assert H2.order == 24
