"""Permutation groups: enumeration, conjugacy classes, Gassmann equivalence.

Permutations are 0-based tuples (p[i] is the image of i) composed as
(p*q)(i) = p(q(i)).  Cycle strings in serialized form are 1-based, e.g.
"(1,2,3)(4,5)".  Groups defined abstractly (Cayley tables) convert to
permutation groups through their regular representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import IndexMismatch, OrderBudgetExceeded

DEFAULT_ORDER_BUDGET = 5000


# -- permutation primitives ---------------------------------------------------

def identity_perm(degree: int):
    return tuple(range(degree))


def compose(p, q):
    """(p*q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_to_cycles(p) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + ",".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


def cycles_to_perm(s: str, degree: int):
    s = s.replace(" ", "")
    out = list(range(degree))
    if s in ("", "()"):
        return tuple(out)
    depth = 0
    cur = []
    cycles = []
    tok = ""
    for ch in s:
        if ch == "(":
            depth += 1
            cur = []
            tok = ""
        elif ch == ")":
            if tok:
                cur.append(int(tok) - 1)
            cycles.append(cur)
            tok = ""
            depth -= 1
        elif ch == ",":
            cur.append(int(tok) - 1)
            tok = ""
        else:
            tok += ch
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a >= degree or b >= degree:
                raise ValueError(f"cycle entry beyond degree {degree}")
            out[a] = b
    return tuple(out)


def perm_order(p) -> int:
    n = 1
    q = p
    ident = identity_perm(len(p))
    while q != ident:
        q = compose(q, p)
        n += 1
    return n


# -- the group object ---------------------------------------------------------

class PermGroupData:
    """A finite permutation group with enumerated elements.

    Elements are enumerated by BFS over the generators and stored sorted
    (identity first); the order budget guards the enumeration.
    """

    def __init__(self, degree: int, generators, name: str = "",
                 budget: int = DEFAULT_ORDER_BUDGET):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self.name = name
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
        self.elements = self._close(budget)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._mult_table = None
        self._inv_table = None
        self._classes = None
        self.subgroup_records: dict[str, list] = {}

    def _close(self, budget: int):
        ident = identity_perm(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        if len(seen) >= budget:
                            raise OrderBudgetExceeded(
                                f"group order exceeds budget {budget}")
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity_index(self) -> int:
        return self.index[identity_perm(self.degree)]

    def mult_table(self):
        if self._mult_table is None:
            els = self.elements
            idx = self.index
            self._mult_table = [
                [idx[compose(a, b)] for b in els] for a in els]
        return self._mult_table

    def inv_table(self):
        if self._inv_table is None:
            self._inv_table = [self.index[invert(g)] for g in self.elements]
        return self._inv_table

    def conjugacy_classes(self):
        """Partition of elements into conjugacy classes.

        Deterministic order: by class size, then by the minimal element.
        Each class is a sorted list of element indices.
        """
        if self._classes is not None:
            return self._classes
        assigned = [False] * self.order
        classes = []
        gens = self.generators
        gens_inv = [invert(g) for g in gens]
        for i, x in enumerate(self.elements):
            if assigned[i]:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                new = []
                for y in frontier:
                    for g, gi in zip(gens, gens_inv):
                        z = compose(g, compose(y, gi))
                        if z not in orbit:
                            orbit.add(z)
                            new.append(z)
                frontier = new
            idxs = sorted(self.index[y] for y in orbit)
            for j in idxs:
                assigned[j] = True
            classes.append(idxs)
        classes.sort(key=lambda c: (len(c), self.elements[c[0]]))
        self._classes = classes
        return classes

    def subgroup(self, generators, name: str = "") -> "PermGroupData":
        H = PermGroupData(self.degree, generators, name=name,
                          budget=self.order + 1)
        for h in H.elements:
            if h not in self.index:
                raise ValueError("subgroup generator escapes the group")
        return H

    def element_set(self, H: "PermGroupData"):
        return frozenset(H.elements)

    def is_normal(self, H: "PermGroupData") -> bool:
        hs = frozenset(H.elements)
        for g in self.generators:
            gi = invert(g)
            for h in H.elements:
                if compose(g, compose(h, gi)) not in hs:
                    return False
        return True

    def conjugate_subgroup(self, H: "PermGroupData", g) -> "PermGroupData":
        gi = invert(g)
        gens = [compose(g, compose(h, gi)) for h in H.generators]
        return PermGroupData(self.degree, gens, name=H.name + "^g",
                             budget=self.order + 1)

    def subgroups_conjugate(self, H1: "PermGroupData",
                            H2: "PermGroupData") -> bool:
        s2 = frozenset(H2.elements)
        for g in self.elements:
            gi = invert(g)
            if frozenset(compose(g, compose(h, gi))
                         for h in H1.elements) == s2:
                return True
        return False

    def record_subgroup(self, name: str, H: "PermGroupData"):
        self.subgroup_records[name] = H.generators

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [perm_to_cycles(g) for g in self.generators],
            "subgroups": {name: [perm_to_cycles(g) for g in gens]
                          for name, gens in sorted(self.subgroup_records.items())},
        }

    @classmethod
    def from_json_dict(cls, d: dict, name: str = "") -> "PermGroupData":
        degree = int(d["degree"])
        gens = [cycles_to_perm(s, degree) for s in d["generators"]]
        G = cls(degree, gens, name=name)
        for sub_name, sub_gens in d.get("subgroups", {}).items():
            H = G.subgroup([cycles_to_perm(s, degree) for s in sub_gens],
                           name=sub_name)
            G.record_subgroup(sub_name, H)
        return G

    def __repr__(self):
        return f"PermGroupData({self.name or 'G'}, deg {self.degree}, order {self.order})"


def conjugacy_classes(G: PermGroupData):
    return G.conjugacy_classes()


def gassmann_equivalent(G: PermGroupData, H1: PermGroupData,
                        H2: PermGroupData) -> bool:
    """Class-intersection counts |c ∩ H1| = |c ∩ H2| for every class c."""
    if G.order % H1.order or G.order % H2.order:
        raise ValueError("subgroup order does not divide group order")
    if G.order // H1.order != G.order // H2.order:
        raise IndexMismatch(
            f"indices differ: {G.order // H1.order} vs {G.order // H2.order}")
    s1 = frozenset(H1.elements)
    s2 = frozenset(H2.elements)
    for cls_idx in G.conjugacy_classes():
        c1 = sum(1 for i in cls_idx if G.elements[i] in s1)
        c2 = sum(1 for i in cls_idx if G.elements[i] in s2)
        if c1 != c2:
            return False
    return True


# -- abstract groups via Cayley tables ----------------------------------------

class CayleyTable:
    """Finite group as an index multiplication table (for catalog builders)."""

    def __init__(self, table, name: str = ""):
        self.table = table
        self.order = len(table)
        self.name = name

    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.order)):
                return e
        raise ValueError("no identity in table")

    def regular_perm_group(self, name: str = "") -> PermGroupData:
        """Left regular representation as a permutation group."""
        perms = [tuple(self.table[g]) for g in range(self.order)]
        gens = _reduce_generators(perms, self.order)
        return PermGroupData(self.order, gens, name=name or self.name)

    def direct(self, other: "CayleyTable", name: str = "") -> "CayleyTable":
        n, m = self.order, other.order
        table = [[0] * (n * m) for _ in range(n * m)]
        for a1 in range(n):
            for b1 in range(m):
                for a2 in range(n):
                    for b2 in range(m):
                        table[a1 * m + b1][a2 * m + b2] = \
                            self.table[a1][a2] * m + other.table[b1][b2]
        return CayleyTable(table, name or f"{self.name}x{other.name}")

    def quotient(self, normal_elems, name: str = "") -> "CayleyTable":
        """Quotient by the normal subgroup given as a set of indices."""
        ns = sorted(normal_elems)
        cosets = []
        assigned = {}
        for g in range(self.order):
            if g in assigned:
                continue
            coset = frozenset(self.table[g][h] for h in ns)
            ci = len(cosets)
            cosets.append(coset)
            for x in coset:
                assigned[x] = ci
        q = len(cosets)
        table = [[0] * q for _ in range(q)]
        reps = [min(c) for c in cosets]
        for i in range(q):
            for j in range(q):
                table[i][j] = assigned[self.table[reps[i]][reps[j]]]
        return CayleyTable(table, name or f"{self.name}/N")


def _reduce_generators(perms, degree):
    """Greedy small generating set from a full element list."""
    target = len(perms)
    chosen = []
    for p in sorted(perms, reverse=True):
        trial = chosen + [p]
        if _closure_size(trial, degree, target) > _closure_size(chosen, degree, target):
            chosen.append(p)
        if _closure_size(chosen, degree, target) == target:
            break
    return chosen or [identity_perm(degree)]


def _closure_size(gens, degree, cap):
    if not gens:
        return 1
    ident = identity_perm(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        return len(seen)
        frontier = new
    return len(seen)


def cyclic_table(n: int) -> CayleyTable:
    return CayleyTable([[(i + j) % n for j in range(n)] for i in range(n)],
                       f"C{n}")


def dihedral_table(n: int) -> CayleyTable:
    """Dihedral group of order 2n: elements r^i s^j, j in {0,1}."""
    def idx(i, j):
        return i + n * j

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % n, j2
                    else:
                        i, j = (i1 - i2) % n, 1 - j2
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, j)
    return CayleyTable(table, f"D{n}")


def dicyclic_table(n: int) -> CayleyTable:
    """Dicyclic group of order 4n (n=2 gives Q8, n=4 gives Q16)."""
    m = 2 * n

    def idx(i, j):
        return i + m * j

    table = [[0] * (4 * n) for _ in range(4 * n)]
    for i1 in range(m):
        for j1 in range(2):
            for i2 in range(m):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % m, j2
                    else:
                        # a^i b · a^k = a^(i-k) b ;  b² = a^n
                        i, j = (i1 - i2) % m, 1 - j2
                        if j2 == 1:
                            i = (i + n) % m
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, j)
    return CayleyTable(table, f"Dic{n}")


def semidirect_cyclic(m: int, k: int, a: int, name: str = "") -> CayleyTable:
    """C_m ⋊ C_k with the generator of C_k acting by x -> a·x mod m."""
    if pow(a, k, m) != 1 % m:
        raise ValueError("a^k must be 1 mod m")

    def act(h, x):
        return (x * pow(a, h, m)) % m

    def idx(x, h):
        return x * k + h

    table = [[0] * (m * k) for _ in range(m * k)]
    for x1 in range(m):
        for h1 in range(k):
            for x2 in range(m):
                for h2 in range(k):
                    table[idx(x1, h1)][idx(x2, h2)] = \
                        idx((x1 + act(h1, x2)) % m, (h1 + h2) % k)
    return CayleyTable(table, name or f"C{m}:C{k}(a={a})")


def semidirect_table(N: CayleyTable, H: CayleyTable, act,
                     name: str = "") -> CayleyTable:
    """N ⋊ H where act(h) is an automorphism of N given as an index map."""
    n, k = N.order, H.order

    def idx(x, h):
        return x * k + h

    table = [[0] * (n * k) for _ in range(n * k)]
    for x1 in range(n):
        for h1 in range(k):
            a1 = act(h1)
            for x2 in range(n):
                for h2 in range(k):
                    table[idx(x1, h1)][idx(x2, h2)] = \
                        idx(N.table[x1][a1[x2]], H.table[h1][h2])
    return CayleyTable(table, name)


def symmetric_group(n: int) -> PermGroupData:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroupData(n, gens or [identity_perm(n)], name=f"S{n}")


def alternating_group(n: int) -> PermGroupData:
    if n < 3:
        return PermGroupData(n, [identity_perm(n)], name=f"A{n}")
    gens = [cycles_to_perm("(1,2,3)", n)]
    if n > 3:
        if n % 2 == 1:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            gens.append(tuple([0] + list(range(2, n)) + [1]))
    return PermGroupData(n, gens, name=f"A{n}")


def sl23_table() -> CayleyTable:
    """SL(2,3): 2x2 matrices over F3 with determinant 1."""
    mats = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        mats.append((a, b, c, d))
    idx = {m: i for i, m in enumerate(mats)}

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3,
                (c * e + d * g) % 3, (c * f + d * h) % 3)

    table = [[idx[mul(x, y)] for y in mats] for x in mats]
    return CayleyTable(table, "SL(2,3)")


# -- the order-168 simple group on the Fano plane -----------------------------

def _f2_matrices():
    """All invertible 3x3 matrices over F2 (as tuples of 9 bits)."""
    from itertools import product as iproduct
    mats = []
    for bits in iproduct((0, 1), repeat=9):
        m = [bits[0:3], bits[3:6], bits[6:9]]
        det = (m[0][0] * (m[1][1] * m[2][2] ^ m[1][2] * m[2][1])
               ^ m[0][1] * (m[1][0] * m[2][2] ^ m[1][2] * m[2][0])
               ^ m[0][2] * (m[1][0] * m[2][1] ^ m[1][1] * m[2][0])) & 1
        if det:
            mats.append(tuple(bits))
    return mats


def _f2_apply(mat, v):
    """Apply a 3x3 F2 matrix (9-tuple, row major) to a vector 1..7."""
    x = ((v >> 2) & 1, (v >> 1) & 1, v & 1)
    out = 0
    for i in range(3):
        b = (mat[3 * i] * x[0]) ^ (mat[3 * i + 1] * x[1]) ^ (mat[3 * i + 2] * x[2])
        out = (out << 1) | b
    return out


def _f2_transpose(mat):
    return (mat[0], mat[3], mat[6], mat[1], mat[4], mat[7], mat[2], mat[5], mat[8])


def fano_group():
    """GL(3,2) acting on the 7 points of the Fano plane, with its two
    non-conjugate index-7 subgroup classes (point and plane stabilizers).

    Returns (G, H_point, H_plane): the stabilizer of the point v=1 and the
    stabilizer of the plane {v : last coordinate of v is 0}.
    """
    mats = _f2_matrices()

    def to_perm(mat):
        return tuple(_f2_apply(mat, v + 1) - 1 for v in range(7))

    gen_mats = [
        (1, 1, 0, 0, 1, 0, 0, 0, 1),     # transvection
        (0, 0, 1, 1, 0, 0, 0, 1, 0),     # coordinate rotation
    ]
    G = PermGroupData(7, [to_perm(m) for m in gen_mats], name="GL(3,2)")
    if G.order != 168:
        raise AssertionError("Fano group construction failed")

    point = 1  # vector (0,0,1)
    stab_pt = [to_perm(m) for m in mats if _f2_apply(m, point) == point]
    # plane x3 = 0 <=> functional phi = (0,0,1); M preserves it iff M^T
    # fixes the vector (0,0,1)
    stab_pl = [to_perm(m) for m in mats
               if _f2_apply(_f2_transpose(m), point) == point]
    H_point = G.subgroup(_reduce_generators(stab_pt, 7), name="point-stab")
    H_plane = G.subgroup(_reduce_generators(stab_pl, 7), name="plane-stab")
    if H_point.order != 24 or H_plane.order != 24:
        raise AssertionError("Fano stabilizer construction failed")
    return G, H_point, H_plane


# -- catalog of all groups of order <= 24 -------------------------------------

def _abelian_tables(order: int):
    """All abelian groups of the given order (one per isomorphism class)."""
    def partitions_of_exponents(n):
        # factor n, produce all multisets of cyclic factors via divisor chains
        out = set()

        def rec(m, min_d, acc):
            if m == 1:
                out.add(tuple(sorted(acc)))
                return
            d = min_d
            while d <= m:
                if m % d == 0:
                    rec(m // d, d, acc + [d])
                d += 1
        rec(n, 2, [])
        return sorted(out)

    # keep only invariant-factor-style decompositions once per class
    seen = set()
    tables = []
    for shape in partitions_of_exponents(order):
        canon = _abelian_invariants(shape)
        if canon in seen:
            continue
        seen.add(canon)
        if not shape:
            t = cyclic_table(1)
        else:
            t = cyclic_table(shape[0])
            for d in shape[1:]:
                t = t.direct(cyclic_table(d))
        t.name = "x".join(f"C{d}" for d in shape) or "C1"
        tables.append(t)
    return tables


def _abelian_invariants(shape):
    """Canonical primary decomposition of a product of cyclic groups."""
    from collections import defaultdict
    primary = defaultdict(list)
    for d in shape:
        m = d
        p = 2
        while m > 1:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                primary[p].append(e)
            p += 1
    return tuple(sorted((p, tuple(sorted(es))) for p, es in primary.items()))


def catalog_upto_24():
    """Permutation models covering every isomorphism class of order <= 24."""
    tables: list[CayleyTable] = []
    for n in range(1, 25):
        tables.extend(_abelian_tables(n))
    for n in range(3, 13):
        if 2 * n <= 24:
            tables.append(dihedral_table(n))
    for n in range(2, 7):
        if 4 * n <= 24:
            tables.append(dicyclic_table(n))
    # order 16 exotics
    tables.append(semidirect_cyclic(8, 2, 3, "SD16"))
    tables.append(semidirect_cyclic(8, 2, 5, "M4(2)"))
    tables.append(semidirect_cyclic(4, 4, 3, "C4:C4"))
    v4 = cyclic_table(2).direct(cyclic_table(2), "V4")
    swap = [0, 2, 1, 3]  # swap the two C2 factors of V4
    tables.append(semidirect_table(
        v4, cyclic_table(4), lambda h: (swap if h % 2 else [0, 1, 2, 3]),
        "C2^2:C4"))
    d4c4 = dihedral_table(4).direct(cyclic_table(4))
    # central product D4∘C4: kill (r^2, c^2); D4 indices r^i s^j = i + 4j
    tables.append(d4c4.quotient([0, 2 * 4 + 2], "D4oC4"))
    # odd-order and mixed semidirects
    tables.append(semidirect_cyclic(3, 8, 2, "C3:C8"))
    tables.append(semidirect_cyclic(5, 4, 2, "F20"))
    tables.append(semidirect_cyclic(7, 3, 2, "C7:C3"))
    c3c3 = cyclic_table(3).direct(cyclic_table(3), "C3xC3")
    inv9 = [0] * 9
    for x1 in range(3):
        for x2 in range(3):
            inv9[x1 * 3 + x2] = ((3 - x1) % 3) * 3 + ((3 - x2) % 3)
    tables.append(semidirect_table(c3c3, cyclic_table(2),
                                   lambda h: (inv9 if h else list(range(9))),
                                   "(C3xC3):C2"))
    # order 18 and 24 products
    s3 = dihedral_table(3)
    s3.name = "S3"
    tables.append(s3.direct(cyclic_table(3), "S3xC3"))
    tables.append(s3.direct(cyclic_table(4), "S3xC4"))
    tables.append(s3.direct(cyclic_table(2).direct(cyclic_table(2)), "S3xV4"))
    tables.append(dihedral_table(4).direct(cyclic_table(2), "D4xC2"))
    tables.append(dicyclic_table(2).direct(cyclic_table(2), "Q8xC2"))
    tables.append(dihedral_table(4).direct(cyclic_table(3), "D4xC3"))
    tables.append(dicyclic_table(2).direct(cyclic_table(3), "Q8xC3"))
    tables.append(dihedral_table(6).direct(cyclic_table(2), "D6xC2"))
    tables.append(dicyclic_table(3).direct(cyclic_table(2), "Dic3xC2"))
    tables.append(sl23_table())
    # C3 ⋊ D4 with kernel C4 of the action
    d4 = dihedral_table(4)
    inv3 = [0, 2, 1]

    def act_c3_d4(h):
        # D4 element r^i s^j at index i + 4j; s acts by inversion, r trivially
        return inv3 if h // 4 else [0, 1, 2]
    tables.append(semidirect_table(cyclic_table(3), d4, act_c3_d4, "C3:D4"))

    groups = [t.regular_perm_group(t.name) for t in tables if t.order <= 24]
    groups.append(symmetric_group(3))
    groups.append(symmetric_group(4))
    groups.append(alternating_group(4))
    a4_table = CayleyTable(alternating_group(4).mult_table(), "A4")
    groups.append(a4_table.direct(cyclic_table(2), "A4xC2")
                  .regular_perm_group("A4xC2"))
    return groups
