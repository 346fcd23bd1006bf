"""Finite discrete groupoids, bisections, Boolean actions and germ groupoids.

Every subset of a finite discrete space is compact open, so bisections are
just arrow sets on which d and r are injective.
"""
from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

from gckit.errors import (DegenerateAction, NotABisection, NotAGroupoid, NotAnAction,
                          NotSubsemigroup, SizeLimit)
from gckit.finsem import InverseSemigroup

MAX_BISECTION_ARROWS = 12
MAX_ISO_ARROWS = 10


class FiniteGroupoid:
    """Objects 0..n-1, arrows 0..m-1; comp[b][c] = bc when d(b) = r(c), else -1."""

    def __init__(self, n_objects: int, d: Sequence[int], r: Sequence[int], comp,
                 labels=None, object_labels=None):
        self.n_objects = int(n_objects)
        self.d = tuple(int(x) for x in d)
        self.r = tuple(int(x) for x in r)
        m = len(self.d)
        if len(self.r) != m:
            raise NotAGroupoid("d and r must have the same length")
        if any(not 0 <= x < self.n_objects for x in self.d + self.r):
            raise NotAGroupoid("object index out of range")
        if isinstance(comp, dict):
            table = [[-1] * m for _ in range(m)]
            for (b, c), bc in comp.items():
                table[b][c] = bc
            comp = table
        self.comp = [list(map(int, row)) for row in comp]
        self.n_arrows = m
        self.labels = tuple(labels) if labels is not None else tuple(f"a{i}" for i in range(m))
        self.object_labels = tuple(object_labels) if object_labels is not None else \
            tuple(f"x{i}" for i in range(self.n_objects))
        self._validate()

    def _validate(self):
        m, d, r, comp = self.n_arrows, self.d, self.r, self.comp
        for b in range(m):
            for c in range(m):
                bc = comp[b][c]
                if (d[b] == r[c]) != (bc >= 0):
                    raise NotAGroupoid("composition defined exactly on composable pairs", witness=(b, c))
                if bc >= 0 and (d[bc] != d[c] or r[bc] != r[b]):
                    raise NotAGroupoid("composite has wrong endpoints", witness=(b, c))
        for a in range(m):
            for b in range(m):
                if d[a] != r[b]:
                    continue
                for c in range(m):
                    if d[b] == r[c] and comp[comp[a][b]][c] != comp[a][comp[b][c]]:
                        raise NotAGroupoid("composition not associative", witness=(a, b, c))
        unit = []
        for x in range(self.n_objects):
            found = [u for u in range(m) if d[u] == x and r[u] == x
                     and all(comp[u][g] == g for g in range(m) if r[g] == x)
                     and all(comp[g][u] == g for g in range(m) if d[g] == x)]
            if len(found) != 1:
                raise NotAGroupoid("every object needs exactly one identity arrow", witness=x)
            unit.append(found[0])
        inv = []
        for g in range(m):
            found = [h for h in range(m) if d[h] == r[g] and r[h] == d[g]
                     and comp[g][h] == unit[r[g]] and comp[h][g] == unit[d[g]]]
            if len(found) != 1:
                raise NotAGroupoid("arrow without a unique inverse", witness=g)
            inv.append(found[0])
        self.unit = tuple(unit)
        self.inv = tuple(inv)
        self.unit_set = frozenset(unit)

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"

    def compose(self, b, c):
        bc = self.comp[b][c]
        if bc < 0:
            raise ValueError(f"arrows {b} and {c} are not composable")
        return bc

    def factorizations(self, g):
        """Pairs (b, c) with bc = g."""
        return [(b, c) for b in range(self.n_arrows) for c in range(self.n_arrows)
                if self.comp[b][c] == g]

    def loops(self):
        return [g for g in range(self.n_arrows) if self.d[g] == self.r[g]]

    def label_set(self, arrows):
        return "{" + ",".join(self.labels[g] for g in sorted(arrows)) + "}"


def from_triples(n_objects, arrows, triples, labels=None) -> FiniteGroupoid:
    d = [a["d"] for a in arrows]
    r = [a["r"] for a in arrows]
    return FiniteGroupoid(n_objects, d, r, {(b, c): bc for b, c, bc in triples}, labels=labels)


def units(n: int) -> FiniteGroupoid:
    """The unit groupoid on n points (identity arrows only)."""
    return FiniteGroupoid(n, range(n), range(n), {(x, x): x for x in range(n)},
                          labels=[f"x{x + 1}" for x in range(n)],
                          object_labels=[f"x{x + 1}" for x in range(n)])


def pair(n: int) -> FiniteGroupoid:
    """Pair groupoid: one arrow (x, y) from y to x for every pair; units first."""
    pairs = [(x, x) for x in range(n)] + [(x, y) for x in range(n) for y in range(n) if x != y]
    index = {p: i for i, p in enumerate(pairs)}
    comp = {}
    for (x, y), i in index.items():
        for (y2, z), j in index.items():
            if y == y2:
                comp[(i, j)] = index[(x, z)]
    return FiniteGroupoid(n, [y for _, y in pairs], [x for x, _ in pairs], comp,
                          labels=[f"({x + 1},{y + 1})" for x, y in pairs],
                          object_labels=[f"x{x + 1}" for x in range(n)])


def group(G: InverseSemigroup) -> FiniteGroupoid:
    """One-object groupoid of a group (given as an inverse semigroup with one idempotent)."""
    if not G.is_group():
        raise NotAGroupoid("semigroup is not a group")
    e = G.idempotents[0]
    order = [e] + [g for g in range(G.n) if g != e]
    pos = {g: i for i, g in enumerate(order)}
    comp = {(pos[a], pos[b]): pos[G(a, b)] for a in order for b in order}
    return FiniteGroupoid(1, [0] * G.n, [0] * G.n, comp, labels=[G.labels[g] for g in order],
                          object_labels=["*"])


def cyclic(k: int) -> FiniteGroupoid:
    from gckit.finsem import cyclic_group

    return group(cyclic_group(k))


# ---------------------------------------------------------------- bisections

def is_bisection(G: FiniteGroupoid, B: Iterable[int]) -> bool:
    B = list(B)
    return len({G.d[g] for g in B}) == len(B) and len({G.r[g] for g in B}) == len(B) \
        and all(0 <= g < G.n_arrows for g in B)


def check_bisection(G: FiniteGroupoid, B) -> frozenset:
    B = frozenset(int(g) for g in B)
    if not is_bisection(G, B):
        raise NotABisection(f"{G.label_set(B)} is not a bisection", witness=sorted(B))
    return B


def bisection_product(G: FiniteGroupoid, B, C) -> frozenset:
    out = frozenset(G.comp[b][c] for b in B for c in C if G.d[b] == G.r[c])
    assert is_bisection(G, out)
    return out


def bisection_star(G: FiniteGroupoid, B) -> frozenset:
    return frozenset(G.inv[b] for b in B)


def bisection_domain(G, B):
    return frozenset(G.d[g] for g in B)


def bisection_range(G, B):
    return frozenset(G.r[g] for g in B)


def _sort_key(B):
    return (len(B), sorted(B))


def enumerate_bisections(G: FiniteGroupoid):
    if G.n_arrows > MAX_BISECTION_ARROWS:
        raise SizeLimit(f"{G.n_arrows} arrows; bisection enumeration limited to "
                        f"{MAX_BISECTION_ARROWS}", witness=G.n_arrows)
    out = []

    def rec(i, chosen, ds, rs):
        if i == G.n_arrows:
            out.append(frozenset(chosen))
            return
        rec(i + 1, chosen, ds, rs)
        if G.d[i] not in ds and G.r[i] not in rs:
            rec(i + 1, chosen + [i], ds | {G.d[i]}, rs | {G.r[i]})

    rec(0, [], frozenset(), frozenset())
    return sorted(out, key=_sort_key)


def bisection_semigroup(G: FiniteGroupoid, family: Iterable) -> InverseSemigroup:
    """Inverse semigroup on a family of bisections closed under product and star."""
    fam = sorted({check_bisection(G, B) for B in family}, key=_sort_key)
    pos = {B: i for i, B in enumerate(fam)}
    mul = []
    for B in fam:
        row = []
        for C in fam:
            BC = bisection_product(G, B, C)
            if BC not in pos:
                raise NotSubsemigroup(f"{G.label_set(B)}{G.label_set(C)} = {G.label_set(BC)} "
                                      "is missing", witness=(sorted(B), sorted(C)))
            row.append(pos[BC])
        mul.append(row)
    for B in fam:
        if bisection_star(G, B) not in pos:
            raise NotSubsemigroup(f"star of {G.label_set(B)} is missing", witness=sorted(B))
    S = InverseSemigroup(mul, labels=[G.label_set(B) for B in fam])
    for i, B in enumerate(fam):
        assert fam[S.star[i]] == bisection_star(G, B)
    S.groupoid = G
    S.bisections = tuple(fam)
    S.bisection_index = pos
    return S


def all_bisections(G: FiniteGroupoid) -> InverseSemigroup:
    return bisection_semigroup(G, enumerate_bisections(G))


def singleton_bisections(G: FiniteGroupoid) -> InverseSemigroup:
    return bisection_semigroup(G, [frozenset()] + [frozenset([g]) for g in range(G.n_arrows)])


def closure(G: FiniteGroupoid, generators: Iterable) -> list:
    """Smallest family containing the generators closed under product and star."""
    fam = {check_bisection(G, B) for B in generators}
    while True:
        new = set(fam)
        for B in fam:
            new.add(bisection_star(G, B))
            for C in fam:
                new.add(bisection_product(G, B, C))
        if new == fam:
            return sorted(fam, key=_sort_key)
        fam = new


def as_family(G, S_sub):
    if isinstance(S_sub, InverseSemigroup):
        return S_sub
    return bisection_semigroup(G, S_sub)


class GermConditions(NamedTuple):
    g1: bool
    g2: bool


def germ_conditions(G: FiniteGroupoid, S_sub) -> GermConditions:
    S = as_family(G, S_sub)
    fam = S.bisections
    g1 = set().union(*fam) == set(range(G.n_arrows)) if fam else G.n_arrows == 0
    g2 = True
    for U in fam:
        for V in fam:
            for g in U & V:
                if not any(g in W and W <= (U & V) for W in fam):
                    g2 = False
    return GermConditions(g1, g2)


# ---------------------------------------------------------------- Boolean actions

class BooleanAction:
    """Action of S on points 0..n-1 by partial bijections.

    dom[s] is the domain of rho_s (the set D_{s*}); rho[s] maps it onto D_s.
    """

    def __init__(self, S: InverseSemigroup, n_points: int, dom, rho, point_labels=None):
        self.S = S
        self.n_points = int(n_points)
        self.dom = tuple(frozenset(int(x) for x in D) for D in dom)
        self.rho = tuple({int(k): int(v) for k, v in dict(r).items()} for r in rho)
        self.point_labels = tuple(point_labels) if point_labels is not None else \
            tuple(f"p{x}" for x in range(self.n_points))
        if len(self.dom) != S.n or len(self.rho) != S.n:
            raise NotAnAction("need a domain and a map for every element")
        for s in range(S.n):
            if set(self.rho[s]) != set(self.dom[s]):
                raise NotAnAction("map does not match its domain", witness=s)
            img = set(self.rho[s].values())
            if len(img) != len(self.dom[s]) or img != set(self.dom[S.star[s]]):
                raise NotAnAction("rho_s must be a bijection onto the domain of rho_{s*}", witness=s)
        for s in range(S.n):
            for t in range(S.n):
                composed = {x: self.rho[s][self.rho[t][x]] for x in self.dom[t]
                            if self.rho[t][x] in self.dom[s]}
                if composed != self.rho[S(s, t)]:
                    raise NotAnAction("rho_s rho_t != rho_st", witness=(s, t))
        covered = set()
        for e in S.idempotents:
            covered |= self.dom[e]
        if covered != set(range(self.n_points)):
            raise DegenerateAction("points outside every D_e",
                                   witness=sorted(set(range(self.n_points)) - covered))

    def ran(self, s):
        return self.dom[self.S.star[s]]


def rho_from_bisections(G: FiniteGroupoid, S_sub=None) -> BooleanAction:
    """rho_U = r o (d restricted to U)^{-1} for U in the given family (default all bisections)."""
    S = all_bisections(G) if S_sub is None else as_family(G, S_sub)
    dom = [bisection_domain(G, U) for U in S.bisections]
    rho = [{G.d[g]: G.r[g] for g in U} for U in S.bisections]
    return BooleanAction(S, G.n_objects, dom, rho, point_labels=G.object_labels)


class GermGroupoid:
    def __init__(self, action, base, germ_of, witnesses, bisection_of, family, family_index):
        self.action = action
        self.base = base
        self.germ_of = germ_of
        self.witnesses = witnesses
        self.bisection_of = bisection_of
        self.family = family
        self.family_index = family_index

    def __repr__(self):
        return f"GermGroupoid({self.base!r})"


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def germs_related(act: BooleanAction, s, t, x) -> bool:
    S = act.S
    return any(S.leq(u, s) and S.leq(u, t) and x in act.dom[u] for u in range(S.n))


def groupoid_of_germs(act: BooleanAction) -> GermGroupoid:
    S = act.S
    pairs = [(s, x) for s in range(S.n) for x in sorted(act.dom[s])]
    pos = {p: i for i, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    below = {s: [u for u in range(S.n) if S.leq(u, s)] for s in range(S.n)}
    for (s, x) in pairs:
        for t in range(s + 1, S.n):
            if x in act.dom[t] and any(u in below[t] and x in act.dom[u] for u in below[s]):
                uf.union(pos[(s, x)], pos[(t, x)])
    classes = {}
    for i, p in enumerate(pairs):
        classes.setdefault(uf.find(i), []).append(p)
    groups = list(classes.values())
    # identity germs first, in point order; the rest by least representative
    unit_of_point = {}
    for g in groups:
        s, x = g[0]
        if any(S.is_idempotent(t) for t, _ in g):
            unit_of_point[x] = g
    if len(unit_of_point) != act.n_points:
        raise DegenerateAction("some point has no identity germ")
    rest = sorted((g for g in groups if not any(g is h for h in unit_of_point.values())),
                  key=lambda g: g[0])
    ordered = [unit_of_point[x] for x in range(act.n_points)] + rest
    germ_of = {}
    for a, g in enumerate(ordered):
        for p in g:
            germ_of[p] = a
    witnesses = tuple(g[0] for g in ordered)
    m = len(ordered)
    d = [x for (_, x) in witnesses]
    r = [act.rho[s][x] for (s, x) in witnesses]
    comp = {}
    for a in range(m):
        for b in range(m):
            if d[a] != r[b]:
                continue
            vals = set()
            for (s, y) in ordered[a]:
                for (t, x) in ordered[b]:
                    assert act.rho[t][x] == y
                    vals.add(germ_of[(S(s, t), x)])
            assert len(vals) == 1, "germ product depends on representatives"
            comp[(a, b)] = vals.pop()
    labels = [f"[{S.labels[s]},{act.point_labels[x]}]" for (s, x) in witnesses]
    base = FiniteGroupoid(act.n_points, d, r, comp, labels=labels, object_labels=act.point_labels)
    for a, (s, x) in enumerate(witnesses):
        assert base.inv[a] == germ_of[(S.star[s], act.rho[s][x])]
    bisection_of = tuple(frozenset(germ_of[(s, x)] for x in act.dom[s]) for s in range(S.n))
    for s in range(S.n):
        for t in range(S.n):
            assert bisection_product(base, bisection_of[s], bisection_of[t]) == bisection_of[S(s, t)]
    family = bisection_semigroup(base, set(bisection_of))
    family_index = tuple(family.bisection_index[U] for U in bisection_of)
    gc = germ_conditions(base, family)
    assert gc.g1 and gc.g2, "the family U(s) must satisfy the germ conditions"
    return GermGroupoid(act, base, germ_of, witnesses, bisection_of, family, family_index)


# ---------------------------------------------------------------- isomorphism

def find_groupoid_isomorphism(G: FiniteGroupoid, H: FiniteGroupoid):
    """(object map, arrow map) of an isomorphism G -> H, or None."""
    if G.n_arrows > MAX_ISO_ARROWS or H.n_arrows > MAX_ISO_ARROWS:
        raise SizeLimit("groupoid isomorphism search is limited to "
                        f"{MAX_ISO_ARROWS} arrows", witness=(G.n_arrows, H.n_arrows))
    if G.n_objects != H.n_objects or G.n_arrows != H.n_arrows:
        return None
    m = G.n_arrows
    for sigma in itertools.permutations(range(H.n_objects)):
        fibers = {}
        for h in range(m):
            fibers.setdefault((H.d[h], H.r[h]), []).append(h)
        if any(len(fibers.get((sigma[G.d[g]], sigma[G.r[g]]), [])) == 0 for g in range(m)):
            continue
        image = [-1] * m
        used = set()

        def consistent(g):
            done = [b for b in range(m) if image[b] >= 0]
            for x in done:
                for y in done:
                    xy = G.comp[x][y]
                    if g in (x, y, xy) and xy >= 0 and image[xy] >= 0 \
                            and H.comp[image[x]][image[y]] != image[xy]:
                        return False
            return True

        def rec(g):
            if g == m:
                return True
            for h in fibers[(sigma[G.d[g]], sigma[G.r[g]])]:
                if h in used:
                    continue
                image[g] = h
                used.add(h)
                if consistent(g) and rec(g + 1):
                    return True
                used.discard(h)
                image[g] = -1
            return False

        if rec(0):
            for b in range(m):
                for c in range(m):
                    bc = G.comp[b][c]
                    if bc >= 0:
                        assert H.comp[image[b]][image[c]] == image[bc]
            return tuple(sigma), tuple(image)
    return None
