"""Finite generalized Boolean algebras, filters, ultrafilters and characters."""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from gckit.errors import Incompatible, NotSeparable


class GenBooleanAlgebra:
    """Relatively complemented distributive lattice with bottom, as tables.

    `elements` optionally records what each index stands for in a parent
    structure (ring indices for algebras of central idempotents).
    """

    def __init__(self, meet, join, relcomp, zero, elements: Sequence | None = None, labels=None,
                 check=True):
        self.meet = np.array(meet, dtype=np.int32)
        self.join = np.array(join, dtype=np.int32)
        self.relcomp = np.array(relcomp, dtype=np.int32)
        self.n = self.meet.shape[0]
        self.zero = int(zero)
        self.elements = tuple(elements) if elements is not None else tuple(range(self.n))
        self._labels = labels
        self._mt = self.meet.tolist()
        self._jn = self.join.tolist()
        self._rc = self.relcomp.tolist()
        self._up = self._down = self._atoms = self._filters = None
        if check:
            problem = self._problem()
            if problem:
                raise ValueError(f"not a generalized Boolean algebra: {problem}")

    def _problem(self):
        n, m, j, rc, z = self.n, self._mt, self._jn, self._rc, self.zero
        for a in range(n):
            if m[a][a] != a or j[a][a] != a:
                return ("idempotence", a)
            if m[z][a] != z or j[z][a] != a:
                return ("bottom", a)
            for b in range(n):
                if m[a][b] != m[b][a] or j[a][b] != j[b][a]:
                    return ("commutativity", a, b)
                if m[a][j[a][b]] != a or j[a][m[a][b]] != a:
                    return ("absorption", a, b)
                if m[rc[a][b]][b] != z or j[rc[a][b]][m[a][b]] != a:
                    return ("relative complement", a, b)
                if j[a][b] != j[j[rc[a][b]][rc[b][a]]][m[a][b]]:
                    return ("join decomposition", a, b)
                for c in range(n):
                    if m[m[a][b]][c] != m[a][m[b][c]] or j[j[a][b]][c] != j[a][j[b][c]]:
                        return ("associativity", a, b, c)
                    if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                        return ("distributivity", a, b, c)
        return None

    def __len__(self):
        return self.n

    def label(self, i):
        if self._labels is None:
            return str(i)
        if callable(self._labels):
            return self._labels(i)
        return str(self._labels[i])

    def leq(self, a, b):
        return self._mt[a][b] == a

    def m(self, a, b):
        return self._mt[a][b]

    def j(self, a, b):
        return self._jn[a][b]

    def minus(self, a, b):
        return self._rc[a][b]

    def top(self):
        """Join of all elements (finite algebras always have one)."""
        t = self.zero
        for a in range(self.n):
            t = self._jn[t][a]
        return t

    def atoms(self):
        if self._atoms is None:
            self._atoms = [a for a in range(self.n) if a != self.zero
                           and all(b == self.zero or b == a for b in self.down(a))]
        return list(self._atoms)

    def up(self, a):
        if self._up is None:
            le = self.meet == np.arange(self.n)[:, None]
            self._up = [frozenset(np.flatnonzero(row).tolist()) for row in le]
            self._down = [frozenset(np.flatnonzero(col).tolist()) for col in le.T]
        return self._up[a]

    def down(self, a):
        self.up(a)
        return self._down[a]

    def index_of(self, element):
        return self.elements.index(element)


def free(atoms: int) -> GenBooleanAlgebra:
    """Power set of an `atoms`-element set, elements are bitmasks."""
    n = 1 << atoms
    idx = np.arange(n)
    meet = idx[:, None] & idx[None, :]
    join = idx[:, None] | idx[None, :]
    rel = idx[:, None] & ~idx[None, :]

    def label(i):
        return "{" + ",".join(str(k + 1) for k in range(atoms) if i >> k & 1) + "}"

    return GenBooleanAlgebra(meet, join, rel, 0, labels=label)


def from_central_idempotents(ring, subset: Iterable[int] | None = None) -> GenBooleanAlgebra:
    """E(Z(R)) (or a subset closed under the operations) with ef, e+f-ef, e-ef."""
    from gckit.finring import central_idempotents

    elems = sorted(central_idempotents(ring) if subset is None else set(subset))
    pos = {e: i for i, e in enumerate(elems)}
    R = ring

    def meet(e, f):
        return R.times(e, f)

    def join(e, f):
        return R.minus(R.plus(e, f), R.times(e, f))

    def rel(e, f):
        return R.minus(e, R.times(e, f))

    try:
        tables = [[[pos[op(e, f)] for f in elems] for e in elems] for op in (meet, join, rel)]
    except KeyError as exc:
        raise ValueError(f"subset not closed under Boolean operations: {exc}") from None
    return GenBooleanAlgebra(*tables, pos[R.zero], elements=elems, labels=lambda i: R.label(elems[i]))


def generated_subalgebra(ring, generators: Iterable[int]) -> GenBooleanAlgebra:
    """Smallest generalized Boolean algebra of central idempotents containing the generators."""
    R = ring
    found = {R.zero} | set(int(g) for g in generators)
    while True:
        new = set(found)
        for e in found:
            for f in found:
                ef = R.times(e, f)
                new.add(ef)
                new.add(R.minus(e, ef))
                new.add(R.minus(R.plus(e, f), ef))
        if new == found:
            break
        found = new
    return from_central_idempotents(ring, found)


# ---------------------------------------------------------------- filters

def is_filter(B: GenBooleanAlgebra, F) -> bool:
    F = frozenset(F)
    if not F or B.zero in F:
        return False
    for a in F:
        if not B.up(a) <= F:
            return False
        for b in F:
            if B.m(a, b) not in F:
                return False
    return True


def filter_minimum(B, F):
    m = B.top()
    for a in F:
        m = B.m(m, a)
    return m


def all_filters(B: GenBooleanAlgebra):
    """Proper filters. In a finite algebra each filter contains the meet of its
    members, so every filter is the up-set of a non-zero element."""
    if B._filters is None:
        out = {B.up(a) for a in range(B.n) if a != B.zero}
        B._filters = sorted(out, key=lambda F: (len(F), sorted(F)))
    return list(B._filters)


def all_filters_bruteforce(B: GenBooleanAlgebra):
    """Subset enumeration; only for tiny algebras."""
    if B.n > 16:
        raise ValueError("brute-force filter enumeration is limited to 16 elements")
    out = []
    for mask in range(1, 1 << B.n):
        F = frozenset(i for i in range(B.n) if mask >> i & 1)
        if is_filter(B, F):
            out.append(F)
    return sorted(out, key=lambda F: (len(F), sorted(F)))


def is_ultrafilter(B: GenBooleanAlgebra, F) -> bool:
    """Every a outside F is disjoint from some member of F."""
    F = frozenset(F)
    crit = all(any(B.m(a, b) == B.zero for b in F) for a in range(B.n) if a not in F)
    maximal = is_filter(B, F) and not any(F < G for G in all_filters(B))
    assert crit == maximal, f"ultrafilter criteria disagree on {sorted(F)}"
    return crit


def ultrafilters(B: GenBooleanAlgebra):
    return [F for F in all_filters(B) if is_ultrafilter(B, F)]


def extend_to_ultrafilter(B: GenBooleanAlgebra, F, a) -> frozenset:
    """An ultrafilter containing F and a.

    The filter generated by F and a is the up-set of a meet min(F); the result
    is the up-set of the lowest-index atom below that element.
    """
    F = frozenset(F)
    for b in sorted(F):
        if B.m(a, b) == B.zero:
            raise Incompatible(f"{B.label(a)} meets {B.label(b)} in zero", witness=(a, b))
    if not F:
        raise ValueError("filters are non-empty")
    low = B.m(a, filter_minimum(B, F))
    atom = next(x for x in B.atoms() if B.leq(x, low))
    U = B.up(atom)
    assert F <= U and a in U and is_ultrafilter(B, U)
    return U


# ---------------------------------------------------------------- characters

def is_character(B: GenBooleanAlgebra, lam) -> bool:
    lam = np.array(lam, dtype=np.int8)
    if lam.shape != (B.n,) or lam[B.zero] != 0 or not lam.any():
        return False
    x, y = lam[:, None], lam[None, :]
    return bool((lam[B.meet] == (x & y)).all() and (lam[B.join] == (x | y)).all()
                and (lam[B.relcomp] == (x & (1 - y))).all())


def _characters_search(B):
    """Backtracking over 0/1 assignments in index order; independent of filters."""
    n = B.n
    out = []
    lam = [None] * n

    def consistent(k):
        for a in range(k + 1):
            for b in range(k + 1):
                for c, val in ((B.m(a, b), lam[a] & lam[b]), (B.j(a, b), lam[a] | lam[b]),
                               (B.minus(a, b), lam[a] & (1 - lam[b]))):
                    if c <= k and lam[c] != val:
                        return False
        return True

    def rec(k):
        if k == n:
            if any(lam):
                out.append(tuple(lam))
            return
        for v in ((0,) if k == B.zero else (0, 1)):
            lam[k] = v
            if consistent(k):
                rec(k + 1)
        lam[k] = None

    rec(0)
    return out


def characters(B: GenBooleanAlgebra):
    """All characters, ordered by the atom they are supported above."""
    found = _characters_search(B)
    ufs = ultrafilters(B)
    ones = [frozenset(i for i, v in enumerate(lam) if v) for lam in found]
    assert len(set(ones)) == len(ones) and set(ones) == set(ufs), "characters and ultrafilters disagree"
    by_atom = []
    for x in B.atoms():
        lam = tuple(1 if B.leq(x, a) else 0 for a in range(B.n))
        assert lam in found
        by_atom.append(lam)
    assert len(by_atom) == len(found)
    return by_atom


def character_of_atom(B: GenBooleanAlgebra, atom) -> tuple:
    return tuple(1 if B.leq(atom, a) else 0 for a in range(B.n))


def separate(B: GenBooleanAlgebra, a, b) -> tuple:
    """A character with lam(a) = 1 and lam(b) = 0."""
    if B.leq(a, b):
        raise NotSeparable(f"{B.label(a)} <= {B.label(b)}", witness=(a, b))
    d = B.minus(a, b)
    U = extend_to_ultrafilter(B, B.up(d), d)
    lam = tuple(1 if i in U else 0 for i in range(B.n))
    assert lam[a] == 1 and lam[b] == 0
    return lam


def stone_set(B: GenBooleanAlgebra, a, chars=None) -> frozenset:
    """D(a): indices of the characters taking the value 1 at a."""
    chars = characters(B) if chars is None else chars
    return frozenset(i for i, lam in enumerate(chars) if lam[a])


def stone_map_problem(B: GenBooleanAlgebra):
    """None if a -> D(a) is an injective lattice map preserving relative complements."""
    chars = characters(B)
    D = [stone_set(B, a, chars) for a in range(B.n)]
    if len(set(D)) != B.n:
        return ("not injective",)
    for a in range(B.n):
        for b in range(B.n):
            if D[B.m(a, b)] != D[a] & D[b]:
                return ("meet", a, b)
            if D[B.j(a, b)] != D[a] | D[b]:
                return ("join", a, b)
            if D[B.minus(a, b)] != D[a] - D[b]:
                return ("relcomp", a, b)
    if set(D) != {frozenset(s) for k in range(len(chars) + 1)
                  for s in itertools.combinations(range(len(chars)), k)}:
        return ("not surjective",)
    return None


def boolean_facts_problem(B: GenBooleanAlgebra):
    """Exhaustive check of extension, the ultrafilter criterion and separation.

    Returns None, or a tuple naming the failing clause and its witness.
    """
    filters = all_filters(B)
    for F in filters:
        for a in range(B.n):
            if a in F or any(B.m(a, b) == B.zero for b in F):
                continue
            U = extend_to_ultrafilter(B, F, a)
            if not (F <= U and a in U and is_ultrafilter(B, U)):
                return ("extension", sorted(F), a)
    for F in filters:
        crit = all(any(B.m(a, b) == B.zero for b in F) for a in range(B.n) if a not in F)
        maximal = not any(F < G for G in filters)
        if crit != maximal:
            return ("criterion", sorted(F))
    for a in range(B.n):
        for b in range(B.n):
            if not B.leq(a, b):
                lam = separate(B, a, b)
                if not (is_character(B, lam) and lam[a] == 1 and lam[b] == 0):
                    return ("separation", a, b)
    return None
