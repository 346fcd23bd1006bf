"""Finite rings and modules stored as addition/multiplication tables.

Rings need not be unital or commutative. Elements are dense indices; the
additive identity is detected from the table when not given.
"""
from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from gckit import kernels
from gckit.config import check_size
from gckit.errors import NotAHomomorphism, NotAModule, NotAnIdeal, NotARing

EXHAUSTIVE_LIMIT = 1024
SAMPLE_TRIPLES = 20000


def _sampled_compat(mul, act, rng):
    n, m = mul.shape[0], act.shape[1]
    a = rng.integers(0, n, SAMPLE_TRIPLES)
    b = rng.integers(0, n, SAMPLE_TRIPLES)
    c = rng.integers(0, m, SAMPLE_TRIPLES)
    bad = np.flatnonzero(act[mul[a, b], c] != act[a, act[b, c]])
    if len(bad):
        i = bad[0]
        return (int(a[i]), int(b[i]), int(c[i]))
    return None


def compat_check(mul, act):
    """Exhaustive (a b) c = a (b c) style check, sampled on big carriers."""
    if mul.shape[0] <= EXHAUSTIVE_LIMIT and act.shape[1] <= EXHAUSTIVE_LIMIT:
        return kernels.compat_witness(mul, act)
    return _sampled_compat(np.asarray(mul), np.asarray(act), np.random.default_rng(0))


def linear_check(act, add):
    if act.shape[0] <= EXHAUSTIVE_LIMIT and add.shape[0] <= EXHAUSTIVE_LIMIT:
        return kernels.linear_witness(act, add)
    rng = np.random.default_rng(1)
    r = rng.integers(0, act.shape[0], SAMPLE_TRIPLES)
    x = rng.integers(0, add.shape[0], SAMPLE_TRIPLES)
    y = rng.integers(0, add.shape[0], SAMPLE_TRIPLES)
    bad = np.flatnonzero(act[r, add[x, y]] != add[act[r, x], act[r, y]])
    return None if not len(bad) else (int(r[bad[0]]), int(x[bad[0]]), int(y[bad[0]]))


def additive_check(act, add_src, add_tgt):
    if add_src.shape[0] <= EXHAUSTIVE_LIMIT and act.shape[1] <= EXHAUSTIVE_LIMIT:
        return kernels.additive_witness(act, add_src, add_tgt)
    rng = np.random.default_rng(2)
    r = rng.integers(0, add_src.shape[0], SAMPLE_TRIPLES)
    s = rng.integers(0, add_src.shape[0], SAMPLE_TRIPLES)
    x = rng.integers(0, act.shape[1], SAMPLE_TRIPLES)
    bad = np.flatnonzero(act[add_src[r, s], x] != add_tgt[act[r, x], act[s, x]])
    return None if not len(bad) else (int(r[bad[0]]), int(s[bad[0]]), int(x[bad[0]]))


def abelian_group_problem(add, zero):
    """None if add is an abelian group table with identity zero, else (tag, witness)."""
    n = add.shape[0]
    idx = np.arange(n)
    if not (add[zero] == idx).all():
        return "Zero", zero
    if not (add == add.T).all():
        a, b = np.argwhere(add != add.T)[0]
        return "AddComm", (int(a), int(b))
    has_neg = (add == zero).any(axis=1)
    if not has_neg.all():
        return "Neg", int(np.flatnonzero(~has_neg)[0])
    w = compat_check(add, add)
    if w is not None:
        return "AddAssoc", w
    return None


def _table(t, n=None):
    t = np.array(t, dtype=np.int32)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("tables must be square")
    if n is not None and t.shape[0] != n:
        raise ValueError("table size mismatch")
    k = t.shape[0]
    if k and (t.min() < 0 or t.max() >= k):
        raise ValueError("table entries out of range")
    return t


def _find_zero(add):
    idx = np.arange(add.shape[0])
    for z in range(add.shape[0]):
        if (add[z] == idx).all():
            return z
    raise NotARing("Zero", "no additive identity")


class FiniteRing:
    def __init__(self, add, mul, zero=None, one=None, labels=None, check=True, name=None):
        add = _table(add)
        n = add.shape[0]
        if n == 0:
            raise NotARing("Zero", "empty carrier")
        check_size(n, "ring")
        mul = _table(mul, n)
        self.n = n
        self.add = add
        self.mul = mul
        self.zero = _find_zero(add) if zero is None else int(zero)
        self.name = name
        if check:
            self._validate()
        eq = add == self.zero
        self.neg = np.argmax(eq, axis=1).astype(np.int32)
        idx = np.arange(n)
        ones = [e for e in range(n) if (mul[e] == idx).all() and (mul[:, e] == idx).all()]
        found = ones[0] if ones else None
        if one is not None and int(one) != found:
            raise NotARing("One", f"{one} is not a two-sided identity", witness=one)
        self.one = found
        for t in (self.add, self.mul, self.neg):
            t.setflags(write=False)
        self._labels = labels
        self._a = add.tolist()
        self._m = mul.tolist()

    def _validate(self):
        p = abelian_group_problem(self.add, self.zero)
        if p is not None:
            raise NotARing(p[0], witness=p[1])
        w = compat_check(self.mul, self.mul)
        if w is not None:
            raise NotARing("MulAssoc", f"(ab)c != a(bc) at {w}", witness=w)
        w = linear_check(self.mul, self.add)
        if w is not None:
            raise NotARing("LeftDistrib", f"a(b+c) != ab+ac at {w}", witness=w)
        w = additive_check(self.mul, self.add, self.add)
        if w is not None:
            raise NotARing("RightDistrib", f"(a+b)c != ac+bc at {w}", witness=w)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteRing({self.name or ''} n={self.n})"

    def plus(self, a, b):
        return self._a[a][b]

    def times(self, a, b):
        return self._m[a][b]

    def minus(self, a, b):
        return self._a[a][int(self.neg[b])]

    def sum(self, xs: Iterable[int]):
        acc = self.zero
        for x in xs:
            acc = self._a[acc][x]
        return acc

    def label(self, i):
        if self._labels is None:
            return str(i)
        if callable(self._labels):
            return self._labels(i)
        return str(self._labels[i])

    def labels(self):
        return [self.label(i) for i in range(self.n)]

    def is_unital(self):
        return self.one is not None

    def is_commutative(self):
        return bool((self.mul == self.mul.T).all())

    def is_central(self, a):
        return bool((self.mul[a] == self.mul[:, a]).all())

    def elements(self):
        return range(self.n)


# ---------------------------------------------------------------- constructors

def zn(n: int) -> FiniteRing:
    idx = np.arange(n)
    return FiniteRing((idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n,
                      zero=0, name=f"Z{n}")


def null_ring(n: int) -> FiniteRing:
    """Cyclic group of order n with zero multiplication."""
    idx = np.arange(n)
    return FiniteRing((idx[:, None] + idx[None, :]) % n, np.zeros((n, n), dtype=np.int32),
                      zero=0, name=f"null{n}")


def _radix_decode(n, sizes):
    """Rows of component indices, first component most significant."""
    out = np.zeros((n, len(sizes)), dtype=np.int64)
    rest = np.arange(n)
    for j in range(len(sizes) - 1, -1, -1):
        out[:, j] = rest % sizes[j]
        rest = rest // sizes[j]
    return out


def _radix_encode(comps, sizes):
    code = np.zeros(comps.shape[:-1], dtype=np.int64)
    for j, k in enumerate(sizes):
        code = code * k + comps[..., j]
    return code


def product(*rings: FiniteRing) -> FiniteRing:
    sizes = [R.n for R in rings]
    n = int(np.prod(sizes)) if sizes else 1
    check_size(n, "product ring")
    dec = _radix_decode(n, sizes)
    add = np.zeros((n, n, len(rings)), dtype=np.int64)
    mul = np.zeros_like(add)
    for j, R in enumerate(rings):
        add[:, :, j] = R.add[dec[:, j][:, None], dec[:, j][None, :]]
        mul[:, :, j] = R.mul[dec[:, j][:, None], dec[:, j][None, :]]
    zero = int(_radix_encode(np.array([R.zero for R in rings]), sizes))

    def label(i):
        return "(" + ",".join(R.label(int(c)) for R, c in zip(rings, dec[i])) + ")"

    name = "x".join(R.name or "?" for R in rings)
    P = FiniteRing(_radix_encode(add, sizes), _radix_encode(mul, sizes), zero=zero,
                   labels=label, check=False, name=name)
    P.factors = tuple(rings)
    P.component = lambda i, j: int(dec[i, j])
    P.encode = lambda comps: int(_radix_encode(np.array(comps), sizes))
    return P


def functions(k: int, R: FiniteRing) -> FiniteRing:
    """Ring of all maps from a k-point set into R, pointwise operations."""
    return product(*([R] * k))


def matrix_ring(p: int, dim: int, upper: bool = False) -> FiniteRing:
    slots = [(i, j) for i in range(dim) for j in range(dim) if not upper or i <= j]
    elems = []
    for vals in itertools.product(range(p), repeat=len(slots)):
        M = np.zeros((dim, dim), dtype=np.int64)
        for (i, j), v in zip(slots, vals):
            M[i, j] = v
        elems.append(M)
    check_size(len(elems), "matrix ring")
    index = {M.tobytes(): k for k, M in enumerate(elems)}
    n = len(elems)
    add = np.zeros((n, n), dtype=np.int32)
    mul = np.zeros((n, n), dtype=np.int32)
    for a, A in enumerate(elems):
        for b, B in enumerate(elems):
            add[a, b] = index[((A + B) % p).tobytes()]
            mul[a, b] = index[((A @ B) % p).tobytes()]

    def label(i):
        return "[" + ",".join("[" + ",".join(str(int(v)) for v in row) + "]" for row in elems[i]) + "]"

    kind = "UT" if upper else "M"
    R = FiniteRing(add, mul, zero=0, labels=label, name=f"{kind}{dim}(Z{p})")
    R.matrices = tuple(elems)
    return R


def field4() -> FiniteRing:
    """GF(4) as pairs (a, b) = a + b w with w^2 = w + 1."""
    elems = list(itertools.product(range(2), repeat=2))
    idx = {e: i for i, e in enumerate(elems)}

    def m(x, y):
        a, b = x
        c, d = y
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd (w + 1)
        return ((a * c + b * d) % 2, (a * d + b * c + b * d) % 2)

    add = [[idx[((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)] for y in elems] for x in elems]
    mul = [[idx[m(x, y)] for y in elems] for x in elems]
    return FiniteRing(add, mul, zero=0, labels=["0", "1", "w", "w+1"], name="F4")


def dual_numbers(p: int) -> FiniteRing:
    """Z_p[x]/(x^2)."""
    elems = list(itertools.product(range(p), repeat=2))
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[((x[0] + y[0]) % p, (x[1] + y[1]) % p)] for y in elems] for x in elems]
    mul = [[idx[((x[0] * y[0]) % p, (x[0] * y[1] + x[1] * y[0]) % p)] for y in elems] for x in elems]
    return FiniteRing(add, mul, zero=0, labels=[f"{a}+{b}x" for a, b in elems], name=f"Z{p}[x]/x2")


def from_tables(add, mul, zero=None, one=None, labels=None) -> FiniteRing:
    return FiniteRing(add, mul, zero=zero, one=one, labels=labels)


# ---------------------------------------------------------------- elements

def idempotents(R: FiniteRing):
    return [e for e in range(R.n) if R.times(e, e) == e]


def central_idempotents(R: FiniteRing):
    return [e for e in idempotents(R) if R.is_central(e)]


def center(R: FiniteRing):
    return [a for a in range(R.n) if R.is_central(a)]


def additive_closure(R: FiniteRing, generators: Iterable[int]) -> frozenset:
    """Smallest additive subgroup containing the generators."""
    gens = sorted(set(int(g) for g in generators))
    members = {R.zero}
    frontier = [R.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = R.plus(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def subring_closure(R: FiniteRing, generators: Iterable[int]) -> frozenset:
    """Smallest subset with 0 and the generators closed under + and *."""
    members = [R.zero]
    seen = {R.zero}

    def push(z):
        if z not in seen:
            seen.add(z)
            members.append(z)

    for g in generators:
        push(int(g))
    i = 0
    while i < len(members):
        x = members[i]
        for y in members[: i + 1]:
            push(R.plus(x, y))
            push(R.times(x, y))
            push(R.times(y, x))
        i += 1
    return frozenset(members)


def corner(R: FiniteRing, e: int) -> frozenset:
    """eRe."""
    return frozenset(R.times(R.times(e, r), e) for r in range(R.n))


def left_multiples(R: FiniteRing, e: int) -> frozenset:
    """Re."""
    return frozenset(R.times(r, e) for r in range(R.n))


def right_multiples(R: FiniteRing, e: int) -> frozenset:
    """eR."""
    return frozenset(R.times(e, r) for r in range(R.n))


def has_local_units(R: FiniteRing, E: Iterable[int]) -> bool:
    E = sorted(set(E))
    corners = {e: corner(R, e) for e in E}
    covered = set().union(*corners.values()) if E else set()
    if len(covered) != R.n:
        return False
    for e in E:
        for f in E:
            need = corners[e] | corners[f]
            if not any(need <= corners[g] for g in E):
                return False
    return True


def unit_of(R: FiniteRing, members: Iterable[int]):
    """The identity element of the subset (as a ring in its own right), or None."""
    members = sorted(members)
    for u in members:
        if all(R.times(u, x) == x and R.times(x, u) == x for x in members):
            return u
    return None


# ---------------------------------------------------------------- ideals

class RingIdeal:
    def __init__(self, parent: FiniteRing, members: Iterable[int]):
        members = frozenset(int(m) for m in members)
        R = parent
        if R.zero not in members:
            raise NotAnIdeal("ideal must contain zero")
        for a in members:
            if int(R.neg[a]) not in members:
                raise NotAnIdeal("not closed under negation", witness=a)
            for b in members:
                if R.plus(a, b) not in members:
                    raise NotAnIdeal("not closed under addition", witness=(a, b))
            for r in range(R.n):
                if R.times(r, a) not in members or R.times(a, r) not in members:
                    raise NotAnIdeal("not closed under multiplication by the ring", witness=(r, a))
        self.parent = parent
        self.members = members

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        return isinstance(other, RingIdeal) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def unit(self):
        return unit_of(self.parent, self.members)


def is_ideal(R: FiniteRing, members) -> bool:
    try:
        RingIdeal(R, members)
    except NotAnIdeal:
        return False
    return True


def ideal_generated(R: FiniteRing, generators: Iterable[int]) -> RingIdeal:
    members = additive_closure(R, generators)
    while True:
        grown = set(members)
        for a in members:
            for r in range(R.n):
                grown.add(R.times(r, a))
                grown.add(R.times(a, r))
        grown = additive_closure(R, grown)
        if grown == members:
            return RingIdeal(R, members)
        members = grown


def ideal_sum(I: RingIdeal, J: RingIdeal) -> RingIdeal:
    R = I.parent
    return RingIdeal(R, additive_closure(R, I.members | J.members))


def ideals(R: FiniteRing):
    """All two-sided ideals: sums of principal ideals, sorted by size then members."""
    principal = {ideal_generated(R, [a]).members for a in range(R.n)}
    found = set(principal)
    frontier = set(principal)
    while frontier:
        new = set()
        for I in frontier:
            for J in principal:
                K = additive_closure(R, I | J)
                if K not in found:
                    new.add(K)
        found |= new
        frontier = new
    return [RingIdeal(R, m) for m in sorted(found, key=lambda s: (len(s), sorted(s)))]


def quotient_ring(R: FiniteRing, I: RingIdeal):
    """R/I with lowest-index coset representatives, plus the projection."""
    if not isinstance(I, RingIdeal):
        I = RingIdeal(R, I)
    members = np.array(sorted(I.members), dtype=np.int64)
    label = np.full(R.n, -1, dtype=np.int64)
    reps = []
    for a in range(R.n):
        if label[a] < 0:
            label[R.add[a, members]] = len(reps)
            reps.append(a)
    reps_a = np.array(reps)
    add = label[R.add[reps_a[:, None], reps_a[None, :]]]
    mul = label[R.mul[reps_a[:, None], reps_a[None, :]]]
    Q = FiniteRing(add, mul, zero=int(label[R.zero]),
                   labels=lambda i: "[" + R.label(reps[i]) + "]", name=f"{R.name or 'R'}/I")
    Q.reps = tuple(reps)
    proj = RingHom(R, Q, label)
    return Q, proj


# ---------------------------------------------------------------- homomorphisms

class RingHom:
    def __init__(self, source: FiniteRing, target: FiniteRing, mapping, check=True):
        m = np.array(mapping, dtype=np.int32)
        if m.shape != (source.n,) or (source.n and (m.min() < 0 or m.max() >= target.n)):
            raise NotAHomomorphism("map must be total on the source and land in the target")
        self.source = source
        self.target = target
        self.map = m
        m.setflags(write=False)
        if check:
            w = kernels.hom_witness(m, source.add, target.add)
            if w is not None:
                raise NotAHomomorphism(f"not additive at {w}", witness=("add",) + w)
            w = kernels.hom_witness(m, source.mul, target.mul)
            if w is not None:
                raise NotAHomomorphism(f"not multiplicative at {w}", witness=("mul",) + w)

    def __call__(self, a):
        return int(self.map[a])

    def image(self):
        return frozenset(int(x) for x in self.map)

    def kernel(self):
        return frozenset(int(a) for a in np.flatnonzero(self.map == self.target.zero))

    def injective(self):
        return len(set(self.map.tolist())) == self.source.n

    def surjective(self):
        return len(self.image()) == self.target.n

    def is_unital(self):
        return self.source.one is not None and self.target.one is not None and \
            self(self.source.one) == self.target.one

    def then(self, other: "RingHom") -> "RingHom":
        return RingHom(self.source, other.target, other.map[self.map], check=False)

    def inverse(self) -> "RingHom":
        if not is_isomorphism(self):
            raise NotAHomomorphism("only bijective homomorphisms can be inverted")
        inv = np.empty(self.target.n, dtype=np.int32)
        inv[self.map] = np.arange(self.source.n)
        return RingHom(self.target, self.source, inv, check=False)


def is_isomorphism(h: RingHom) -> bool:
    return h.injective() and h.surjective()


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, np.arange(R.n), check=False)


def ring_generators(R: FiniteRing):
    """Greedy generating set, scanning elements in index order."""
    gens = []
    span = frozenset([R.zero])
    for a in range(R.n):
        if a not in span:
            gens.append(a)
            span = subring_closure(R, gens)
            if len(span) == R.n:
                break
    return gens


def _extend(R, T, known, injective):
    """Close a partial map under + and *; None on conflict."""
    known = dict(known)
    order = list(known)
    used = {}
    for x, y in known.items():
        if injective and used.setdefault(y, x) != x:
            return None
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in order[:i]:
            fx, fy = known[x], known[y]
            for z, fz in ((R.plus(x, y), T.plus(fx, fy)), (R.times(x, y), T.times(fx, fy)),
                          (R.times(y, x), T.times(fy, fx))):
                prev = known.get(z)
                if prev is None:
                    if injective and used.setdefault(fz, z) != z:
                        return None
                    known[z] = fz
                    order.append(z)
                elif prev != fz:
                    return None
    return known


def enumerate_homs(R: FiniteRing, T: FiniteRing, injective=False):
    """All ring homomorphisms R -> T (not required to be unital), sorted by map."""
    gens = ring_generators(R)
    out = []

    def rec(k, known):
        if k == len(gens):
            if len(known) == R.n:
                out.append(tuple(known[a] for a in range(R.n)))
            return
        for y in range(T.n):
            nxt = dict(known)
            g = gens[k]
            if g in nxt and nxt[g] != y:
                continue
            nxt[g] = y
            ext = _extend(R, T, nxt, injective)
            if ext is not None:
                rec(k + 1, ext)

    base = _extend(R, T, {R.zero: T.zero}, injective)
    rec(0, base)
    return [RingHom(R, T, m) for m in sorted(set(out))]


def find_isomorphism(R: FiniteRing, T: FiniteRing):
    if R.n != T.n:
        return None
    for h in enumerate_homs(R, T, injective=True):
        if is_isomorphism(h):
            return h
    return None


# ---------------------------------------------------------------- modules

class FiniteModule:
    """Left module over a FiniteRing: act[r][m] is r.m."""

    def __init__(self, ring: FiniteRing, add, act, zero=None, labels=None, check=True):
        add = _table(add)
        act = np.array(act, dtype=np.int32)
        m = add.shape[0]
        if act.shape != (ring.n, m):
            raise NotAModule("Shape", "action table must be |R| x |M|")
        check_size(m, "module")
        self.ring = ring
        self.n = m
        self.add = add
        self.act = act
        self.zero = _find_zero(add) if zero is None else int(zero)
        if check:
            p = abelian_group_problem(add, self.zero)
            if p is not None:
                raise NotAModule(p[0], witness=p[1])
            w = linear_check(act, add)
            if w is not None:
                raise NotAModule("Linear", f"r(m+n) != rm+rn at {w}", witness=w)
            w = additive_check(act, ring.add, add)
            if w is not None:
                raise NotAModule("Additive", f"(r+s)m != rm+sm at {w}", witness=w)
            w = compat_check(ring.mul, act)
            if w is not None:
                raise NotAModule("Compat", f"(rs)m != r(sm) at {w}", witness=w)
        self.neg = np.argmax(add == self.zero, axis=1).astype(np.int32)
        self._labels = labels
        for t in (self.add, self.act, self.neg):
            t.setflags(write=False)

    def __len__(self):
        return self.n

    def label(self, i):
        if self._labels is None:
            return str(i)
        if callable(self._labels):
            return self._labels(i)
        return str(self._labels[i])

    def is_unitary(self):
        """RM = M, i.e. every m is a sum of products r.m'."""
        products = set(self.act.ravel().tolist())
        span = set([self.zero])
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in products:
                    y = int(self.add[x, g])
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(span) == self.n

    def submodule(self, members):
        """Restrict to a submodule given by its member indices; returns (module, embedding)."""
        members = sorted(int(x) for x in members)
        pos = {x: i for i, x in enumerate(members)}
        try:
            add = [[pos[int(self.add[a, b])] for b in members] for a in members]
            act = [[pos[int(self.act[r, a])] for a in members] for r in range(self.ring.n)]
        except KeyError as exc:
            raise NotAModule("Submodule", "subset not closed", witness=int(exc.args[0])) from None
        sub = FiniteModule(self.ring, add, act, zero=pos[self.zero],
                           labels=[self.label(x) for x in members], check=False)
        return sub, tuple(members)


def regular_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, R.add, R.mul, zero=R.zero, labels=R.label, check=False)


def is_module_hom(M: FiniteModule, N: FiniteModule, f) -> bool:
    f = np.asarray(f)
    if (f[M.add] != N.add[f[:, None], f[None, :]]).any():
        return False
    return bool((f[M.act] == N.act[:, f]).all())
