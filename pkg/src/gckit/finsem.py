"""Finite inverse semigroups given by multiplication tables."""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from gckit import kernels
from gckit.errors import NoUniquePseudoInverse, NotAssociative, SizeLimit


class InverseSemigroup:
    """Table-driven inverse semigroup on 0..n-1.

    star and the idempotents are derived; construction fails unless the table
    is associative and every element has exactly one pseudo-inverse.
    """

    def __init__(self, mul, labels: Sequence | None = None):
        mul = np.array(mul, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        n = mul.shape[0]
        if n and (mul.min() < 0 or mul.max() >= n):
            raise ValueError("table entries out of range")
        w = kernels.compat_witness(mul, mul)
        if w is not None:
            raise NotAssociative(f"(s t) u != s (t u) at {w}", witness=w)
        star = []
        for s in range(n):
            # t with s t s = s and t s t = t
            sts = mul[mul[s], s]
            tst = mul[mul[:, s], np.arange(n)]
            cands = np.flatnonzero((sts == s) & (tst == np.arange(n)))
            if len(cands) != 1:
                raise NoUniquePseudoInverse(
                    f"element {s} has {len(cands)} pseudo-inverses", witness=(s, cands.tolist())
                )
            star.append(int(cands[0]))
        mul.setflags(write=False)
        self.n = n
        self.mul = mul
        self.star = tuple(star)
        self.idempotents = tuple(e for e in range(n) if mul[e, e] == e)
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
        self._m = mul.tolist()
        for e, f in itertools.combinations(self.idempotents, 2):
            assert self._m[e][f] == self._m[f][e], "idempotents must commute"

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"InverseSemigroup(n={self.n})"

    def __call__(self, s, t):
        return self._m[s][t]

    def is_idempotent(self, s):
        return self._m[s][s] == s

    def dom(self, s):
        """The idempotent s*s."""
        return self._m[self.star[s]][s]

    def ran(self, s):
        """The idempotent ss*."""
        return self._m[s][self.star[s]]

    def leq(self, s, t):
        m = self._m
        left = m[m[s][self.star[s]]][t] == s
        right = m[t][m[self.star[s]][s]] == s
        assert left == right, f"order characterisations disagree at {(s, t)}"
        return left

    def down(self, s):
        return [u for u in range(self.n) if self.leq(u, s)]

    def is_group(self):
        return len(self.idempotents) == 1

    def zero(self):
        """Index of the zero element, or None."""
        for z in range(self.n):
            if all(self._m[z][s] == z and self._m[s][z] == z for s in range(self.n)):
                return z
        return None

    def index(self, label):
        return self.labels.index(str(label))


def build(mul_table, labels=None) -> InverseSemigroup:
    return InverseSemigroup(mul_table, labels)


def leq(S: InverseSemigroup, s, t) -> bool:
    return S.leq(s, t)


def _is_hom_direct(phi, S, T):
    return kernels.hom_witness(np.asarray(phi), S.mul, T.mul) is None


def _is_hom_by_criterion(phi, S, T):
    for s in range(S.n):
        for t in range(S.n):
            if S.leq(s, t) and not T.leq(phi[s], phi[t]):
                return False
    for e in S.idempotents:
        for f in S.idempotents:
            if phi[S(e, f)] != T(phi[e], phi[f]):
                return False
    for s in range(S.n):
        for t in range(S.n):
            if S.dom(s) == S.ran(t) and phi[S(s, t)] != T(phi[s], phi[t]):
                return False
    return True


def is_homomorphism(phi, source: InverseSemigroup, target: InverseSemigroup) -> bool:
    """Multiplicativity checked directly and through the order criterion."""
    phi = [int(x) for x in phi]
    if len(phi) != source.n or any(not 0 <= x < target.n for x in phi):
        raise ValueError("map must be total on the source and land in the target")
    direct = _is_hom_direct(phi, source, target)
    crit = _is_hom_by_criterion(phi, source, target)
    assert direct == crit, f"homomorphism routes disagree on {phi}"
    return direct


def partial_bijections(n):
    """All partial bijections of range(n) as tuples with -1 for undefined."""
    out = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(n), k):
                p = [-1] * n
                for x, y in zip(dom, img):
                    p[x] = y
                out.append(tuple(p))
    return out


def compose_partial(s, t):
    """(s t)(x) = s(t(x)): apply t first."""
    return tuple(-1 if y < 0 else s[y] for y in t)


def partial_label(p):
    pairs = [f"{x + 1}>{y + 1}" for x, y in enumerate(p) if y >= 0]
    return "{" + ",".join(pairs) + "}"


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    if n > 4:
        raise SizeLimit(f"I_{n} is too large; n <= 4 supported", witness=n)
    elems = partial_bijections(n)
    index = {p: i for i, p in enumerate(elems)}
    mul = [[index[compose_partial(s, t)] for t in elems] for s in elems]
    S = InverseSemigroup(mul, labels=[partial_label(p) for p in elems])
    S.maps = tuple(elems)
    return S


def cyclic_group(k: int) -> InverseSemigroup:
    return InverseSemigroup([[(a + b) % k for b in range(k)] for a in range(k)],
                            labels=["e"] + [f"g{i}" if k > 2 else "g" for i in range(1, k)])


def chain_semilattice(k: int) -> InverseSemigroup:
    """Chain e_0 > e_1 > ... > e_{k-1} under meet."""
    return InverseSemigroup([[max(a, b) for b in range(k)] for a in range(k)],
                            labels=[f"e{i}" for i in range(k)])
