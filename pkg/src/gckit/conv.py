"""The convolution algebra of compactly supported sections of a G-sheaf of rings.

Elements are tuples `vals` indexed by arrows, vals[g] an element of the stalk
at r(g). When the carrier is small enough it is also materialised as a
FiniteRing whose element index is the little-endian mixed-radix code of vals.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable

import numpy as np

from gckit.config import check_size
from gckit.errors import G1Fails, NotABisection
from gckit.finring import FiniteRing
from gckit.groupoid import as_family, bisection_range, check_bisection, germ_conditions
from gckit.sheaf import GSheafOfRings, restrict_to_units

ROW_BUDGET = 1 << 22


class ConvAlgebra:
    def __init__(self, sheaf: GSheafOfRings):
        self.sheaf = sheaf
        self.G = G = sheaf.base
        self.k = G.n_arrows
        self.rings = tuple(sheaf.stalks[G.r[g]] for g in range(self.k))
        self.sizes = tuple(R.n for R in self.rings)
        places = [1]
        for s in self.sizes[:-1]:
            places.append(places[-1] * s)
        self.places = tuple(places)
        self.size = int(np.prod(self.sizes, dtype=object)) if self.k else 1
        self.fact = tuple(tuple(G.factorizations(g)) for g in range(self.k))
        self.zero = tuple(R.zero for R in self.rings)

    def __repr__(self):
        return f"ConvAlgebra(arrows={self.k}, size={self.size})"

    # ------------------------------------------------------------ encoding
    def code(self, vals) -> int:
        return sum(int(v) * p for v, p in zip(vals, self.places))

    def vals(self, code: int) -> tuple:
        out = []
        for s in self.sizes:
            out.append(code % s)
            code //= s
        return tuple(out)

    def decode_all(self, codes=None):
        codes = np.arange(self.size, dtype=np.int64) if codes is None else np.asarray(codes, np.int64)
        out = np.empty((len(codes), self.k), dtype=np.int64)
        for g, s in enumerate(self.sizes):
            out[:, g] = (codes // self.places[g]) % s
        return out

    def label(self, f) -> str:
        if isinstance(f, (int, np.integer)):
            f = self.vals(int(f))
        terms = [f"{self.rings[g].label(v)}·χ{{{self.G.labels[g]}}}"
                 for g, v in enumerate(f) if v != self.rings[g].zero]
        return " + ".join(terms) if terms else "0"

    # ------------------------------------------------------------ arithmetic
    def add(self, f, g):
        return tuple(R.plus(a, b) for R, a, b in zip(self.rings, f, g))

    def neg(self, f):
        return tuple(int(R.neg[a]) for R, a in zip(self.rings, f))

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def sum(self, fs: Iterable):
        acc = self.zero
        for f in fs:
            acc = self.add(acc, f)
        return acc

    def convolve(self, f, g):
        """(f*g)(c) = sum over c = ab of f(a) alpha_a(g(b))."""
        act = self.sheaf.act
        out = []
        for c in range(self.k):
            R = self.rings[c]
            acc = R.zero
            for a, b in self.fact[c]:
                acc = R.plus(acc, R.times(f[a], act[a][g[b]]))
            out.append(acc)
        h = tuple(out)
        sf, sg = self.support(f), self.support(g)
        assert self.support(h) <= bisection_product_sets(self.G, sf, sg)
        return h

    def support(self, f) -> frozenset:
        return frozenset(g for g, v in enumerate(f) if v != self.rings[g].zero)

    # ------------------------------------------------------------ special elements
    def indicator(self, U):
        U = check_bisection(self.G, U)
        return tuple(self.rings[g].one if g in U else self.rings[g].zero for g in range(self.k))

    def section_indicator(self, s, U):
        """s maps each object of r(U) to an element of its stalk."""
        U = check_bisection(self.G, U)
        s = dict(s)
        if set(s) != set(bisection_range(self.G, U)):
            raise NotABisection("section must be defined exactly on r(U)", witness=sorted(s))
        return tuple(s[self.G.r[g]] if g in U else self.rings[g].zero for g in range(self.k))

    def identity_element(self):
        u = self.indicator(self.G.unit_set)
        return u

    def delta(self, g, a):
        """Single-arrow function with value a at g."""
        return tuple(a if h == g else self.rings[h].zero for h in range(self.k))

    def local_units(self):
        units = sorted(self.G.unit_set)
        out = []
        for r in range(len(units) + 1):
            for U in itertools.combinations(units, r):
                out.append((frozenset(U), self.indicator(U)))
        return out

    def decompose(self, f):
        """f as a sum of schi terms over singleton bisections."""
        terms = [(frozenset([g]), {self.G.r[g]: f[g]}) for g in sorted(self.support(f))]
        assert self.sum(self.section_indicator(s, U) for U, s in terms) == tuple(f)
        return terms

    def embed_diagonal(self, section):
        """Section over objects -> function supported on identity arrows."""
        G = self.G
        out = [R.zero for R in self.rings]
        for x, v in enumerate(section):
            out[G.unit[x]] = v
        return tuple(out)

    def is_diagonal(self, f):
        return self.support(f) <= self.G.unit_set

    # ------------------------------------------------------------ materialised ring
    @cached_property
    def ring(self) -> FiniteRing:
        N = self.size
        check_size(N, "convolution algebra")
        V = self.decode_all()
        places = np.array(self.places, dtype=np.int64)
        add = np.zeros((N, N), dtype=np.int64)
        for g in range(self.k):
            R = self.rings[g]
            add += R.add[V[:, g][:, None], V[:, g][None, :]] * places[g]
        mul = np.zeros((N, N), dtype=np.int64)
        act = [np.array(a, dtype=np.int64) for a in self.sheaf.act]
        moved = {}
        for c in range(self.k):
            for a, b in self.fact[c]:
                moved[(a, b)] = act[a][V[:, b]]
        chunk = max(1, ROW_BUDGET // max(N, 1))
        for lo in range(0, N, chunk):
            rows = slice(lo, min(N, lo + chunk))
            for c in range(self.k):
                R = self.rings[c]
                acc = np.full((rows.stop - rows.start, N), R.zero, dtype=np.int64)
                for a, b in self.fact[c]:
                    term = R.mul[V[rows, a][:, None], moved[(a, b)][None, :]]
                    acc = R.add[acc, term]
                mul[rows] += acc * places[c]
        return FiniteRing(add, mul, zero=self.code(self.zero), labels=self.label,
                          name="Gamma_c")

    def elements(self):
        check_size(self.size, "convolution algebra")
        return [self.vals(c) for c in range(self.size)]

    # ------------------------------------------------------------ centre
    def is_class_function(self, f) -> bool:
        G, act = self.G, self.sheaf.act
        for g in range(self.k):
            R = self.rings[g]
            if f[g] == R.zero:
                continue
            if G.d[g] != G.r[g]:
                return False
            for a in range(R.n):
                if R.times(a, f[g]) != R.times(f[g], act[g][a]):
                    return False
        for g in G.loops():
            x = G.r[g]
            for s in range(self.k):
                if G.r[s] != x:
                    continue
                conj = G.comp[G.comp[G.inv[s]][g]][s]
                if act[s][f[conj]] != f[g]:
                    return False
        return True

    def single_arrow_generators(self):
        """Single-arrow functions a.chi_{g}; they span the algebra additively."""
        return [self.delta(g, a) for g in range(self.k) for a in range(self.sizes[g])]

    def center(self):
        R = self.ring
        gens = np.array(sorted({self.code(f) for f in self.single_arrow_generators()}), dtype=np.int64)
        ok = (R.mul[:, gens] == R.mul[gens, :].T).all(axis=1)
        return [self.vals(int(c)) for c in np.flatnonzero(ok)]

    def class_functions(self):
        return [f for f in self.elements() if self.is_class_function(f)]

    # ------------------------------------------------------------ spanning
    def spans_by(self, S_sub) -> bool:
        S = as_family(self.G, S_sub)
        if not germ_conditions(self.G, S).g1:
            raise G1Fails("family does not cover every arrow")
        gens = set()
        for U in S.bisections:
            pts = sorted(bisection_range(self.G, U))
            stalks = [self.sheaf.stalks[x] for x in pts]
            for vals in itertools.product(*[range(R.n) for R in stalks]):
                gens.add(self.code(self.section_indicator(dict(zip(pts, vals)), U)))
        R = self.ring
        span = np.zeros(R.n, dtype=bool)
        span[R.zero] = True
        frontier = np.array([R.zero])
        gens = np.array(sorted(gens), dtype=np.int64)
        while len(frontier):
            nxt = np.unique(R.add[frontier[:, None], gens[None, :]].ravel())
            nxt = nxt[~span[nxt]]
            span[nxt] = True
            frontier = nxt
        return bool(span.all())


def bisection_product_sets(G, A, B):
    """All composites ab with a in A, b in B (A, B arbitrary arrow sets)."""
    return frozenset(G.comp[a][b] for a in A for b in B if G.comp[a][b] >= 0)


def diagonal_algebra(O: GSheafOfRings) -> ConvAlgebra:
    """Gamma_c of the unit space: sections over objects with pointwise operations."""
    return ConvAlgebra(restrict_to_units(O))
