"""Spectral actions, the skew inverse semigroup ring L/N, and covariant systems.

L elements are integer codes: a little-endian mixed-radix number whose digit
for s is the position of the coefficient inside the sorted member list of D_s.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from gckit import finring
from gckit.boolalg import generated_subalgebra
from gckit.config import SUM_SPACE_FACTOR, check_size, size_limit
from gckit.errors import (NotAHomomorphism, NotAnIdeal, NotCovariant, NotDecomposable,
                          NotSpectral)
from gckit.finring import FiniteRing, RingHom, RingIdeal
from gckit.finsem import InverseSemigroup


def _partial(alpha, n):
    """Normalise a partial map to a length-n list with -1 outside the domain."""
    if isinstance(alpha, dict):
        out = [-1] * n
        for k, v in alpha.items():
            out[int(k)] = int(v)
        return out
    out = [int(v) for v in alpha]
    if len(out) != n:
        raise NotSpectral("Domain", f"partial map must have length {n}")
    return out


class SpectralAction:
    def __init__(self, S: InverseSemigroup, A: FiniteRing, D, alpha, units=None, check=True):
        self.S, self.A = S, A
        try:
            self.D = tuple(d if isinstance(d, RingIdeal) else RingIdeal(A, d) for d in D)
        except NotAnIdeal as exc:
            raise NotSpectral("Ideal", str(exc), witness=exc.witness) from None
        if len(self.D) != S.n or len(alpha) != S.n:
            raise NotSpectral("Domain", "need one ideal and one map per semigroup element")
        self.alpha = tuple(tuple(_partial(a, A.n)) for a in alpha)
        self.members = tuple(tuple(sorted(d.members)) for d in self.D)
        self.units = {}
        for e in S.idempotents:
            u = self.D[e].unit() if units is None else int(units[e] if not isinstance(units, dict)
                                                            else units[e])
            if u is None or not all(A.times(u, x) == x == A.times(x, u) for x in self.D[e].members):
                raise NotSpectral("Unit", f"D_{S.labels[e]} has no unit element", witness=e)
            self.units[e] = u
        if check:
            self._validate()

    def one(self, e):
        return self.units[e]

    def apply(self, s, a):
        v = self.alpha[s][a]
        if v < 0:
            raise NotSpectral("Domain", f"{self.A.label(a)} is outside D_{self.S.labels[self.S.star[s]]}",
                              witness=(s, a))
        return v

    def _validate(self):
        S, A, D, al = self.S, self.A, self.D, self.alpha
        for s in range(S.n):
            dom = {a for a in range(A.n) if al[s][a] >= 0}
            if dom != D[S.star[s]].members:
                raise NotSpectral("Domain", f"alpha_{S.labels[s]} is not defined exactly on D_{{s*}}",
                                  witness=s)
            img = [al[s][a] for a in sorted(dom)]
            if set(img) != D[s].members or len(set(img)) != len(img):
                raise NotSpectral("Domain", f"alpha_{S.labels[s]} is not a bijection onto D_s",
                                  witness=s)
            for a in dom:
                for b in dom:
                    if al[s][A.plus(a, b)] != A.plus(al[s][a], al[s][b]) or \
                            al[s][A.times(a, b)] != A.times(al[s][a], al[s][b]):
                        raise NotSpectral("Hom", f"alpha_{S.labels[s]} is not a ring map",
                                          witness=(s, a, b))
        for e in S.idempotents:
            if any(al[e][a] != a for a in D[e].members):
                raise NotSpectral("Action", f"alpha_{S.labels[e]} is not the identity", witness=e)
        for s in range(S.n):
            for t in range(S.n):
                st = S.mul[s, t]
                comp = [al[s][al[t][a]] if al[t][a] >= 0 and al[s][al[t][a]] >= 0 else -1
                        for a in range(A.n)]
                if comp != list(al[st]):
                    raise NotSpectral("Action", f"alpha_{S.labels[s]} alpha_{S.labels[t]} != "
                                      f"alpha_{S.labels[st]}", witness=(s, t))
        total = finring.additive_closure(A, set().union(*(D[e].members for e in S.idempotents)))
        if len(total) != A.n:
            raise NotSpectral("Degenerate", "the idempotent ideals do not sum to A")
        u = self.units
        for e in S.idempotents:
            for f in S.idempotents:
                if u[S.mul[e, f]] != A.times(u[e], u[f]):
                    raise NotSpectral("Unit", "e -> 1_e is not multiplicative", witness=(e, f))
        for s in range(S.n):
            for e in S.idempotents:
                if S.leq(e, S.dom(s)):
                    ses = S.mul[S.mul[s, e], S.star[s]]
                    if al[s][u[e]] != u[ses]:
                        raise NotSpectral("Unit", "alpha_s(1_e) != 1_{ses*}", witness=(s, e))


def trivial_action(S: InverseSemigroup, A: FiniteRing) -> SpectralAction:
    """Every element acts as the identity of A (A unital)."""
    return SpectralAction(S, A, [range(A.n)] * S.n, [list(range(A.n))] * S.n)


def group_action(S: InverseSemigroup, A: FiniteRing, maps) -> SpectralAction:
    """A group acting by automorphisms maps[g] of a unital ring."""
    return SpectralAction(S, A, [range(A.n)] * S.n, maps)


# ---------------------------------------------------------------- L

class DeltaSum:
    """The ring L = sum of D_s delta_s with the partial-action product."""

    def __init__(self, act: SpectralAction):
        self.act = act
        S, A = act.S, act.A
        self.k = S.n
        self.sizes = tuple(len(m) for m in act.members)
        self.size = int(np.prod(self.sizes, dtype=object))
        check_size(self.size, "L = sum of D_s", limit=size_limit() * SUM_SPACE_FACTOR)
        places = [1]
        for s in self.sizes[:-1]:
            places.append(places[-1] * s)
        self.places = np.array(places, dtype=np.int64)
        self.mem = [np.array(m, dtype=np.int64) for m in act.members]
        self.pos = []
        for m in act.members:
            p = np.full(A.n, -1, dtype=np.int64)
            p[list(m)] = np.arange(len(m))
            self.pos.append(p)
        self.addloc = [p[A.add[np.ix_(m, m)]] for p, m in zip(self.pos, self.mem)]
        self.alpha = [np.array(a, dtype=np.int64) for a in act.alpha]
        self.zero = int(self.encode([[act.A.zero] * self.k])[0]) if self.k else 0

    def decode(self, codes):
        codes = np.atleast_1d(np.asarray(codes, dtype=np.int64))
        return np.stack([(codes // self.places[s]) % self.sizes[s] for s in range(self.k)], axis=1)

    def coeffs(self, codes):
        """Global A-indices of the coefficients, one column per s."""
        loc = self.decode(codes)
        return np.stack([self.mem[s][loc[:, s]] for s in range(self.k)], axis=1)

    def encode(self, coeffs):
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
        out = np.zeros(coeffs.shape[0], dtype=np.int64)
        for s in range(self.k):
            loc = self.pos[s][coeffs[:, s]]
            if (loc < 0).any():
                raise NotSpectral("Closure", f"coefficient outside D_{self.act.S.labels[s]}", witness=s)
            out += loc * self.places[s]
        return out

    def monomial(self, a, s):
        c = [self.act.A.zero] * self.k
        c[s] = a
        return int(self.encode([c])[0])

    def monomials(self):
        """All a delta_s with a in D_s, a nonzero."""
        A = self.act.A
        return [(a, s, self.monomial(a, s)) for s in range(self.k) for a in self.act.members[s]
                if a != A.zero]

    def add(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, np.int64), np.asarray(y, np.int64))
        lx, ly = self.decode(x.ravel()), self.decode(y.ravel())
        out = np.zeros(lx.shape[0], dtype=np.int64)
        for s in range(self.k):
            out += self.addloc[s][lx[:, s], ly[:, s]] * self.places[s]
        return out.reshape(x.shape)

    def neg(self, x):
        A = self.act.A
        c = self.coeffs(x)
        return self.encode(A.neg[c]).reshape(np.shape(x))

    def mul(self, x, y):
        """(a delta_s)(b delta_t) = alpha_s(alpha_{s*}(a) b) delta_{st}, bilinearly."""
        S, A = self.act.S, self.act.A
        x, y = np.broadcast_arrays(np.asarray(x, np.int64), np.asarray(y, np.int64))
        cx, cy = self.coeffs(x.ravel()), self.coeffs(y.ravel())
        acc = np.full_like(cx, A.zero)
        for s in range(self.k):
            back = self.alpha[S.star[s]][cx[:, s]]
            for t in range(self.k):
                st = S.mul[s, t]
                term = self.alpha[s][A.mul[back, cy[:, t]]]
                if (term < 0).any() or (self.pos[st][term] < 0).any():
                    raise NotSpectral("Closure", "product coefficient outside D_st", witness=(s, t))
                acc[:, st] = A.add[acc[:, st], term]
        return self.encode(acc).reshape(x.shape)

    def short_form(self, a, s, b, t):
        """(a delta_s)(b delta_t) via a alpha_s(b 1_{s*s}) delta_{st}."""
        act, S, A = self.act, self.act.S, self.act.A
        c = A.times(a, act.apply(s, A.times(b, act.one(S.dom(s)))))
        return self.monomial(c, S.mul[s, t])

    @cached_property
    def ring(self) -> FiniteRing:
        check_size(self.size, "L = sum of D_s")
        codes = np.arange(self.size, dtype=np.int64)
        add = self.add(codes[:, None], codes[None, :])
        mul = self.mul(codes[:, None], codes[None, :])
        return FiniteRing(add, mul, zero=self.zero, labels=self.label, name="L")

    def label(self, code):
        S, A = self.act.S, self.act.A
        c = self.coeffs([code])[0]
        terms = [f"{A.label(int(c[s]))}δ_{S.labels[s]}" for s in range(self.k) if c[s] != A.zero]
        return " + ".join(terms) if terms else "0"


def build_delta_sum(act: SpectralAction) -> DeltaSum:
    L = DeltaSum(act)
    mons = L.monomials()
    codes = np.array([x for _, _, x in mons], dtype=np.int64)
    prod = L.mul(codes[:, None], codes[None, :])
    for i, (a, s, _) in enumerate(mons):
        for j, (b, t, _) in enumerate(mons):
            if int(prod[i, j]) != L.short_form(a, s, b, t):
                raise AssertionError(f"short form disagrees at {(a, s, b, t)}")
    return L


def relation_generators(L: DeltaSum):
    """a delta_r - a delta_s for r < s and a in D_r nonzero."""
    act, S, A = L.act, L.act.S, L.act.A
    gens = []
    for r in range(S.n):
        for s in range(S.n):
            if r != s and S.leq(r, s):
                assert act.D[r].members <= act.D[s].members
                for a in act.members[r]:
                    if a != A.zero:
                        gens.append(int(L.add(L.monomial(a, r), L.neg(L.monomial(a, s)))))
    return sorted(set(gens))


def build_relations(L: DeltaSum) -> np.ndarray:
    """Additive closure of the generators, as a sorted array of L codes."""
    gens = np.array(relation_generators(L), dtype=np.int64)
    seen = {L.zero}
    frontier = np.array([L.zero], dtype=np.int64)
    while len(frontier) and len(gens):
        nxt = np.unique(L.add(frontier[:, None], gens[None, :]).ravel())
        nxt = np.array([c for c in nxt.tolist() if c not in seen], dtype=np.int64)
        seen.update(nxt.tolist())
        frontier = nxt
    N = np.array(sorted(seen), dtype=np.int64)
    # two-sided ideal on additive generators of N against additive generators of L
    inN = set(seen)
    mons = np.array([x for _, _, x in L.monomials()], dtype=np.int64)
    if len(gens) and len(mons):
        left = L.mul(mons[:, None], gens[None, :]).ravel().tolist()
        right = L.mul(gens[:, None], mons[None, :]).ravel().tolist()
        bad = [c for c in left + right if c not in inN]
        assert not bad, f"N is not an ideal: {L.label(bad[0])}"
    return N


class SkewRing:
    def __init__(self, act: SpectralAction):
        self.act = act
        self.delta_sum = L = build_delta_sum(act)
        self.relations = build_relations(L)
        coset = np.full(L.size, -1, dtype=np.int64)
        reps = []
        for x in range(L.size):
            if coset[x] < 0:
                coset[L.add(x, self.relations)] = len(reps)
                reps.append(x)
        self.coset = coset
        self.reps = np.array(reps, dtype=np.int64)
        q = len(reps)
        check_size(q, "skew ring")
        r = self.reps
        add = coset[L.add(r[:, None], r[None, :])]
        mul = coset[L.mul(r[:, None], r[None, :])]
        self.ring = FiniteRing(add, mul, zero=int(coset[L.zero]), labels=self.label, name="A⋊S")
        # projection L -> L/N is a ring map: check on all pairs of monomials
        mons = np.array([x for _, _, x in L.monomials()] + [L.zero], dtype=np.int64)
        prod = coset[L.mul(mons[:, None], mons[None, :])]
        assert (prod == self.ring.mul[coset[mons][:, None], coset[mons][None, :]]).all()

    def label(self, i):
        return "[" + self.delta_sum.label(int(self.reps[i])) + "]"

    def project(self, code):
        return int(self.coset[code])

    def element(self, terms):
        """Coset of sum a_s delta_s given as (a, s) pairs."""
        L = self.delta_sum
        x = L.zero
        for a, s in terms:
            x = int(L.add(x, L.monomial(a, s)))
        return self.project(x)

    # ------------------------------------------------------------ canonical maps
    @cached_property
    def _disjoint_units(self):
        """(e, b_e) with b_e = 1_e - 1_e J, J the join of earlier units, in ascending e."""
        A, S = self.act.A, self.act.S
        out = []
        J = A.zero
        for e in sorted(S.idempotents):
            u = self.act.one(e)
            b = A.minus(u, A.times(u, J))
            out.append((e, b))
            J = A.minus(A.plus(J, u), A.times(J, u))
        return out, J

    def decompose(self, a):
        """a = sum a_e with a_e in D_e via the disjointified units."""
        A = self.act.A
        parts, J = self._disjoint_units
        if A.times(a, J) != a:
            raise NotDecomposable(f"{A.label(a)} is not in the sum of the D_e", witness=a)
        terms = [(A.times(a, b), e) for e, b in parts]
        assert all(x in self.act.D[e].members for x, e in terms)
        assert A.sum(x for x, _ in terms) == a
        return terms

    def ring_image(self, a):
        return self.element(self.decompose(a))

    def semigroup_image(self, s):
        S = self.act.S
        return self.element([(self.act.one(S.ran(s)), s)])

    @cached_property
    def ring_map(self) -> RingHom:
        return RingHom(self.act.A, self.ring, [self.ring_image(a) for a in range(self.act.A.n)])

    @cached_property
    def semigroup_map(self) -> tuple:
        return tuple(self.semigroup_image(s) for s in range(self.act.S.n))

    def canonical_system(self) -> "CovariantSystem":
        return CovariantSystem(self.act, self.ring, self.ring_map.map, self.semigroup_map)

    def boolean_units(self):
        """Theta applied to the Boolean algebra generated by the units 1_e."""
        B = generated_subalgebra(self.act.A, self.act.units.values())
        return [self.ring_image(e) for e in B.elements]

    def check_embedding(self):
        """Theta injective, Phi multiplicative, (C1), (C2), Theta(B) local units."""
        S, R = self.act.S, self.ring
        assert self.ring_map.injective()
        for s in range(S.n):
            for t in range(S.n):
                assert R.times(self.semigroup_map[s], self.semigroup_map[t]) == self.semigroup_map[S.mul[s, t]]
        self.canonical_system()
        for s in range(S.n):
            for a in self.act.members[s]:
                assert self.project(self.delta_sum.monomial(a, s)) == R.times(self.ring_image(a), self.semigroup_map[s])
        assert finring.has_local_units(R, self.boolean_units())
        return True


def skew_ring(act: SpectralAction) -> SkewRing:
    return SkewRing(act)


# ---------------------------------------------------------------- covariant systems

class CovariantSystem:
    def __init__(self, act: SpectralAction, target: FiniteRing, theta, phi):
        self.act, self.target = act, target
        try:
            self.ring_map = theta if isinstance(theta, RingHom) else RingHom(act.A, target, theta)
        except NotAHomomorphism as exc:
            raise NotCovariant("Hom", f"theta is not a ring map: {exc}", witness=exc.witness) from None
        self.semigroup_map = tuple(int(v) for v in phi)
        S, T = act.S, target
        th = self.ring_map
        for s in range(S.n):
            for t in range(S.n):
                if T.times(self.semigroup_map[s], self.semigroup_map[t]) != self.semigroup_map[S.mul[s, t]]:
                    raise NotCovariant("Mult", "phi is not multiplicative", witness=(s, t))
        for s in range(S.n):
            ps, pss = self.semigroup_map[s], self.semigroup_map[S.star[s]]
            for a in act.members[S.star[s]]:
                if th(act.apply(s, a)) != T.times(T.times(ps, th(a)), pss):
                    raise NotCovariant("C1", f"theta(alpha_{S.labels[s]}(a)) != phi(s)theta(a)phi(s*)",
                                       witness=(s, a))
        for e in S.idempotents:
            if th(act.one(e)) != self.semigroup_map[e]:
                raise NotCovariant("C2", f"theta(1_{S.labels[e]}) != phi({S.labels[e]})", witness=e)

    def key(self):
        return tuple(int(v) for v in self.ring_map.map), self.semigroup_map


def induced_hom(R: SkewRing, sys: CovariantSystem) -> RingHom:
    """pi(a delta_s + N) = theta(a) phi(s)."""
    L, T, S = R.delta_sum, sys.target, R.act.S
    th, ph = sys.ring_map, sys.semigroup_map

    def on_L(code):
        c = L.coeffs([code])[0]
        return T.sum(T.times(th(int(c[s])), ph[s]) for s in range(S.n))

    for g in relation_generators(L):
        if on_L(g) != T.zero:
            raise NotCovariant("WellDefined", "theta x phi does not vanish on N", witness=L.label(g))
    pi = RingHom(R.ring, T, [on_L(int(x)) for x in R.reps])
    for a in range(R.act.A.n):
        assert pi(R.ring_image(a)) == th(a)
    for s in range(S.n):
        assert pi(R.semigroup_map[s]) == ph[s]
    # uniqueness: the cosets Theta(a)Phi(s) with a in D_s span A x S additively
    mons = [R.project(x) for _, _, x in L.monomials()]
    assert len(finring.additive_closure(R.ring, mons)) == R.ring.n
    return pi


def covariant_systems(act: SpectralAction, T: FiniteRing):
    """All covariant systems into T, by enumerating theta and backtracking phi."""
    S = act.S
    out = []
    for th in finring.enumerate_homs(act.A, T):
        fixed = {e: th(act.one(e)) for e in S.idempotents}
        order = sorted(range(S.n), key=lambda s: (s not in fixed, s))
        phi = [None] * S.n

        def ok(k):
            s = order[k]
            done = order[:k + 1]
            for x in done:
                for y in done:
                    xy = S.mul[x, y]
                    if phi[xy] is not None and T.times(phi[x], phi[y]) != phi[xy]:
                        return False
            ss = S.star[s]
            if phi[ss] is not None:
                for a in act.members[ss]:
                    if th(act.apply(s, a)) != T.times(T.times(phi[s], th(a)), phi[ss]):
                        return False
                for a in act.members[s]:
                    if th(act.apply(ss, a)) != T.times(T.times(phi[ss], th(a)), phi[s]):
                        return False
            return True

        def rec(k):
            if k == S.n:
                out.append(CovariantSystem(act, T, th, phi))
                return
            s = order[k]
            for v in ([fixed[s]] if s in fixed else range(T.n)):
                phi[s] = v
                if ok(k):
                    rec(k + 1)
            phi[s] = None

        rec(0)
    return out


def adjunction_check(R: SkewRing, T: FiniteRing):
    """Homs A x S -> T versus covariant systems into T; returns (n_homs, n_systems, ok)."""
    homs = finring.enumerate_homs(R.ring, T)
    systems = covariant_systems(R.act, T)
    sys_keys = {s.key() for s in systems}
    assert len(sys_keys) == len(systems)
    images = set()
    for pi in homs:
        key = (tuple(int(pi(R.ring_image(a))) for a in range(R.act.A.n)),
               tuple(int(pi(p)) for p in R.semigroup_map))
        images.add(key)
    ok = len(images) == len(homs) and images == sys_keys
    for sys in systems:
        pi = induced_hom(R, sys)
        ok = ok and any((pi.map == h.map).all() for h in homs)
    return len(homs), len(systems), ok


def target_catalog():
    """Small target rings, unital and not, all of size at most 8."""
    zn, P = finring.zn, finring.product
    cat = [(f"Z{n}", zn(n)) for n in range(1, 9)]
    cat += [("Z2xZ2", P(zn(2), zn(2))), ("Z2xZ4", P(zn(2), zn(4))),
            ("Z2xZ2xZ2", P(zn(2), zn(2), zn(2))), ("Z2xZ3", P(zn(2), zn(3))),
            ("F4", finring.field4()), ("Z2[e]", finring.dual_numbers(2)),
            ("UT2(Z2)", finring.matrix_ring(2, 2, upper=True))]
    cat += [(f"null{n}", finring.null_ring(n)) for n in (2, 3, 4)]
    return cat


def all_decompositions(act: SpectralAction, a):
    """Every tuple (a_e) with a_e in D_e summing to a, over idempotents in order."""
    A, S = act.A, act.S
    es = sorted(S.idempotents)
    for combo in itertools.product(*[act.members[e] for e in es]):
        if A.sum(combo) == a:
            yield list(zip(combo, es))
