"""Pierce spectra: rings with central local units as section rings over characters."""
from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

import numpy as np

from gckit import finring
from gckit.boolalg import GenBooleanAlgebra, characters, from_central_idempotents
from gckit.conv import ConvAlgebra
from gckit.errors import NotLocalUnits, NotSpectral
from gckit.finring import FiniteRing, RingHom, RingIdeal
from gckit.groupoid import BooleanAction, _UnionFind, units
from gckit.sheaf import GSheafOfRings


class PierceStalk(NamedTuple):
    lam: tuple
    ideal: RingIdeal
    ring: FiniteRing
    proj: RingHom


def _one_set(B: GenBooleanAlgebra, lam):
    return [B.elements[i] for i, v in enumerate(lam) if v]


def stalk(R: FiniteRing, B: GenBooleanAlgebra, lam) -> PierceStalk:
    """R_lam = R/I_lam, cross-checked against the direct limit of the corners eR."""
    filt = _one_set(B, lam)
    I = frozenset(r for r in range(R.n) if any(R.times(e, r) == R.zero for e in filt))
    ideal = RingIdeal(R, I)
    Q, proj = finring.quotient_ring(R, ideal)
    for e in filt:
        assert Q.one is not None and proj(e) == Q.one, "R_lam must be unital with identity [e]"
    _check_direct_limit(R, filt, proj)
    return PierceStalk(tuple(lam), ideal, Q, proj)


def _check_direct_limit(R, filt, proj):
    """Classes of pairs (e, x), x in eR, under (f, x) ~ (ef, efx), against R/I."""
    pairs = [(e, x) for e in filt for x in sorted({R.times(e, r) for r in range(R.n)})]
    pos = {p: i for i, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    for f, x in pairs:
        for e in filt:
            if R.times(e, f) == e:
                uf.union(pos[(f, x)], pos[(e, R.times(e, x))])
    classes = {uf.find(i) for i in range(len(pairs))}
    bottom = filt[0]
    for e in filt:
        if R.times(e, bottom) != bottom:
            bottom = R.times(e, bottom)
    germ = [uf.find(pos[(bottom, R.times(bottom, r))]) for r in range(R.n)]
    for e in filt:
        assert all(uf.find(pos[(e, R.times(e, r))]) == germ[r] for r in range(R.n))
    assert len(classes) == proj.target.n
    same = {(germ[a] == germ[b]) == (proj(a) == proj(b)) for a in range(R.n) for b in range(R.n)}
    assert same == {True}, "direct limit and quotient descriptions disagree"


class PierceSpectrum:
    def __init__(self, R: FiniteRing, B: GenBooleanAlgebra | None = None):
        self.R = R
        central = set(finring.central_idempotents(R))
        self.B = from_central_idempotents(R) if B is None else B
        if not set(self.B.elements) <= central:
            raise NotLocalUnits("B must consist of central idempotents")
        if not finring.has_local_units(R, self.B.elements):
            raise NotLocalUnits("B is not a set of local units", witness=sorted(self.B.elements))
        self.points = characters(self.B)
        self.stalks = tuple(stalk(R, self.B, lam) for lam in self.points)

    @property
    def n_points(self):
        return len(self.points)

    def basic_open(self, e):
        """Points where the character takes the value 1 at the idempotent e."""
        i = self.B.index_of(e)
        return frozenset(p for p, lam in enumerate(self.points) if lam[i])

    @cached_property
    def sheaf(self) -> GSheafOfRings:
        rings = [st.ring for st in self.stalks]
        G = units(self.n_points)
        return GSheafOfRings(G, rings, [tuple(range(Q.n)) for Q in rings])

    @cached_property
    def sections(self) -> ConvAlgebra:
        return ConvAlgebra(self.sheaf)

    def gelfand(self, r):
        """r-hat as a tuple of stalk elements indexed by points."""
        hat = tuple(st.proj(r) for st in self.stalks)
        for e in self.B.elements:
            if self.R.times(e, r) == r:
                supp = {p for p, v in enumerate(hat) if v != self.stalks[p].ring.zero}
                assert supp <= self.basic_open(e)
        return hat

    @cached_property
    def gelfand_iso(self) -> RingHom:
        """r -> r-hat into the section ring; verified to be an isomorphism."""
        C = self.sections
        m = [C.code(self.gelfand(r)) for r in range(self.R.n)]
        h = RingHom(self.R, C.ring, m)
        assert h.injective() and h.surjective(), "Gelfand map is not bijective"
        return h


def pierce_iso(R: FiniteRing, B: GenBooleanAlgebra | None = None) -> RingHom:
    return PierceSpectrum(R, B).gelfand_iso


def stalks_indecomposable(P: PierceSpectrum) -> bool:
    return all(set(finring.central_idempotents(st.ring)) == {st.ring.zero, st.ring.one}
               for st in P.stalks)


# ---------------------------------------------------------------- action on the spectrum

def spectrum_action(act, B: GenBooleanAlgebra | None = None):
    """(BooleanAction of S on the characters of B, PierceSpectrum of A)."""
    A, S = act.A, act.S
    P = PierceSpectrum(A, B)
    B = P.B
    for e in S.idempotents:
        if act.one(e) not in B.elements:
            raise NotSpectral("HatB", f"1_{S.labels[e]} is not in B", witness=e)
    pts = {lam: p for p, lam in enumerate(P.points)}
    dom, rho = [], []
    for s in range(S.n):
        u = act.one(S.ran(s))
        dom_s = P.basic_open(act.one(S.dom(s)))
        dom.append(dom_s)
        m = {}
        # rho_s(lam)(e) = lam(alpha_{s*}(e 1_{ss*})) for lam with lam(1_{s*s}) = 1
        for p in sorted(dom_s):
            lam = P.points[p]
            new = []
            for e in B.elements:
                img = act.apply(S.star[s], A.times(e, u))
                if img not in B.elements:
                    raise NotSpectral("HatB", "B is not invariant under the action", witness=(s, e))
                new.append(lam[B.index_of(img)])
            new = tuple(new)
            if new not in pts:
                raise NotSpectral("Hat", "image is not a character", witness=(s, p))
            m[p] = pts[new]
        rho.append(m)
    for s in range(S.n):
        ss = S.star[s]
        assert all(rho[ss][rho[s][p]] == p for p in dom[s])
        if act.one(S.ran(s)) == A.zero:
            assert not dom[ss] and not dom[s]
    labels = [_point_label(B, lam) for lam in P.points]
    return BooleanAction(S, P.n_points, dom, rho, point_labels=labels), P


def _point_label(B, lam):
    atom = next(x for x in B.atoms() if all(lam[i] == (1 if B.leq(x, i) else 0) for i in range(B.n)))
    return "λ" + B.label(atom)


def character_table(P: PierceSpectrum):
    return np.array(P.points, dtype=np.int8)
