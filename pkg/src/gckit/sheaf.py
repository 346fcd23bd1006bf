"""G-sheaves of rings and modules over finite discrete groupoids.

With discrete topology the espace etale is just the disjoint union of the
stalks, so a sheaf is a stalk per object plus a map per arrow.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from gckit.errors import AxiomViolated, NotAHomomorphism
from gckit.finring import FiniteModule, FiniteRing, RingHom, regular_module
from gckit.groupoid import FiniteGroupoid, units


def _as_map(m, n_src, n_tgt, tag, arrow):
    m = tuple(int(v) for v in m)
    if len(m) != n_src or any(not 0 <= v < n_tgt for v in m):
        raise AxiomViolated(tag, f"map on arrow {arrow} does not go from the d-stalk to the r-stalk",
                            witness=arrow)
    return m


class GSheafOfRings:
    def __init__(self, base: FiniteGroupoid, stalks: Sequence[FiniteRing], act, check=True):
        self.base = base
        self.stalks = tuple(stalks)
        G = base
        if len(self.stalks) != G.n_objects:
            raise AxiomViolated("S2", "need one stalk per object")
        if len(act) != G.n_arrows:
            raise AxiomViolated("S2", "need one map per arrow")
        self.act = tuple(_as_map(act[g], self.stalks[G.d[g]].n, self.stalks[G.r[g]].n, "S2", g)
                         for g in range(G.n_arrows))
        if check:
            self._validate()

    def _validate(self):
        G, O, act = self.base, self.stalks, self.act
        for x in range(G.n_objects):
            if act[G.unit[x]] != tuple(range(O[x].n)):
                raise AxiomViolated("S1", f"identity arrow at {G.object_labels[x]} acts non-trivially",
                                    witness=G.unit[x])
        for b in range(G.n_arrows):
            for c in range(G.n_arrows):
                bc = G.comp[b][c]
                if bc < 0:
                    continue
                ab = act[b]
                composed = tuple(ab[v] for v in act[c])
                if composed != act[bc]:
                    bad = next(i for i, (u, v) in enumerate(zip(composed, act[bc])) if u != v)
                    raise AxiomViolated("S3", f"alpha_{G.labels[b]} alpha_{G.labels[c]} != "
                                        f"alpha_{G.labels[bc]}", witness=(b, c, bad))
        for x in range(G.n_objects):
            if O[x].one is None:
                raise AxiomViolated("SR4", f"stalk at {G.object_labels[x]} is not unital", witness=x)
        for g in range(G.n_arrows):
            src, tgt = O[G.d[g]], O[G.r[g]]
            try:
                h = RingHom(src, tgt, act[g])
            except NotAHomomorphism as exc:
                raise AxiomViolated("SR4", f"alpha_{G.labels[g]} is not a ring map",
                                    witness=(g,) + tuple(exc.witness or ())) from None
            if not (h.injective() and h.surjective()) or act[g][src.one] != tgt.one:
                raise AxiomViolated("SR4", f"alpha_{G.labels[g]} is not a unital isomorphism",
                                    witness=g)
        for g in range(G.n_arrows):
            inv = act[G.inv[g]]
            assert all(inv[act[g][v]] == v for v in range(O[G.d[g]].n))

    def stalk_at(self, g):
        """Stalk ring where values of sections at arrow g live (the r-stalk)."""
        return self.stalks[self.base.r[g]]

    def is_constant(self):
        R = self.stalks[0] if self.stalks else None
        return all(S is R for S in self.stalks) and \
            all(a == tuple(range(R.n)) for a in self.act)


def validate_ring_sheaf(base, stalks, act) -> GSheafOfRings:
    return GSheafOfRings(base, stalks, act)


def constant_sheaf(G: FiniteGroupoid, R: FiniteRing) -> GSheafOfRings:
    ident = tuple(range(R.n))
    return GSheafOfRings(G, [R] * G.n_objects, [ident] * G.n_arrows)


def restrict_to_units(O: GSheafOfRings) -> GSheafOfRings:
    n = O.base.n_objects
    U = units(n)
    U.object_labels = O.base.object_labels
    U.labels = O.base.object_labels
    return GSheafOfRings(U, O.stalks, [tuple(range(R.n)) for R in O.stalks])


class GSheafOfModules:
    def __init__(self, over: GSheafOfRings, stalks: Sequence[FiniteModule], act, check=True):
        self.over = over
        self.base = over.base
        self.stalks = tuple(stalks)
        G = self.base
        if len(self.stalks) != G.n_objects or len(act) != G.n_arrows:
            raise AxiomViolated("S2", "need one stalk per object and one map per arrow")
        for x, M in enumerate(self.stalks):
            if M.ring is not over.stalks[x]:
                raise AxiomViolated("S2", f"stalk module at {G.object_labels[x]} is over the wrong ring",
                                    witness=x)
        self.act = tuple(_as_map(act[g], self.stalks[G.d[g]].n, self.stalks[G.r[g]].n, "S2", g)
                         for g in range(G.n_arrows))
        if check:
            self._validate()

    def _validate(self):
        G, M, beta, alpha = self.base, self.stalks, self.act, self.over.act
        for x in range(G.n_objects):
            if beta[G.unit[x]] != tuple(range(M[x].n)):
                raise AxiomViolated("S1", f"identity arrow at {G.object_labels[x]} acts non-trivially",
                                    witness=G.unit[x])
        for b in range(G.n_arrows):
            for c in range(G.n_arrows):
                bc = G.comp[b][c]
                if bc < 0:
                    continue
                composed = tuple(beta[b][v] for v in beta[c])
                if composed != beta[bc]:
                    bad = next(i for i, (u, v) in enumerate(zip(composed, beta[bc])) if u != v)
                    raise AxiomViolated("S3", f"beta_{G.labels[b]} beta_{G.labels[c]} != "
                                        f"beta_{G.labels[bc]}", witness=(b, c, bad))
        for g in range(G.n_arrows):
            src, tgt = M[G.d[g]], M[G.r[g]]
            bg = np.array(beta[g])
            if (bg[src.add] != tgt.add[bg[:, None], bg[None, :]]).any():
                raise AxiomViolated("SM3", f"beta_{G.labels[g]} is not additive", witness=g)
            ag = np.array(alpha[g])
            # beta(r m) == alpha(r) beta(m)
            lhs = bg[src.act]
            rhs = tgt.act[ag][:, bg]
            if (lhs != rhs).any():
                r, m = np.argwhere(lhs != rhs)[0]
                raise AxiomViolated("SM3", f"beta_{G.labels[g]}(r m) != alpha(r) beta(m)",
                                    witness=(g, int(r), int(m)))
        for x in range(G.n_objects):
            R = M[x].ring
            if (M[x].act[R.one] != np.arange(M[x].n)).any():
                raise AxiomViolated("Unitary", f"1 does not act as identity at {G.object_labels[x]}",
                                    witness=x)


def validate_module_sheaf(over, stalks, act) -> GSheafOfModules:
    return GSheafOfModules(over, stalks, act)


def regular_module_sheaf(O: GSheafOfRings) -> GSheafOfModules:
    """The ring sheaf viewed as a module sheaf over itself."""
    return GSheafOfModules(O, [regular_module(R) for R in O.stalks], O.act)


def zero_module_sheaf(O: GSheafOfRings) -> GSheafOfModules:
    stalks = [FiniteModule(R, [[0]], [[0] for _ in range(R.n)]) for R in O.stalks]
    return GSheafOfModules(O, stalks, [(0,)] * O.base.n_arrows)
