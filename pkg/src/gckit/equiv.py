"""Bridges between skew rings, convolution algebras and sheaves of modules.

Covers the diagonal action, the covariant triple into the convolution
algebra, the module/sheaf round trips, the sheaf on the germ groupoid of the
spectrum, and the two isomorphism checks.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

import numpy as np

from gckit import finring
from gckit.config import check_size
from gckit.conv import ConvAlgebra, diagonal_algebra
from gckit.errors import G1Fails, GckitError, GermConditionsFail, NotAModule, NotUnitary
from gckit.finring import FiniteModule
from gckit.groupoid import (as_family, bisection_domain, bisection_range, enumerate_bisections,
                            germ_conditions, groupoid_of_germs)
from gckit.pierce import spectrum_action
from gckit.report import IsoReport
from gckit.sheaf import GSheafOfModules, GSheafOfRings
from gckit.skew import CovariantSystem, SkewRing, SpectralAction, induced_hom


# ---------------------------------------------------------------- diagonal action

class DiagAction(NamedTuple):
    action: SpectralAction
    diagonal: ConvAlgebra
    family: object


def transport_action(G, O: GSheafOfRings, S_sub) -> DiagAction:
    """S (bisections) acting on sections over objects by transport along arrows."""
    S = as_family(G, S_sub)
    if not germ_conditions(G, S).g1:
        raise G1Fails("the family does not cover every arrow")
    diag = diagonal_algebra(O)
    A = diag.ring
    vals = [diag.vals(c) for c in range(A.n)]
    zero = diag.zero

    def supported_in(f, pts):
        return all(f[x] == zero[x] for x in range(G.n_objects) if x not in pts)

    D, alpha, unit = [], [], {}
    for s, U in enumerate(S.bisections):
        rng, dom = bisection_range(G, U), bisection_domain(G, U)
        D.append([c for c in range(A.n) if supported_in(vals[c], rng)])
        m = [-1] * A.n
        for c in range(A.n):
            f = vals[c]
            if supported_in(f, dom):
                out = list(zero)
                for g in U:
                    out[G.r[g]] = O.act[g][f[G.d[g]]]
                m[c] = diag.code(out)
        alpha.append(m)
        if S.is_idempotent(s):
            unit[s] = diag.code([O.stalks[x].one if x in rng else zero[x]
                                 for x in range(G.n_objects)])
    act = SpectralAction(S, A, D, alpha, units=unit)
    for s in range(S.n):
        back = act.alpha[S.star[s]]
        assert all(back[act.alpha[s][a]] == a for a in act.members[S.star[s]])
    return DiagAction(act, diag, S)


def transport_covariant(G, O: GSheafOfRings, S_sub, conv: ConvAlgebra | None = None):
    """(covariant system into Gamma_c(G, O), diagonal action, convolution algebra)."""
    transport = transport_action(G, O, S_sub)
    conv = ConvAlgebra(O) if conv is None else conv
    C, diag = conv.ring, transport.diagonal
    theta = [conv.code(conv.embed_diagonal(diag.vals(c))) for c in range(diag.size)]
    phi = [conv.code(conv.indicator(U)) for U in transport.family.bisections]
    sys = CovariantSystem(transport.action, C, theta, phi)
    return sys, transport, conv


def check_factor_through(G, O: GSheafOfRings, S_sub) -> IsoReport:
    S = as_family(G, S_sub)
    gc = germ_conditions(G, S)
    if not (gc.g1 and gc.g2):
        raise GermConditionsFail(f"germ conditions fail (G1={gc.g1}, G2={gc.g2})")
    sys, transport, conv = transport_covariant(G, O, S)
    R = SkewRing(transport.action)
    pi = induced_hom(R, sys)
    fails = []
    for s, U in enumerate(S.bisections):
        for a in transport.action.members[s]:
            g = conv.embed_diagonal(transport.diagonal.vals(a))
            lhs = pi(R.project(R.delta_sum.monomial(a, s)))
            if lhs != conv.code(conv.convolve(g, conv.indicator(U))):
                fails.append(("pi(g delta_s) != g*chi_s", s, a))
    Q = R.ring
    ann = [x for x in range(Q.n) if (Q.mul[x] == Q.zero).all()]
    if ann != [Q.zero]:
        fails.append(("regular module not faithful", ann))
    return IsoReport("factor_through", Q.n, conv.ring.n, True, pi.injective(), pi.surjective(),
                     fails)


# ---------------------------------------------------------------- modules

def summand_module(conv: ConvAlgebra, U):
    """The left ideal R * chi_U as a module over R = Gamma_c (U a set of objects)."""
    C = conv.ring
    e = conv.code(conv.indicator([conv.G.unit[x] for x in U]))
    members = sorted({int(C.mul[r, e]) for r in range(C.n)})
    sub, emb = finring.regular_module(C).submodule(members)
    return sub, emb


def _classes(M: FiniteModule, N):
    """Coset labels of the subgroup N, lowest representative first."""
    N = np.array(sorted(N), dtype=np.int64)
    label = np.full(M.n, -1, dtype=np.int64)
    reps = []
    for m in range(M.n):
        if label[m] < 0:
            label[M.add[m, N]] = len(reps)
            reps.append(m)
    return label, reps


class ModuleStalks(NamedTuple):
    sheaf: GSheafOfModules
    kernels: tuple
    label: tuple
    reps: tuple


def sheafify_module(conv: ConvAlgebra, M: FiniteModule) -> ModuleStalks:
    G, O, C = conv.G, conv.sheaf, conv.ring
    if M.ring is not C:
        raise NotAModule("Ring", "module must be over the convolution ring")
    if not M.is_unitary():
        raise NotUnitary("RM != M")
    chi_pt = [conv.code(conv.indicator([G.unit[x]])) for x in range(G.n_objects)]
    kernels, labels, reps, stalks = [], [], [], []
    for x in range(G.n_objects):
        Nx = frozenset(int(m) for m in np.flatnonzero(M.act[chi_pt[x]] == M.zero))
        # the union over all unit sets containing x agrees with the singleton
        others = set()
        objs = [y for y in range(G.n_objects) if y != x]
        for r in range(len(objs) + 1):
            for extra in itertools.combinations(objs, r):
                cu = conv.code(conv.indicator([G.unit[y] for y in (x,) + extra]))
                others |= {int(m) for m in np.flatnonzero(M.act[cu] == M.zero)}
        assert others == Nx
        lab, rp = _classes(M, Nx)
        Ox = O.stalks[x]
        rp_a = np.array(rp)
        add = lab[M.add[rp_a[:, None], rp_a[None, :]]]
        act = np.empty((Ox.n, len(rp)), dtype=np.int64)
        for a in range(Ox.n):
            ad = conv.code(conv.delta(G.unit[x], a))
            moved = lab[M.act[ad]]
            # well defined on every representative
            assert all(len(set(moved[lab == q].tolist())) == 1 for q in range(len(rp)))
            act[a] = moved[rp_a]
        stalks.append(FiniteModule(Ox, add, act, zero=int(lab[M.zero]),
                                   labels=lambda q, rp=rp: "[" + M.label(rp[q]) + "]"))
        kernels.append(Nx)
        labels.append(lab)
        reps.append(rp)
    beta = []
    bis = enumerate_bisections(G)
    for g in range(G.n_arrows):
        dx, rx = G.d[g], G.r[g]
        m_out = None
        for U in bis:
            if g not in U:
                continue
            cu = conv.code(conv.indicator(U))
            moved = labels[rx][M.act[cu]]
            table = []
            for q in range(len(reps[dx])):
                vals = set(moved[labels[dx] == q].tolist())
                assert len(vals) == 1, "transport depends on the representative"
                table.append(vals.pop())
            if m_out is None:
                m_out = table
            assert m_out == table, "transport depends on the bisection"
        beta.append(m_out)
    sheaf = GSheafOfModules(O, stalks, beta)
    return ModuleStalks(sheaf, tuple(kernels), tuple(labels), tuple(reps))


class SectionModule(NamedTuple):
    module: FiniteModule
    sizes: tuple
    places: tuple

    def code(self, vals):
        return sum(int(v) * p for v, p in zip(vals, self.places))

    def vals(self, code):
        out = []
        for s in self.sizes:
            out.append(code % s)
            code //= s
        return tuple(out)


def sections_module(conv: ConvAlgebra, Ms: GSheafOfModules) -> SectionModule:
    """Sections over objects with (f m)(x) = sum over r(g) = x of f(g) beta_g(m(d g))."""
    G, C = conv.G, conv.ring
    sizes = tuple(Mx.n for Mx in Ms.stalks)
    places = [1]
    for s in sizes[:-1]:
        places.append(places[-1] * s)
    n = int(np.prod(sizes, dtype=object))
    check_size(n, "section module")
    codes = np.arange(n, dtype=np.int64)
    Mv = np.stack([(codes // places[x]) % sizes[x] for x in range(G.n_objects)], axis=1)
    add = np.zeros((n, n), dtype=np.int64)
    for x, Mx in enumerate(Ms.stalks):
        add += Mx.add[Mv[:, x][:, None], Mv[:, x][None, :]] * places[x]
    V = conv.decode_all()
    acc = [np.full((C.n, n), Mx.zero, dtype=np.int64) for Mx in Ms.stalks]
    for g in range(G.n_arrows):
        x = G.r[g]
        Mx = Ms.stalks[x]
        b = np.array(Ms.act[g])[Mv[:, G.d[g]]]
        acc[x] = Mx.add[acc[x], Mx.act[V[:, g][:, None], b[None, :]]]
    act = sum(acc[x] * places[x] for x in range(G.n_objects))
    zero = sum(Mx.zero * places[x] for x, Mx in enumerate(Ms.stalks))
    module = FiniteModule(C, add, act, zero=zero)
    return SectionModule(module, sizes, tuple(places))


def module_roundtrip(conv: ConvAlgebra, M: FiniteModule, U_support=None) -> IsoReport:
    """m -> ([m]_x)_x from M into the sections of Sh(M)."""
    st = sheafify_module(conv, M)
    sec = sections_module(conv, st.sheaf)
    eta = np.array([sec.code([int(st.label[x][m]) for x in range(conv.G.n_objects)])
                    for m in range(M.n)])
    fails = []
    is_hom = finring.is_module_hom(M, sec.module, eta)
    G = conv.G
    units = range(G.n_objects)
    for r in range(G.n_objects + 1):
        for U in itertools.combinations(units, r):
            cu = conv.code(conv.indicator([G.unit[x] for x in U]))
            for m in range(M.n):
                if M.act[cu, m] == m:
                    hat = sec.vals(int(eta[m]))
                    if any(hat[x] != st.sheaf.stalks[x].zero for x in units if x not in U):
                        fails.append(("support", U, m))
    inj = len(set(eta.tolist())) == M.n
    surj = len(set(eta.tolist())) == sec.module.n
    return IsoReport("disintegration_eta", M.n, sec.module.n, is_hom, inj, surj, fails)


def sheaf_roundtrip(conv: ConvAlgebra, Ms: GSheafOfModules) -> IsoReport:
    """[t]_x -> t(x) from Sh(sections of Ms) back to Ms, stalk by stalk."""
    sec = sections_module(conv, Ms)
    st = sheafify_module(conv, sec.module)
    G = conv.G
    fails = []
    is_hom = inj = surj = True
    maps = []
    for x in range(G.n_objects):
        Mx, Nx = Ms.stalks[x], st.sheaf.stalks[x]
        v = [None] * Nx.n
        for t in range(sec.module.n):
            q = int(st.label[x][t])
            val = sec.vals(t)[x]
            if v[q] is None:
                v[q] = val
            elif v[q] != val:
                fails.append(("v not well defined", x, t))
        v = np.array(v)
        maps.append(v)
        ok = (v[Nx.add] == Mx.add[v[:, None], v[None, :]]).all() and \
            (v[Nx.act] == Mx.act[:, v]).all()
        is_hom = is_hom and bool(ok)
        inj = inj and len(set(v.tolist())) == Nx.n
        surj = surj and set(v.tolist()) == set(range(Mx.n))
    for g in range(G.n_arrows):
        lhs = maps[G.r[g]][np.array(st.sheaf.act[g])]
        rhs = np.array(Ms.act[g])[maps[G.d[g]]]
        if (lhs != rhs).any():
            is_hom = False
            fails.append(("v does not intertwine beta", g))
    total = sum(M.n for M in Ms.stalks)
    return IsoReport("disintegration_v", sum(N.n for N in st.sheaf.stalks), total, is_hom, inj,
                     surj, fails)


def disintegration_roundtrips(conv: ConvAlgebra, M: FiniteModule):
    """eta on M, and v on Sh(M); both reports."""
    eta = module_roundtrip(conv, M)
    v = sheaf_roundtrip(conv, sheafify_module(conv, M).sheaf)
    return eta, v


# ---------------------------------------------------------------- germ sheaf and main theorem

class GermSheaf(NamedTuple):
    sheaf: GSheafOfRings
    germs: object
    spectrum: object
    spectrum_action: object


def germ_sheaf(act: SpectralAction, B=None) -> GermSheaf:
    """alpha_[s,lam]([a]_lam) = [alpha_s(1_{s*s} a)]_{rho_s(lam)}."""
    S, A = act.S, act.A
    hat, P = spectrum_action(act, B)
    GG = groupoid_of_germs(hat)
    G = GG.base
    maps = []
    for g in range(G.n_arrows):
        src, tgt = P.stalks[G.d[g]], P.stalks[G.r[g]]
        table = [None] * src.ring.n
        reps = [(s, x) for (s, x), h in GG.germ_of.items() if h == g]
        for s, x in reps:
            assert x == G.d[g] and hat.rho[s][x] == G.r[g]
            u = act.one(S.dom(s))
            for a in range(A.n):
                q = src.proj(a)
                val = tgt.proj(act.apply(s, A.times(u, a)))
                if table[q] is None:
                    table[q] = val
                assert table[q] == val, "germ action depends on the representative"
        maps.append(table)
    sheaf = GSheafOfRings(G, [st.ring for st in P.stalks], maps)
    return GermSheaf(sheaf, GG, P, hat)


def check_main_theorem(act: SpectralAction, B=None) -> IsoReport:
    S, A = act.S, act.A
    R = SkewRing(act)
    gs = germ_sheaf(act, B)
    GG, P = gs.germs, gs.spectrum
    transport = transport_action(GG.base, gs.sheaf, GG.family)
    R2 = SkewRing(transport.action)
    psi = P.gelfand_iso
    assert transport.diagonal.sizes == P.sections.sizes
    fails = []
    # Gelfand(alpha_s(a)) is the transport along U(s) of Gelfand(a), for a in D_{s*}
    for s in range(S.n):
        U = GG.family_index[s]
        for a in act.members[S.star[s]]:
            if psi(act.apply(s, a)) != transport.action.alpha[U][psi(a)]:
                fails.append(("spectrum/transport compatibility", S.labels[s], A.label(a)))
    theta = [R2.ring_image(psi(a)) for a in range(A.n)]
    phi = [R2.semigroup_map[GG.family_index[s]] for s in range(S.n)]
    try:
        pi = induced_hom(R, CovariantSystem(act, R2.ring, theta, phi))
    except GckitError as exc:
        return IsoReport("main", R.ring.n, R2.ring.n, False, False, False,
                         fails + [("pi", str(exc))])
    back_phi = {}
    for s in range(S.n):
        U = GG.family_index[s]
        if back_phi.setdefault(U, R.semigroup_map[s]) != R.semigroup_map[s]:
            fails.append(("same bisection but different semigroup images", S.labels[s]))
    inv = psi.inverse()
    theta2 = [R.ring_image(inv(c)) for c in range(transport.action.A.n)]
    phi2 = [back_phi[U] for U in range(GG.family.n)]
    try:
        pi2 = induced_hom(R2, CovariantSystem(transport.action, R.ring, theta2, phi2))
    except GckitError as exc:
        return IsoReport("main", R.ring.n, R2.ring.n, True, pi.injective(), pi.surjective(),
                         fails + [("pi'", str(exc))])
    if (pi2.map[pi.map] != np.arange(R.ring.n)).any():
        fails.append(("pi' pi != id",))
    if (pi.map[pi2.map] != np.arange(R2.ring.n)).any():
        fails.append(("pi pi' != id",))
    ft = check_factor_through(GG.base, gs.sheaf, GG.family)
    if not ft.ok:
        fails.append(("factor through", ft.to_dict()))
    return IsoReport("main", R.ring.n, ft.rhs, True, pi.injective(), pi.surjective(), fails)
