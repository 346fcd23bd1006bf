"""Named worked examples for `gckit examples`.

Each example returns (lines, ok): printable findings and whether every
expectation held.
"""
from __future__ import annotations

from gckit import boolalg, catalog, finring, finsem, groupoid
from gckit.conv import ConvAlgebra
from gckit.equiv import (check_factor_through, check_main_theorem, disintegration_roundtrips,
                         germ_sheaf, sheafify_module, transport_action)
from gckit.errors import AxiomViolated, UnknownExample
from gckit.finring import product, regular_module, zn
from gckit.oracles import steinberg_convolve
from gckit.pierce import PierceSpectrum, spectrum_action, stalks_indecomposable
from gckit.sheaf import GSheafOfModules, GSheafOfRings, constant_sheaf
from gckit.skew import adjunction_check, all_decompositions, skew_ring, target_catalog

REGISTRY = {}


def example(name, summary):
    def deco(fn):
        REGISTRY[name] = (summary, fn)
        return fn
    return deco


class _Log:
    def __init__(self):
        self.lines, self.ok = [], True

    def expect(self, what, got, want):
        good = got == want
        self.ok = self.ok and good
        self.lines.append(f"{'ok ' if good else 'BAD'} {what}: {got}" + ("" if good else f" (expected {want})"))

    def note(self, text):
        self.lines.append(f"    {text}")


@example("i2_counts", "I_2 has 7 elements and 4 idempotents")
def _i2(log):
    S = finsem.symmetric_inverse_monoid(2)
    log.expect("|I_2|", S.n, 7)
    log.expect("idempotents", len(S.idempotents), 4)
    log.note("elements: " + " ".join(S.labels))


@example("i3_counts", "I_3 has 34 elements; (st)* = t*s* everywhere")
def _i3(log):
    S = finsem.symmetric_inverse_monoid(3)
    log.expect("|I_3|", S.n, 34)
    ok = all(S.star[S(s, t)] == S(S.star[t], S.star[s]) for s in range(S.n) for t in range(S.n))
    log.expect("(st)* = t*s*", ok, True)


@example("i2_rank_maps", "which maps I_2 -> {0,1} are homomorphisms")
def _i2_maps(log):
    S = finsem.symmetric_inverse_monoid(2)
    T = finsem.build([[0, 0], [0, 1]], labels=["0", "1"])
    rank = [sum(v >= 0 for v in m) for m in S.maps]
    full = [1 if r == 2 else 0 for r in rank]
    nonempty = [1 if r > 0 else 0 for r in rank]
    log.expect("full rank -> 1 is a homomorphism", finsem.is_homomorphism(full, S, T), True)
    log.expect("nonempty -> 1 is a homomorphism", finsem.is_homomorphism(nonempty, S, T), False)


@example("free3_characters", "the free algebra on 3 atoms has 3 characters, one per ultrafilter")
def _free3(log):
    B = boolalg.free(3)
    chars = boolalg.characters(B)
    log.expect("characters", len(chars), 3)
    log.expect("ultrafilters", len(boolalg.ultrafilters(B)), 3)
    log.expect("Boolean facts", boolalg.boolean_facts_problem(B), None)


@example("z6_idempotents", "central idempotents of Z6 form {0,1,3,4} with two atoms")
def _z6(log):
    B = boolalg.from_central_idempotents(zn(6))
    log.expect("B", list(B.elements), [0, 1, 3, 4])
    log.expect("atoms", [B.elements[a] for a in B.atoms()], [3, 4])


@example("swap_sheaf", "coordinate swap over the two-element group is a sheaf; a non-involution is not")
def _swap_sheaf(log):
    G = groupoid.cyclic(2)
    V = catalog.v4()
    GSheafOfRings(G, [V], [range(4), catalog.SWAP])
    log.expect("swap valid", True, True)
    try:
        GSheafOfRings(G, [V], [range(4), (0, 0, 3, 3)])
        tag = None
    except AxiomViolated as exc:
        tag = exc.tag
    log.expect("(a,b) -> (a,a) rejected with", tag, "S3")


@example("zero_beta_module", "a zero transport map on a non-identity arrow violates S3")
def _zero_beta(log):
    O = constant_sheaf(groupoid.cyclic(2), zn(2))
    try:
        GSheafOfModules(O, [regular_module(O.stalks[0])], [(0, 1), (0, 0)])
        tag = None
    except AxiomViolated as exc:
        tag = exc.tag
    log.expect("rejected with", tag, "S3")


@example("group_ring_square", "in Z4[Z2], (δe + δg)^2 = 2δe + 2δg")
def _square(log):
    C = ConvAlgebra(constant_sheaf(groupoid.cyclic(2), zn(4)))
    log.expect("f*f", C.convolve((1, 1), (1, 1)), (2, 2))


@example("pair_identity", "the identity of Δ(Z2) over the pair groupoid is χ on the units")
def _pair_id(log):
    C = ConvAlgebra(constant_sheaf(groupoid.pair(2), zn(2)))
    log.expect("identity", C.label(C.identity_element()), "1·χ{(1,1)} + 1·χ{(2,2)}")
    log.expect("is ring identity", C.ring.one, C.code(C.identity_element()))


@example("pair_center", "Δ(Z2) over the pair groupoid is M2(Z2); its centre has 2 elements")
def _pair_center(log):
    C = ConvAlgebra(constant_sheaf(groupoid.pair(2), zn(2)))
    M = finring.matrix_ring(2, 2)
    log.expect("isomorphic to M2(Z2)", finring.find_isomorphism(C.ring, M) is not None, True)
    log.expect("|centre|", len(C.center()), 2)
    log.expect("|class functions|", len(C.class_functions()), 2)


@example("group_ring_center", "Z2[Z2] is commutative: all 4 elements are class functions")
def _z2_center(log):
    C = ConvAlgebra(constant_sheaf(groupoid.cyclic(2), zn(2)))
    log.expect("|centre|", len(C.center()), 4)
    log.expect("|class functions|", len(C.class_functions()), 4)


@example("steinberg_agreement", "Δ(Z3) over the pair groupoid agrees with the classical groupoid ring")
def _steinberg(log):
    G = groupoid.pair(2)
    C = ConvAlgebra(constant_sheaf(G, zn(3)))
    els = C.elements()
    bad = sum(list(C.vals(int(C.ring.mul[C.code(f), C.code(g)]))) != steinberg_convolve(G, 3, f, g)
              for f in els for g in els)
    log.expect("disagreeing pairs", bad, 0)


@example("chain_semilattice_skew", "two-element chain on Z2 x Z2: |N| = 2 and A⋊S ≅ A")
def _chain(log):
    R = skew_ring(catalog.chain_action())
    log.expect("|N|", len(R.relations), 2)
    log.expect("|A⋊S|", R.ring.n, 4)
    log.expect("ring map is an isomorphism", R.ring_map.injective() and R.ring_map.surjective(), True)
    log.expect("embedding checks", R.check_embedding(), True)
    log.note("N = {" + ", ".join(R.delta_sum.label(int(x)) for x in R.relations) + "}")


@example("group_skew_ring", "trivial Z2 action on Z2 gives the group ring Z2[Z2]")
def _group_skew(log):
    R = skew_ring(catalog.trivial_group_action())
    C = ConvAlgebra(constant_sheaf(groupoid.cyclic(2), zn(2)))
    log.expect("|N|", len(R.relations), 1)
    log.expect("|A⋊S|", R.ring.n, 4)
    log.expect("same tables as Z2[Z2]", (R.ring.mul == C.ring.mul).all() and
               (R.ring.add == C.ring.add).all(), True)


@example("ring_image_decompositions", "the ring map does not depend on how a is split over the D_e")
def _theta(log):
    act = catalog.chain_action()
    R = skew_ring(act)
    for a in range(act.A.n):
        vals = {R.element(d) for d in all_decompositions(act, a)}
        log.expect(f"ring image({act.A.label(a)})", vals, {R.ring_image(a)})


@example("chain_adjunction", "homomorphisms out of A⋊S match covariant systems for 22 targets")
def _adj(log):
    R = skew_ring(catalog.chain_action())
    for name, T in target_catalog():
        nh, ns, ok = adjunction_check(R, T)
        log.expect(f"{name}: homs = systems = {nh}", ok and nh == ns, True)


@example("pierce_v4", "Pierce stalks of Z2 x Z2 are two copies of Z2")
def _pierce_v4(log):
    P = PierceSpectrum(catalog.v4())
    log.expect("stalk sizes", [st.ring.n for st in P.stalks], [2, 2])
    log.expect("I at atom (1,0)", sorted(P.stalks[1].ideal.members), [0, 1])
    log.expect("(1,0)-hat", P.gelfand(2), (0, 1))
    log.expect("Psi bijective", P.gelfand_iso.injective() and P.gelfand_iso.surjective(), True)


@example("pierce_z6", "Z6 is the section ring of stalks Z3 and Z2")
def _pierce_z6(log):
    P = PierceSpectrum(zn(6))
    log.expect("stalk sizes", sorted(st.ring.n for st in P.stalks), [2, 3])
    log.expect("|Γ_c|", P.sections.ring.n, 6)
    log.expect("stalks indecomposable", stalks_indecomposable(P), True)


@example("pierce_crt", "Z2 x Z3 x Z2 has three stalks Z2, Z3, Z2")
def _pierce_crt(log):
    P = PierceSpectrum(product(zn(2), zn(3), zn(2)))
    log.expect("stalk sizes", [st.ring.n for st in P.stalks], [2, 3, 2])
    log.expect("Psi bijective", P.gelfand_iso.injective() and P.gelfand_iso.surjective(), True)


@example("pierce_ut2", "upper triangular 2x2 over Z2 has one Pierce point")
def _pierce_ut2(log):
    P = PierceSpectrum(finring.matrix_ring(2, 2, upper=True))
    log.expect("points", P.n_points, 1)
    log.expect("Psi bijective", P.gelfand_iso.injective() and P.gelfand_iso.surjective(), True)


@example("swap_hat_action", "the swap action on Z2 x Z2 swaps the two spectrum points")
def _hat(log):
    hat, _ = spectrum_action(catalog.swap_action())
    log.expect("rho_g", hat.rho[1], {0: 1, 1: 0})
    log.expect("rho_e", hat.rho[0], {0: 0, 1: 1})


@example("pair_transport", "transport along the bisection {(1,2)} moves the value at point 2 to point 1")
def _transport(log):
    G = groupoid.pair(2)
    O = constant_sheaf(G, zn(2))
    t = transport_action(G, O, groupoid.all_bisections(G))
    S = t.family
    s = S.bisection_index[frozenset([G.labels.index("(1,2)")])]
    f = t.diagonal.code((0, 1))
    log.expect("α̃_s(value 1 at point 2)", t.diagonal.vals(t.action.alpha[s][f]), (1, 0))


@example("factor_through_z2", "Γ_c of Δ(Z2) over Z2 is the skew ring of its diagonal, 4 elements")
def _ft_z2(log):
    G = groupoid.cyclic(2)
    rep = check_factor_through(G, constant_sheaf(G, zn(2)), groupoid.all_bisections(G))
    log.expect("sizes", (rep.lhs, rep.rhs), (4, 4))
    log.expect("bijective homomorphism", rep.ok, True)


@example("factor_through_units2", "unit groupoid on 2 points: both sides are Z2 x Z2")
def _ft_u2(log):
    G = groupoid.units(2)
    rep = check_factor_through(G, constant_sheaf(G, zn(2)), groupoid.all_bisections(G))
    log.expect("sizes", (rep.lhs, rep.rhs), (4, 4))
    log.expect("bijective homomorphism", rep.ok, True)


@example("factor_through_pair_swap", "pair groupoid with the swap sheaf: 256 elements each side")
def _ft_pair(log):
    G = groupoid.pair(2)
    for name, fam in (("all", groupoid.all_bisections(G)), ("singletons", groupoid.singleton_bisections(G))):
        rep = check_factor_through(G, catalog.nonconstant_sheaf(G), fam)
        log.expect(f"{name}: sizes", (rep.lhs, rep.rhs), (256, 256))
        log.expect(f"{name}: bijective homomorphism", rep.ok, True)


@example("disintegration_z2", "regular module of Z2[Z2]: eta and v are isomorphisms")
def _dis(log):
    C = ConvAlgebra(constant_sheaf(groupoid.cyclic(2), zn(2)))
    eta, v = disintegration_roundtrips(C, regular_module(C.ring))
    log.expect("|M|", eta.lhs, 4)
    log.expect("eta iso", eta.ok, True)
    log.expect("v iso", v.ok, True)


@example("sheafify_pair", "stalks of the regular module over M2(Z2) have |M|/|N_x| elements")
def _sheafify(log):
    C = ConvAlgebra(constant_sheaf(groupoid.pair(2), zn(2)))
    st = sheafify_module(C, regular_module(C.ring))
    log.expect("|N_x|", [len(k) for k in st.kernels], [4, 4])
    log.expect("stalk sizes", [M.n for M in st.sheaf.stalks], [4, 4])


@example("swap_germ_sheaf", "germ groupoid of the swap action: 2 points, 4 arrows")
def _germ(log):
    gs = germ_sheaf(catalog.swap_action())
    G = gs.sheaf.base
    log.expect("(objects, arrows)", (G.n_objects, G.n_arrows), (2, 4))
    log.expect("stalk sizes", [R.n for R in gs.sheaf.stalks], [2, 2])
    log.note("arrows: " + " ".join(G.labels))


def _main(log, act):
    rep = check_main_theorem(act)
    log.expect("sizes equal", rep.lhs == rep.rhs, True)
    log.expect("mutually inverse isomorphisms", rep.ok, True)
    log.note(rep.to_json())


@example("trivial_main_theorem", "Z2 acting trivially on Z2: both sides are Z2[Z2]")
def _main_trivial(log):
    _main(log, catalog.trivial_group_action())


@example("chain_main_theorem", "two-element chain on Z2 x Z2: both sides are Z2 x Z2")
def _main_chain(log):
    _main(log, catalog.chain_action())


@example("swap_main_theorem", "swap on Z2 x Z2: A⋊S is the convolution algebra over the germ groupoid")
def _main_swap(log):
    _main(log, catalog.swap_action())


def names():
    return sorted(REGISTRY)


def run(name):
    if name not in REGISTRY:
        raise UnknownExample(f"unknown example {name!r}")
    log = _Log()
    REGISTRY[name][1](log)
    return log.lines, log.ok
