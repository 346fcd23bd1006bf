import itertools
from math import prod

import numpy as np
import pytest

from gckit import catalog, finring, groupoid
from gckit.conv import ConvAlgebra
from gckit.equiv import (check_factor_through, check_main_theorem, disintegration_roundtrips,
                         module_roundtrip, germ_sheaf, sheafify_module, summand_module,
                         transport_action, sheaf_roundtrip)
from gckit.errors import G1Fails, GermConditionsFail, NotUnitary
from gckit.finring import FiniteModule, regular_module, zn
from gckit.finsem import cyclic_group
from gckit.groupoid import cyclic, pair, units
from gckit.sheaf import constant_sheaf, regular_module_sheaf, zero_module_sheaf
from gckit.skew import group_action

THEOREM_GROUPOIDS = [("units2", units(2)), ("Z2", cyclic(2)), ("pair2", pair(2))]


def sections_size(G, O):
    # one stalk value per arrow, taken in the stalk over its range
    return prod(O.stalks[G.r[g]].n for g in range(G.n_arrows))


def theorem_sheaves():
    for gname, G in THEOREM_GROUPOIDS:
        yield f"{gname}/Z2", G, constant_sheaf(G, zn(2))
        yield f"{gname}/nonconst", G, catalog.nonconstant_sheaf(G)


SHEAVES = list(theorem_sheaves())
SHEAF_IDS = [s[0] for s in SHEAVES]


@pytest.mark.parametrize("family", ["all", "singletons"])
@pytest.mark.parametrize("name,G,O", SHEAVES, ids=SHEAF_IDS)
def test_factor_through(name, G, O, family):
    fam = groupoid.all_bisections(G) if family == "all" else groupoid.singleton_bisections(G)
    rep = check_factor_through(G, O, fam)
    assert rep.ok, rep.to_json()
    assert rep.lhs == rep.rhs == sections_size(G, O)


def test_factor_through_frozen_sizes():
    G = pair(2)
    rep = check_factor_through(G, catalog.nonconstant_sheaf(G), groupoid.all_bisections(G))
    assert (rep.lhs, rep.rhs) == (256, 256)
    d = rep.to_dict()
    assert d["sizes"] == {"lhs": 256, "rhs": 256} and d["witness_failures"] == []


def test_germ_conditions_must_hold():
    G = pair(3)
    fam = groupoid.closure(G, [frozenset([0, 6, 8]), frozenset([1, 4, 7])])
    assert groupoid.germ_conditions(G, fam) == (True, False)
    with pytest.raises(GermConditionsFail):
        check_factor_through(G, constant_sheaf(G, zn(2)), fam)


def test_tilde_needs_cover():
    G = pair(2)
    with pytest.raises(G1Fails):
        transport_action(G, constant_sheaf(G, zn(2)), groupoid.closure(G, [frozenset(G.unit)]))


def summand_size(G, O, U):
    # R chi_U: functions supported on arrows whose domain lies in U
    return prod(O.stalks[G.r[g]].n for g in range(G.n_arrows) if G.d[g] in U)


DIS = [s for s in catalog.sheaf_grid() if s[0].split("/")[1] in ("Z2", "nonconst")]


@pytest.mark.parametrize("name,G,O", DIS, ids=[s[0] for s in DIS])
def test_disintegration(name, G, O):
    C = ConvAlgebra(O)
    mods = [regular_module(C.ring)]
    for k in range(G.n_objects + 1):
        for U in itertools.combinations(range(G.n_objects), k):
            M, _ = summand_module(C, U)
            assert M.n == summand_size(G, O, U)
            mods.append(M)
    for M in mods:
        eta, v = disintegration_roundtrips(C, M)
        assert eta.ok, eta.to_json()
        assert v.ok, v.to_json()


def test_sheafified_regular_module():
    C = ConvAlgebra(constant_sheaf(pair(2), zn(2)))
    st = sheafify_module(C, regular_module(C.ring))
    assert [len(k) for k in st.kernels] == [4, 4]
    assert [M.n for M in st.sheaf.stalks] == [4, 4]
    assert module_roundtrip(C, regular_module(C.ring)).ok


@pytest.mark.parametrize("make", [regular_module_sheaf, zero_module_sheaf])
def test_v_roundtrip_on_module_sheaves(make):
    O = catalog.nonconstant_sheaf(pair(2))
    assert sheaf_roundtrip(ConvAlgebra(O), make(O)).ok


def test_non_unitary_module_rejected():
    C = ConvAlgebra(constant_sheaf(cyclic(2), zn(2)))
    M = FiniteModule(C.ring, zn(2).add, np.zeros((C.ring.n, 2), dtype=int))
    with pytest.raises(NotUnitary):
        sheafify_module(C, M)


@pytest.mark.parametrize("name,act", catalog.main_actions())
def test_main_theorem(name, act):
    rep = check_main_theorem(act)
    assert rep.ok, rep.to_json()
    assert rep.lhs == rep.rhs


def test_main_theorem_frozen_sizes():
    assert [check_main_theorem(a).lhs for _, a in catalog.main_actions()] == [4, 4, 16]


def test_swap_germ_sheaf():
    gs = germ_sheaf(catalog.swap_action())
    G = gs.sheaf.base
    assert (G.n_objects, G.n_arrows) == (2, 4)
    assert [R.n for R in gs.sheaf.stalks] == [2, 2]
    assert groupoid.find_groupoid_isomorphism(G, pair(2)) is not None


def involutions_of_z2_cubed():
    A = finring.functions(3, zn(2))
    for h in finring.enumerate_homs(A, A, injective=True):
        m = h.map.tolist()
        if h.surjective() and all(m[m[a]] == a for a in range(A.n)):
            yield A, m


@pytest.mark.parametrize("A,m", list(involutions_of_z2_cubed()))
def test_main_theorem_for_coordinate_involutions(A, m):
    act = group_action(cyclic_group(2), A, [list(range(A.n)), m])
    rep = check_main_theorem(act)
    # group case: one copy of A per group element
    assert rep.ok and rep.lhs == A.n ** 2
