import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gckit import finsem, groupoid
from gckit.catalog import grid_groupoids
from gckit.errors import NotAGroupoid, NotAnAction, NotSubsemigroup
from gckit.groupoid import cyclic, pair, units


def brute_bisections(G):
    out = []
    for k in range(G.n_arrows + 1):
        for B in itertools.combinations(range(G.n_arrows), k):
            if len({G.d[g] for g in B}) == k and len({G.r[g] for g in B}) == k:
                out.append(frozenset(B))
    return out


GROUPOIDS = grid_groupoids() + [("pair3", pair(3)), ("group_Z3", groupoid.group(finsem.cyclic_group(3)))]


@pytest.mark.parametrize("name,G", GROUPOIDS)
def test_bisections_match_brute_force(name, G):
    assert set(groupoid.enumerate_bisections(G)) == set(brute_bisections(G))


def test_bisection_counts():
    assert len(groupoid.enumerate_bisections(units(3))) == 8
    assert len(groupoid.enumerate_bisections(cyclic(3))) == 4
    # bisections of the pair groupoid are the partial bijections
    assert len(groupoid.enumerate_bisections(pair(3))) == 34


def test_pair_bisections_form_symmetric_inverse_monoid():
    S = groupoid.all_bisections(pair(2))
    assert (S.n, len(S.idempotents)) == (7, 4)


@pytest.mark.parametrize("name,G", GROUPOIDS)
def test_germs_of_bisection_action_recover_groupoid(name, G):
    germs = groupoid.groupoid_of_germs(groupoid.rho_from_bisections(G))
    assert groupoid.find_groupoid_isomorphism(G, germs.base) is not None


@pytest.mark.parametrize("name,G", grid_groupoids())
def test_germ_conditions(name, G):
    assert groupoid.germ_conditions(G, groupoid.all_bisections(G)) == (True, True)
    assert groupoid.germ_conditions(G, groupoid.singleton_bisections(G)) == (True, True)
    assert groupoid.germ_conditions(G, [frozenset()]).g1 is False


def test_units_only_fail_covering():
    G = pair(2)
    fam = groupoid.closure(G, [frozenset([u]) for u in G.unit])
    assert groupoid.germ_conditions(G, fam).g1 is False


def test_non_closed_family_rejected():
    G = pair(2)
    off = [g for g in range(G.n_arrows) if g not in G.unit_set]
    with pytest.raises(NotSubsemigroup):
        groupoid.bisection_semigroup(G, [frozenset(), frozenset([off[0]])])


def test_invalid_groupoid_rejected():
    with pytest.raises(NotAGroupoid):
        groupoid.FiniteGroupoid(1, [0, 0], [0, 0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})


def test_action_must_be_multiplicative():
    S = finsem.cyclic_group(2)
    with pytest.raises(NotAnAction):
        groupoid.BooleanAction(S, 2, [[0, 1], [0, 1]], [{0: 0, 1: 1}, {0: 0, 1: 0}])


P3 = pair(3)
P3_BIS = groupoid.enumerate_bisections(P3)


@given(st.sampled_from(P3_BIS), st.sampled_from(P3_BIS), st.sampled_from(P3_BIS))
def test_bisection_algebra(U, V, W):
    prod, star = groupoid.bisection_product, groupoid.bisection_star
    assert groupoid.is_bisection(P3, prod(P3, U, V))
    assert prod(P3, prod(P3, U, V), W) == prod(P3, U, prod(P3, V, W))
    assert star(P3, prod(P3, U, V)) == prod(P3, star(P3, V), star(P3, U))
    assert prod(P3, prod(P3, U, star(P3, U)), U) == U
