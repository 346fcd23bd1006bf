import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gckit import boolalg
from gckit.errors import NotSeparable
from gckit.finring import functions, zn


def brute_characters(B):
    out = []
    for lam in itertools.product((0, 1), repeat=B.n):
        if not any(lam) or lam[B.zero]:
            continue
        if all(lam[B.m(a, b)] == lam[a] & lam[b] and lam[B.j(a, b)] == lam[a] | lam[b]
               and lam[B.minus(a, b)] == lam[a] & (1 - lam[b])
               for a in range(B.n) for b in range(B.n)):
            out.append(lam)
    return out


@pytest.mark.parametrize("k", range(6))
def test_free_algebra_duality(k):
    B = boolalg.free(k)
    assert B.n == 2 ** k
    chars = boolalg.characters(B)
    ufs = boolalg.ultrafilters(B)
    assert len(chars) == len(ufs) == k
    assert {frozenset(i for i, v in enumerate(lam) if v) for lam in chars} == set(ufs)
    assert boolalg.boolean_facts_problem(B) is None
    assert boolalg.stone_map_problem(B) is None


@pytest.mark.parametrize("k", range(4))
def test_characters_match_brute_force(k):
    B = boolalg.free(k)
    assert sorted(boolalg.characters(B)) == sorted(brute_characters(B))


@pytest.mark.parametrize("k", range(4))
def test_filters_match_brute_force(k):
    B = boolalg.free(k)
    assert boolalg.all_filters(B) == boolalg.all_filters_bruteforce(B)


def test_central_idempotents_of_z6():
    B = boolalg.from_central_idempotents(zn(6))
    assert list(B.elements) == [0, 1, 3, 4]
    assert [B.elements[a] for a in B.atoms()] == [3, 4]
    assert boolalg.boolean_facts_problem(B) is None


def test_z30_has_three_points():
    B = boolalg.from_central_idempotents(zn(30))
    assert B.n == 8
    assert len(boolalg.characters(B)) == 3


def test_separation():
    B = boolalg.free(3)
    lam = boolalg.separate(B, 0b011, 0b001)
    assert boolalg.is_character(B, lam) and lam[0b011] == 1 and lam[0b001] == 0
    with pytest.raises(NotSeparable):
        boolalg.separate(B, 0b001, 0b011)


def test_rejects_non_boolean_tables():
    # three-element chain: no relative complements
    meet = [[min(a, b) for b in range(3)] for a in range(3)]
    join = [[max(a, b) for b in range(3)] for a in range(3)]
    with pytest.raises(ValueError):
        boolalg.GenBooleanAlgebra(meet, join, [[0] * 3] * 3, 0)


R4 = functions(4, zn(2))


@given(st.lists(st.integers(0, R4.n - 1), max_size=3))
def test_generated_subalgebra_is_closed(gens):
    B = boolalg.generated_subalgebra(R4, gens)
    elems = set(B.elements)
    assert set(gens) <= elems
    for e, f in itertools.product(elems, repeat=2):
        assert R4.times(e, f) in elems
        assert R4.minus(e, R4.times(e, f)) in elems
    assert len(boolalg.characters(B)) == len(B.atoms())


B5 = boolalg.free(5)
B5_CHARS = boolalg.characters(B5)


@given(st.integers(0, 31), st.integers(0, 31))
def test_stone_sets_respect_operations(a, b):
    B = B5
    D = lambda x: boolalg.stone_set(B, x, B5_CHARS)
    assert D(B.m(a, b)) == D(a) & D(b)
    assert D(B.j(a, b)) == D(a) | D(b)
    assert D(B.minus(a, b)) == D(a) - D(b)
