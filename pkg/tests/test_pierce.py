import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gckit import boolalg, catalog
from gckit.errors import NotLocalUnits
from gckit.finring import dual_numbers, field4, functions, matrix_ring, null_ring, product, zn
from gckit.pierce import PierceSpectrum, character_table, spectrum_action, pierce_iso, stalks_indecomposable


def prime_power_parts(n):
    parts, p = [], 2
    while n > 1:
        q = 1
        while n % p == 0:
            n //= p
            q *= p
        if q > 1:
            parts.append(q)
        p += 1
    return sorted(parts)


RINGS = [("Z2xZ2", catalog.v4()), ("Z6", zn(6)), ("Z2xZ3xZ2", product(zn(2), zn(3), zn(2))),
         ("UT2", matrix_ring(2, 2, upper=True)), ("M2", matrix_ring(2, 2)), ("F4", field4()),
         ("Z2[e]", dual_numbers(2)), ("Z2^3", functions(3, zn(2)))]


@pytest.mark.parametrize("name,R", RINGS)
def test_gelfand_map_is_isomorphism(name, R):
    psi = pierce_iso(R)
    assert psi.injective() and psi.surjective()
    assert psi.kernel() == frozenset([R.zero])


@pytest.mark.parametrize("name,R", [r for r in RINGS if r[1].is_commutative()])
def test_commutative_stalks_indecomposable(name, R):
    assert stalks_indecomposable(PierceSpectrum(R))


def test_frozen_stalks():
    assert [st.ring.n for st in PierceSpectrum(product(zn(2), zn(3), zn(2))).stalks] == [2, 3, 2]
    P = PierceSpectrum(zn(6))
    assert [sorted(st.ideal.members) for st in P.stalks] == [[0, 2, 4], [0, 3]]
    assert PierceSpectrum(matrix_ring(2, 2, upper=True)).n_points == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 60))
def test_cyclic_ring_stalks_are_prime_power_parts(n):
    P = PierceSpectrum(zn(n))
    assert sorted(s.ring.n for s in P.stalks) == prime_power_parts(n)
    assert P.gelfand_iso.surjective()


def test_coarser_boolean_algebra():
    R = zn(6)
    P = PierceSpectrum(R, boolalg.from_central_idempotents(R, [0, 1]))
    assert P.n_points == 1 and P.stalks[0].ring.n == 6


def test_needs_local_units():
    with pytest.raises(NotLocalUnits):
        PierceSpectrum(null_ring(2))
    with pytest.raises(NotLocalUnits):
        PierceSpectrum(zn(6), boolalg.from_central_idempotents(zn(6), [0, 3]))


def test_character_table():
    P = PierceSpectrum(zn(30))
    t = character_table(P)
    assert t.shape == (3, 8)
    # each point is 1 on the four idempotents above its atom, including 1
    assert (t.sum(axis=1) == 4).all() and (t[:, P.B.index_of(1)] == 1).all()


def test_swap_action_swaps_points():
    hat, P = spectrum_action(catalog.swap_action())
    assert P.n_points == 2
    assert hat.rho[1] == {0: 1, 1: 0}


def test_chain_action_domains():
    hat, P = spectrum_action(catalog.chain_action())
    assert hat.dom[0] == frozenset([0, 1])
    assert hat.dom[1] == P.basic_open(2) and len(P.basic_open(2)) == 1
