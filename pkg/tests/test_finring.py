import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gckit import finring
from gckit.errors import NotAHomomorphism, NotARing, NotAModule, SizeLimit
from gckit.finring import (FiniteModule, RingHom, dual_numbers, field4, matrix_ring, null_ring,
                           product, zn)


def brute_homs(R, T):
    out = []
    for m in itertools.product(range(T.n), repeat=R.n):
        if all(m[R.plus(a, b)] == T.plus(m[a], m[b]) and m[R.times(a, b)] == T.times(m[a], m[b])
               for a in range(R.n) for b in range(R.n)):
            out.append(m)
    return out


def cyclic_hom_count(m, n):
    # a hom Z_m -> Z_n is determined by the image e of 1: e idempotent with m e = 0
    return sum(1 for e in range(n) if e * e % n == e and m * e % n == 0)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 4), (3, 6), (4, 2), (6, 6), (6, 3), (5, 10)])
def test_cyclic_hom_counts(m, n):
    assert len(finring.enumerate_homs(zn(m), zn(n))) == cyclic_hom_count(m, n)


@pytest.mark.parametrize("R,T", [(product(zn(2), zn(2)), zn(2)), (matrix_ring(2, 2, upper=True), zn(2)),
                                 (field4(), product(zn(2), zn(2))), (dual_numbers(2), zn(4)),
                                 (null_ring(2), zn(2))])
def test_homs_match_brute_force(R, T):
    assert [tuple(h.map.tolist()) for h in finring.enumerate_homs(R, T)] == brute_homs(R, T)


def test_ring_sizes_and_units():
    assert matrix_ring(2, 2).n == 16
    assert matrix_ring(2, 2, upper=True).n == 8
    assert field4().is_commutative() and field4().one is not None
    assert null_ring(3).one is None
    assert not matrix_ring(2, 2).is_commutative()


def test_ideals_of_z12():
    # ideals of Z_n correspond to divisors of n
    assert len(finring.ideals(zn(12))) == 6
    assert sorted(finring.ideal_generated(zn(6), [2]).members) == [0, 2, 4]


def test_quotient():
    R = zn(6)
    Q, proj = finring.quotient_ring(R, finring.ideal_generated(R, [2]))
    assert Q.n == 2 and Q.reps == (0, 1)
    assert finring.find_isomorphism(Q, zn(2)) is not None
    assert proj.surjective()


def test_matrix_ring_ideals_are_trivial():
    assert len(finring.ideals(matrix_ring(2, 2))) == 2


def test_central_idempotents():
    assert finring.central_idempotents(zn(6)) == [0, 1, 3, 4]
    UT = matrix_ring(2, 2, upper=True)
    assert len(finring.idempotents(UT)) > len(finring.central_idempotents(UT)) == 2


def test_isomorphism_search():
    assert finring.find_isomorphism(zn(6), product(zn(2), zn(3))) is not None
    assert finring.find_isomorphism(zn(4), product(zn(2), zn(2))) is None
    assert finring.find_isomorphism(field4(), product(zn(2), zn(2))) is None


def test_bad_tables_are_rejected_with_tags():
    R = zn(3)
    mul = np.array(R.mul)
    mul[1, 1] = 2
    with pytest.raises(NotARing) as err:
        finring.FiniteRing(R.add, mul)
    assert err.value.tag in {"MulAssoc", "LeftDistrib", "RightDistrib"}
    with pytest.raises(NotARing):
        finring.FiniteRing([[0, 1], [1, 1]], [[0, 0], [0, 0]])


def test_hom_rejects_non_maps():
    with pytest.raises(NotAHomomorphism):
        RingHom(zn(2), zn(4), [0, 1])
    with pytest.raises(NotAHomomorphism):
        RingHom(zn(2), zn(4), [0, 5])


def test_hom_inverse_roundtrip():
    h = finring.find_isomorphism(zn(6), product(zn(2), zn(3)))
    assert (h.then(h.inverse()).map == np.arange(6)).all()


def test_module_checks():
    R = zn(4)
    M = finring.regular_module(R)
    assert M.is_unitary()
    sub, emb = M.submodule([0, 2])
    assert sub.n == 2 and emb == (0, 2)
    with pytest.raises(NotAModule):
        M.submodule([0, 1])
    # Z4 acting on Z2 by r.m = r m mod 2 is a module; r.m = m is not
    FiniteModule(R, zn(2).add, [[(r * m) % 2 for m in range(2)] for r in range(4)])
    with pytest.raises(NotAModule):
        FiniteModule(R, zn(2).add, [[m for m in range(2)] for r in range(4)])


def test_null_module_is_not_unitary():
    R = null_ring(2)
    assert not finring.regular_module(R).is_unitary()


def test_size_guard(monkeypatch):
    monkeypatch.setenv("GCKIT_SIZE_LIMIT", "8")
    with pytest.raises(SizeLimit):
        zn(9)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_product_of_cyclic_rings(m, n):
    P = product(zn(m), zn(n))
    assert P.n == m * n and P.is_commutative()
    assert (finring.find_isomorphism(P, zn(m * n)) is not None) == (np.gcd(m, n) == 1)
