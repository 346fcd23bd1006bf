"""The eleven acceptance criteria, each under its runtime bound.

A summary line per criterion is printed at the end of the pytest run.
"""
import itertools
import os
import shutil
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from gckit import boolalg, catalog, finring, finsem, groupoid, kernels, skew
from gckit.conv import ConvAlgebra
from gckit.equiv import check_factor_through, check_main_theorem, disintegration_roundtrips, summand_module
from gckit.finring import matrix_ring, product, regular_module, zn
from gckit.groupoid import cyclic, pair, units
from gckit.oracles import steinberg_convolve
from gckit.pierce import PierceSpectrum, stalks_indecomposable
from gckit.sheaf import constant_sheaf

ROOT = Path(__file__).resolve().parent.parent


@contextmanager
def criterion(log, number, title, limit):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        log.append(f"criterion {number:2d} FAIL  {title}")
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < limit
    log.append(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} "
               f"({elapsed:.2f}s, limit {limit:g}s)")
    assert ok, f"took {elapsed:.2f}s, limit {limit}s"


def test_01_inverse_semigroups(acceptance_log):
    with criterion(acceptance_log, 1, "inverse-semigroup kernel", 1):
        I2 = finsem.symmetric_inverse_monoid(2)
        assert (I2.n, len(I2.idempotents)) == (7, 4)
        for n, size in ((2, 7), (3, 34)):
            S = finsem.symmetric_inverse_monoid(n)
            assert S.n == size
            for s, t in itertools.product(range(S.n), repeat=2):
                assert S.star[S(s, t)] == S(S.star[t], S.star[s])
            for e, f in itertools.product(S.idempotents, repeat=2):
                assert S(e, f) == S(f, e)


def test_02_stone_duality(acceptance_log):
    with criterion(acceptance_log, 2, "Stone duality up to 5 atoms", 1):
        # every finite generalized Boolean algebra with k atoms is the power set of k points
        for k in range(6):
            B = boolalg.free(k)
            chars = boolalg.characters(B)
            ones = [frozenset(i for i, v in enumerate(lam) if v) for lam in chars]
            assert len(set(ones)) == len(ones) == len(boolalg.ultrafilters(B)) == k
            assert set(ones) == set(boolalg.ultrafilters(B))
            assert boolalg.boolean_facts_problem(B) is None


def test_03_convolution(acceptance_log):
    with criterion(acceptance_log, 3, "convolution ring on the sheaf grid", 10):
        for name, G, O in catalog.sheaf_grid():
            C = ConvAlgebra(O)
            R = C.ring
            assert kernels.compat_witness(R.mul, R.mul) is None, name
            assert kernels.linear_witness(R.mul, R.add) is None, name
            assert kernels.additive_witness(R.mul, R.add, R.add) is None, name
            bis = groupoid.enumerate_bisections(G)
            for U, V in itertools.product(bis, repeat=2):
                assert C.convolve(C.indicator(U), C.indicator(V)) == C.indicator(groupoid.bisection_product(G, U, V))
            if name.endswith("nonconst"):
                continue
            n = int(name.rsplit("Z", 1)[1])
            els = C.elements()
            for f, g in itertools.product(els, repeat=2):
                got = C.vals(R.times(C.code(f), C.code(g)))
                assert list(got) == steinberg_convolve(G, n, f, g), (name, f, g)


def test_04_center(acceptance_log):
    with criterion(acceptance_log, 4, "centre equals class functions", 10):
        for name, G, O in catalog.sheaf_grid():
            C = ConvAlgebra(O)
            assert sorted(C.center()) == sorted(C.class_functions()), name
        C = ConvAlgebra(constant_sheaf(pair(2), zn(2)))
        assert len(C.center()) == 2 == len(finring.center(matrix_ring(2, 2)))


def test_05_skew_rings(acceptance_log):
    with criterion(acceptance_log, 5, "skew-ring kernel", 5):
        R = skew.skew_ring(catalog.trivial_group_action())
        C = ConvAlgebra(constant_sheaf(cyclic(2), zn(2)))
        assert len(R.relations) == 1
        assert (R.ring.add == C.ring.add).all() and (R.ring.mul == C.ring.mul).all()
        assert len(skew.skew_ring(catalog.swap_action()).relations) == 1
        R = skew.skew_ring(catalog.chain_action())
        assert (len(R.relations), R.ring.n) == (2, 4)
        assert R.ring_map.injective() and R.ring_map.surjective()
        for _, act in catalog.main_actions():
            assert skew.skew_ring(act).check_embedding()


def test_06_adjunction(acceptance_log):
    with criterion(acceptance_log, 6, "adjunction by double enumeration", 60):
        R = skew.skew_ring(catalog.chain_action())
        for name, T in skew.target_catalog():
            assert T.n <= 8
            nh, ns, ok = skew.adjunction_check(R, T)
            assert ok and nh == ns, name


def test_07_pierce(acceptance_log):
    with criterion(acceptance_log, 7, "Pierce sheaf representation", 5):
        for R in (catalog.v4(), zn(6), product(zn(2), zn(3), zn(2)), matrix_ring(2, 2, upper=True)):
            P = PierceSpectrum(R)
            assert P.gelfand_iso.injective() and P.gelfand_iso.surjective()
            if R.is_commutative():
                assert stalks_indecomposable(P)


def test_08_factor_through(acceptance_log):
    with criterion(acceptance_log, 8, "convolution algebra factors through a skew ring", 60):
        for G in (units(2), cyclic(2), pair(2)):
            for O in (constant_sheaf(G, zn(2)), catalog.nonconstant_sheaf(G)):
                for fam in (groupoid.all_bisections(G), groupoid.singleton_bisections(G)):
                    rep = check_factor_through(G, O, fam)
                    assert rep.ok and rep.lhs == rep.rhs, rep.to_json()


def test_09_disintegration(acceptance_log):
    with criterion(acceptance_log, 9, "module disintegration round trips", 30):
        for name, G, O in catalog.sheaf_grid():
            C = ConvAlgebra(O)
            mods = [regular_module(C.ring)]
            for k in range(G.n_objects + 1):
                mods += [summand_module(C, U)[0] for U in itertools.combinations(range(G.n_objects), k)]
            for M in mods:
                eta, v = disintegration_roundtrips(C, M)
                assert eta.ok and v.ok, (name, eta.to_json(), v.to_json())


def test_10_main_theorem(acceptance_log):
    with criterion(acceptance_log, 10, "skew ring equals germ-groupoid convolution ring", 60):
        for name, act in catalog.main_actions():
            rep = check_main_theorem(act)
            assert rep.ok, (name, rep.to_json())


def gckit_cmd():
    exe = shutil.which("gckit")
    return [exe] if exe else [sys.executable, "-m", "gckit.cli"]


def test_11_cli_gate(acceptance_log):
    with criterion(acceptance_log, 11, "command-line gate", 300):
        env = dict(os.environ)
        env.pop("GCKIT_SIZE_LIMIT", None)
        ok = subprocess.run(gckit_cmd() + ["verify", "examples/all.json", "--suite", "all"],
                            cwd=ROOT, env=env, capture_output=True, text=True)
        assert ok.returncode == 0, ok.stdout[-2000:] + ok.stderr
        bad = subprocess.run(gckit_cmd() + ["verify", "examples/corrupt.json", "--suite", "all"],
                             cwd=ROOT, env=env, capture_output=True, text=True)
        assert bad.returncode == 1
        assert "witness=(0, 1, 2)" in bad.stdout
