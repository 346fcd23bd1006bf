import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gckit import kernels
from gckit.finring import matrix_ring, product, zn


def brute_compat(mul, act):
    n, m = act.shape
    for a in range(mul.shape[0]):
        for b in range(mul.shape[0]):
            for c in range(m):
                if act[mul[a, b], c] != act[a, act[b, c]]:
                    return (a, b, c)
    return None


def brute_hom(f, src, tgt):
    for a in range(len(f)):
        for b in range(len(f)):
            if f[src[a, b]] != tgt[f[a], f[b]]:
                return (a, b)
    return None


tables = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))


def test_ring_tables_have_no_witness(impl):
    for R in (zn(7), product(zn(2), zn(3)), matrix_ring(2, 2)):
        assert kernels.compat_witness(R.mul, R.mul, impl) is None
        assert kernels.linear_witness(R.mul, R.add, impl) is None
        assert kernels.additive_witness(R.mul, R.add, R.add, impl) is None
        assert kernels.hom_witness(np.arange(R.n), R.mul, R.mul, impl) is None


def test_planted_fault_is_found(impl):
    R = zn(5)
    mul = np.array(R.mul)
    mul[2, 3] = 0
    assert kernels.compat_witness(mul, mul, impl) is not None
    assert kernels.linear_witness(mul, R.add, impl) is not None


@settings(max_examples=80, deadline=None)
@given(tables)
def test_compat_matches_brute_force(impl, t):
    t = np.array(t, dtype=np.int32)
    assert kernels.compat_witness(t, t, impl) == brute_compat(t, t)


@settings(max_examples=80, deadline=None)
@given(tables, st.data())
def test_hom_witness_matches_brute_force(impl, t, data):
    t = np.array(t, dtype=np.int32)
    f = np.array(data.draw(st.lists(st.integers(0, len(t) - 1), min_size=len(t), max_size=len(t))))
    assert kernels.hom_witness(f, t, t, impl) == brute_hom(f, t, t)


def test_pure_python_switch():
    env = dict(os.environ, GCKIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from gckit import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
