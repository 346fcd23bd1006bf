"""Backend selection for the table kernels.

The compiled module is used when it was built; GCKIT_PURE_PYTHON=1 forces the
numpy fallback.
"""
import os

import numpy as np

from gckit import _pykernels

try:
    if os.environ.get("GCKIT_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from gckit import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"


def as_table(t):
    return np.ascontiguousarray(t, dtype=np.int32)


def compat_witness(mul, act, impl=None):
    """First (a, b, c) with act[mul[a,b], c] != act[a, act[b,c]].

    With act = mul this is an associativity check."""
    return (impl or _impl).compat_witness(as_table(mul), as_table(act))


def linear_witness(act, add, impl=None):
    """First (r, x, y) with act[r, x+y] != act[r,x] + act[r,y]."""
    return (impl or _impl).linear_witness(as_table(act), as_table(add))


def additive_witness(act, add_src, add_tgt, impl=None):
    """First (r, s, x) with act[r+s, x] != act[r,x] + act[s,x]."""
    return (impl or _impl).additive_witness(as_table(act), as_table(add_src), as_table(add_tgt))


def hom_witness(f, op_src, op_tgt, impl=None):
    """First (a, b) with f[a*b] != f[a]*f[b]."""
    f = np.ascontiguousarray(f, dtype=np.int32)
    return (impl or _impl).hom_witness(f, as_table(op_src), as_table(op_tgt))
