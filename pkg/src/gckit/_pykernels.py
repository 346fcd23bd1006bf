"""numpy fallback for the compiled kernels; same contracts, same witnesses."""
import numpy as np


def _first(bad):
    return tuple(int(i) for i in np.argwhere(bad)[0])


def compat_witness(mul, act):
    for a in range(mul.shape[0]):
        bad = act[mul[a]] != act[a][act]
        if bad.any():
            return (a,) + _first(bad)
    return None


def linear_witness(act, add):
    for r in range(act.shape[0]):
        row = act[r]
        bad = row[add] != add[row[:, None], row[None, :]]
        if bad.any():
            return (r,) + _first(bad)
    return None


def additive_witness(act, add_src, add_tgt):
    for r in range(add_src.shape[0]):
        bad = act[add_src[r]] != add_tgt[act[r][None, :], act]
        if bad.any():
            return (r,) + _first(bad)
    return None


def hom_witness(f, op_src, op_tgt):
    bad = f[op_src] != op_tgt[f[:, None], f[None, :]]
    if bad.any():
        return _first(bad)
    return None
