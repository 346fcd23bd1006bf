"""Reference computations written independently of the main code paths."""
from __future__ import annotations

import numpy as np


def modulus_of(R):
    """n if R is literally Z/n on 0..n-1, else None."""
    idx = np.arange(R.n)
    if (R.add == (idx[:, None] + idx[None, :]) % R.n).all() and \
            (R.mul == (idx[:, None] * idx[None, :]) % R.n).all():
        return R.n
    return None


def steinberg_convolve(G, n, f, g):
    """Classical groupoid-ring product over Z/n.

    (f*g)(c) = sum over b with d(b) = d(c) of f(c b^-1) g(b); f, g are lists of
    residues indexed by arrows.
    """
    out = []
    for c in range(G.n_arrows):
        total = 0
        for b in range(G.n_arrows):
            if G.d[b] != G.d[c]:
                continue
            cb = G.comp[c][G.inv[b]]
            total += f[cb] * g[b]
        out.append(total % n)
    return out

