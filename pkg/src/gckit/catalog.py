"""Standard small instances shared by the worked examples, packs and tests."""
from __future__ import annotations

from gckit.finring import product, zn
from gckit.finsem import chain_semilattice, cyclic_group
from gckit.groupoid import cyclic, pair, units
from gckit.sheaf import GSheafOfRings, constant_sheaf
from gckit.skew import SpectralAction, group_action, trivial_action

# index map of the coordinate swap on Z2 x Z2 (product indexing (a, b) -> 2a + b)
SWAP = (0, 2, 1, 3)


def v4():
    return product(zn(2), zn(2))


def grid_groupoids():
    return [("units1", units(1)), ("units2", units(2)), ("units3", units(3)),
            ("pair2", pair(2)), ("Z2", cyclic(2))]


def nonconstant_sheaf(G):
    """A sheaf that is not constant on the given grid groupoid.

    Unit groupoids get alternating stalks Z2, Z3; the pair groupoid and the
    two-element group get Z2 x Z2 with non-identity arrows acting by the
    coordinate swap. Over a single point every sheaf is constant, so there the
    stalk is Z2 x Z2.
    """
    ident4 = tuple(range(4))
    if G.n_arrows == G.n_objects:
        if G.n_objects == 1:
            return GSheafOfRings(G, [v4()], [ident4])
        rings = [zn(2) if x % 2 == 0 else zn(3) for x in range(G.n_objects)]
        return GSheafOfRings(G, rings, [tuple(range(R.n)) for R in rings])
    V = v4()
    act = [ident4 if g in G.unit_set else SWAP
           for g in range(G.n_arrows)]
    return GSheafOfRings(G, [V] * G.n_objects, act)


def sheaf_grid():
    """(name, groupoid, sheaf) over the grid groupoids times Δ(Z2), Δ(Z3), Δ(Z4) and one
    non-constant sheaf."""
    out = []
    for gname, G in grid_groupoids():
        for n in (2, 3, 4):
            out.append((f"{gname}/Z{n}", G, constant_sheaf(G, zn(n))))
        out.append((f"{gname}/nonconst", G, nonconstant_sheaf(G)))
    return out


def chain_action():
    """Two-element chain {e > f} on Z2 x Z2 with D_e = A and D_f = Z2 x 0."""
    S = chain_semilattice(2)
    A = v4()
    return SpectralAction(S, A, [range(4), [0, 2]], [list(range(4)), [0, -1, 2, -1]])


def trivial_group_action():
    return trivial_action(cyclic_group(2), zn(2))


def swap_action():
    return group_action(cyclic_group(2), v4(), [list(range(4)), list(SWAP)])


def main_actions():
    return [("trivial_Z2_on_Z2", trivial_group_action()), ("chain_on_Z2xZ2", chain_action()),
            ("swap_on_Z2xZ2", swap_action())]
