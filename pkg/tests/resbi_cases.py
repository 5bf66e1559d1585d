"""Frozen n = 3 layout oracle and small polymatrix builders shared by the tests."""

from winlose.poly2bimatrix import K
from winlose.polymatrix import RestrictedPolymatrixGame
from winlose.purecircuit import NOT, PureCircuitInstance

# Non-gadget cells of the n = 3 game, read off the printed table (0-based
# row, column). Everything outside the primary-primary block not listed is 0.
N3_LAYOUT_A = {(0, 7): 1, (1, 7): 1, (2, 8): 1, (3, 8): 1, (4, 9): 1, (5, 9): 1, (6, 10): 1,
            (7, 0): K, (7, 1): K, (8, 2): K, (8, 3): K, (9, 4): K, (9, 5): K, (10, 6): 1}
N3_LAYOUT_B = {(0, 8): K, (1, 8): K, (2, 9): K, (3, 9): K, (4, 10): K, (5, 10): K,
            (6, 0): 1, (6, 1): 1, (7, 2): 1, (7, 3): 1, (8, 4): 1, (8, 5): 1, (9, 6): 1, (10, 7): 1}


def dummy(n_left, n_right, edges=None):
    players = [f"l{i}" for i in range(n_left)] + [f"r{i}" for i in range(n_right)]
    sides = {p: p[0].upper() for p in players}
    return RestrictedPolymatrixGame.make(players, sides, edges or {})


def not_ring(length: int) -> PureCircuitInstance:
    names = tuple(f"x{i}" for i in range(length))
    return PureCircuitInstance(names, tuple(NOT(names[i], names[(i + 1) % length]) for i in range(length)))


def nonzero_outside_gadgets(M, n):
    return {(r, c): M[r][c] for r in range(len(M)) for c in range(len(M))
            if M[r][c] != 0 and not (r < 2 * n and c < 2 * n)}
