import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from instances import COORD, PENNIES, S_T, game, random_game
from winlose.errors import BudgetError
from winlose.games import MixedProfile, verify_wsne
from winlose.solvers import lemke_howson, support_enumeration
from winlose.solvers.lemke_howson import max_pivots


def _solve(M, rhs):
    """Gauss-Jordan over Fractions; None if singular."""
    n = len(M)
    a = [list(map(F, row)) + [F(r)] for row, r in zip(M, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [u - f * v for u, v in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def _indifferent(M, rows, cols):
    """Mixture z on cols making rows of M indifferent, summing to 1."""
    k = len(cols)
    eqs = [[M[rows[0]][c] - M[r][c] for c in cols] for r in rows[1:]] + [[1] * k]
    return _solve(eqs, [0] * (k - 1) + [1])


def brute_force(g):
    """Independent oracle for nondegenerate games: equal-size support pairs."""
    m, n = g.shape
    Bt = [list(col) for col in zip(*g.B)]
    out = set()
    for s in range(1, min(m, n) + 1):
        for I in combinations(range(m), s):
            for J in combinations(range(n), s):
                y = _indifferent(g.A, I, J)
                x = _indifferent(Bt, J, I)
                if y is None or x is None or min(x) <= 0 or min(y) <= 0:
                    continue
                xf = tuple(x[I.index(i)] if i in I else F(0) for i in range(m))
                yf = tuple(y[J.index(j)] if j in J else F(0) for j in range(n))
                if verify_wsne(g, MixedProfile(xf, yf), 0):
                    out.add((xf, yf))
    return out


def keys(result):
    return {(p.x, p.y) for p in result.equilibria}


def test_unique_equilibrium_example():
    eqs = support_enumeration(S_T).equilibria
    assert keys(support_enumeration(S_T)) == {((F(1, 2), F(1, 2)), (F(1, 3), F(2, 3)))}
    for label in range(4):
        assert lemke_howson(S_T, label).equilibria == eqs


def test_matching_pennies():
    half = (F(1, 2), F(1, 2))
    assert keys(support_enumeration(PENNIES)) == {(half, half)}
    assert keys(lemke_howson(PENNIES)) == {(half, half)}


def test_coordination_game():
    found = keys(support_enumeration(COORD))
    assert len(found) == 3
    assert ((F(1), F(0)), (F(1), F(0))) in found
    for label in range(4):
        assert keys(lemke_howson(COORD, label)) <= found


def test_degenerate_game_all_labels():
    g = game([[1, 1, 0], [1, 0, 1], [0, 1, 1]], [[0, 1, 1], [1, 1, 0], [1, 0, 1]])
    found = keys(support_enumeration(g))
    for label in range(6):
        assert keys(lemke_howson(g, label)) <= found


def test_support_enum_budget():
    g = game([[1] * 12] * 12, [[1] * 12] * 12)
    with pytest.raises(BudgetError):
        support_enumeration(g, budget=1000)


def test_lemke_howson_budget(monkeypatch):
    with pytest.raises(BudgetError):
        lemke_howson(S_T, pivot_budget=1)
    monkeypatch.setenv("HF_MAX_PIVOTS", "1")
    assert max_pivots() == 1
    with pytest.raises(BudgetError):
        lemke_howson(S_T)
    monkeypatch.setenv("HF_MAX_PIVOTS", "zero")
    with pytest.raises(ValueError):
        max_pivots()


def test_bad_label():
    with pytest.raises(ValueError):
        lemke_howson(S_T, 4)


def test_negative_and_zero_payoffs():
    g = game([[-2, 0], [0, -1]], [[-1, 0], [0, -2]])
    for p in support_enumeration(g).equilibria:
        assert verify_wsne(g, p, 0)
    assert verify_wsne(g, lemke_howson(g).equilibria[0], 0)
    z = game([[0, 0], [0, 0]], [[0, 0], [0, 0]])
    assert verify_wsne(z, lemke_howson(z).equilibria[0], 0)


def test_determinism():
    rng = random.Random(7)
    for _ in range(10):
        g = random_game(rng, 4, [0, 1, 2])
        assert support_enumeration(g) == support_enumeration(g)
        assert lemke_howson(g, 2 % g.n_rows) == lemke_howson(g, 2 % g.n_rows)


def test_soundness_on_win_lose_games():
    rng = random.Random(11)
    for _ in range(40):
        g = random_game(rng, 5, [0, 1])
        res = support_enumeration(g)
        assert res.equilibria
        assert all(verify_wsne(g, p, 0) for p in res.equilibria)
        for label in range(sum(g.shape)):
            assert keys(lemke_howson(g, label)) <= keys(res)


def test_agrees_with_independent_oracle():
    rng = random.Random(2024)
    # wide value range so that ties (degeneracy) do not occur in practice
    values = [F(v, 997) for v in range(-10**5, 10**5, 37)]
    for _ in range(30):
        g = random_game(rng, 6, values)
        assert keys(support_enumeration(g)) == brute_force(g)
