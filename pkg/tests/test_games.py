from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from instances import COORD, PENNIES, S_T, game, profile
from winlose.classes import RESBI_COL, GameClass, validate_class
from winlose.errors import DimensionError, InvalidProfileError, ZeroMassError
from winlose.games import (BimatrixGame, MixedProfile, eval_payoffs, payoff_spread, regret, renormalize,
                           to_rational, transpose_swap, verify_ne, verify_wsne)


def test_eval_payoffs_examples():
    assert eval_payoffs(PENNIES, profile(["1/2", "1/2"], ["1/2", "1/2"])) == (F(1, 2), F(1, 2))
    assert eval_payoffs(S_T, profile(["1/2", "1/2"], ["1/3", "2/3"])) == (F(2, 3), F(1, 2))
    g = game([[1, 2, 3], [4, 5, 6]], [[7, 8, 9], [10, 11, 12]])
    for i in range(2):
        for j in range(3):
            assert eval_payoffs(g, MixedProfile.pure(2, 3, i, j)) == (g.A[i][j], g.B[i][j])


def test_eval_payoffs_dimension_mismatch():
    with pytest.raises(DimensionError):
        eval_payoffs(S_T, profile([1, 0, 0], [1, 0]))


def test_regret_examples():
    assert regret(S_T, profile(["1/2", "1/2"], ["1/3", "2/3"])).wsne_eps == 0
    assert regret(S_T, MixedProfile.pure(2, 2, 0, 1)).wsne_eps == 1
    assert regret(PENNIES, profile(["1/2", "1/2"], ["1/2", "1/2"])).wsne_eps == 0


def test_verify_wsne_examples():
    assert verify_wsne(S_T, profile(["1/2", "1/2"], ["1/3", "2/3"]), 0)
    assert not verify_wsne(S_T, profile(["1/2", "1/2"], ["1/2", "1/2"]), 0)
    p = profile(["1/4", "3/4"], ["1/5", "4/5"])
    assert verify_wsne(S_T, p, payoff_spread(S_T))


def test_wsne_stricter_than_ne():
    # row 1 is supported with tiny weight and is far from best
    g = game([[1, 0], [0, 0]], [[0, 0], [0, 0]])
    p = profile(["99/100", "1/100"], [1, 0])
    r = regret(g, p)
    assert r.ne_eps == F(1, 100) and r.wsne_eps == 1
    assert verify_ne(g, p, F(1, 100)) and not verify_wsne(g, p, F(1, 100))


def test_transpose_swap_examples():
    assert transpose_swap(game([[1]], [[2]])) == game([[2]], [[1]])
    assert transpose_swap(S_T) == game([[0, 1], [1, 0]], [[2, 0], [0, 1]])


def test_renormalize_examples():
    assert renormalize([F(1, 5), F(1, 5), F(1, 10)]) == (F(2, 5), F(2, 5), F(1, 5))
    assert renormalize([0, F(3, 4)]) == (0, 1)
    with pytest.raises(ZeroMassError):
        renormalize([0, 0])


def test_profile_rejects_bad_vectors():
    with pytest.raises(InvalidProfileError):
        profile(["-1/2", "3/2"], [1])
    with pytest.raises(InvalidProfileError):
        profile(["1/2", "1/3"], [1])


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert to_rational("3/6") == F(1, 2)


def test_validate_class_examples():
    assert validate_class(COORD, GameClass.WINLOSE3SPARSE).ok
    A = [[0] * 5 for _ in range(5)]
    for i, v in enumerate([1, 1, 1, 8, 0]):
        A[i][0] = v
    report = validate_class(game(A, [[0] * 5 for _ in range(5)]), GameClass.RESBI)
    assert not report.ok
    assert RESBI_COL in report.clauses()
    assert ("A column", 0, RESBI_COL) in [(v.where, v.index, v.clause) for v in report.violations]


def test_resbi_needs_square():
    g = game([[1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, 1, 0]])
    assert not validate_class(g, "resbi").ok


def test_class_tag_parsing():
    assert GameClass.parse("winlose3sparse") is GameClass.WINLOSE3SPARSE
    assert GameClass.parse("Stage-2") is GameClass.STAGE2
    with pytest.raises(ValueError):
        GameClass.parse("stage9")


# property tests

entries = st.integers(min_value=-3, max_value=8).map(F) | st.fractions(min_value=-2, max_value=2, max_denominator=5)


@st.composite
def games(draw, max_dim=4, values=entries):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    mat = st.lists(st.lists(values, min_size=n, max_size=n), min_size=m, max_size=m)
    return BimatrixGame(draw(mat), draw(mat))


@st.composite
def dists(draw, n):
    w = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any))
    s = sum(w)
    return tuple(F(v, s) for v in w)


@st.composite
def games_with_profiles(draw, values=entries):
    g = draw(games(values=values))
    return g, MixedProfile(draw(dists(g.n_rows)), draw(dists(g.n_cols)))


@settings(max_examples=150, deadline=None)
@given(games_with_profiles())
def test_regret_bounds(gp):
    g, p = gp
    r = regret(g, p)
    assert 0 <= r.ne_eps <= r.wsne_eps <= payoff_spread(g)


@settings(max_examples=100, deadline=None)
@given(games_with_profiles(), st.fractions(min_value=0, max_value=5))
def test_wsne_monotone(gp, eps):
    g, p = gp
    if verify_wsne(g, p, 0):
        assert verify_wsne(g, p, eps)
    if verify_wsne(g, p, eps):
        assert verify_wsne(g, p, eps + 1)


@settings(max_examples=100, deadline=None)
@given(games())
def test_transpose_swap_involution(g):
    assert transpose_swap(transpose_swap(g)) == g


@settings(max_examples=100, deadline=None)
@given(games_with_profiles())
def test_regret_swap_invariance(gp):
    g, p = gp
    assert regret(transpose_swap(g), p.swapped()) == regret(g, p).swapped()


@settings(max_examples=150, deadline=None)
@given(games(max_dim=5, values=st.sampled_from([F(0), F(1), F(1), F(2), F(4), F(8)])), st.randoms())
def test_validate_class_permutation_covariant(g, rnd):
    rp = list(range(g.n_rows))
    cp = list(range(g.n_cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    h = g.permuted(rp, cp)
    for cls in GameClass:
        assert validate_class(g, cls).ok == validate_class(h, cls).ok


@settings(max_examples=100, deadline=None)
@given(games(max_dim=5, values=st.sampled_from([F(0), F(1)])))
def test_winlose_subset_consistency(g):
    if validate_class(g, GameClass.WINLOSE3SPARSE).ok:
        assert all(v in (0, 1) for M in (g.A, g.B) for row in M for v in row)
