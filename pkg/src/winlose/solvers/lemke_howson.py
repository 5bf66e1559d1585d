"""Lemke-Howson with exact rational pivoting and a lexicographic ratio test.

Two tableaux are kept, one per best-response polytope:

    B^T x + r = 1    (rows: columns of the game)
    A y + s = 1      (rows: rows of the game)

Label i < m belongs to x_i and s_i, label m + j to y_j and r_j. Rows are
sparse dicts so that the very sparse pipeline games stay cheap to pivot.
"""

from __future__ import annotations

import os
from fractions import Fraction

from ..errors import BudgetError, SolverError
from ..games import BimatrixGame, MixedProfile, verify_wsne
from .common import SolveResult, positive_shift

DEFAULT_MAX_PIVOTS = 200_000


def max_pivots() -> int:
    raw = os.environ.get("HF_MAX_PIVOTS")
    if raw is None:
        return DEFAULT_MAX_PIVOTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"HF_MAX_PIVOTS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("HF_MAX_PIVOTS must be positive")
    return value


class _Tableau:
    def __init__(self, rows: list[dict[int, Fraction]], basis: list[int], slack_labels: list[int]):
        self.rows = rows          # row r: basis[r] + sum(coef * var) = rhs, rhs stored under key -1
        self.basis = basis
        self.slacks = slack_labels  # lexicographic order of the initial basis columns

    def _lex_key_less(self, a: int, b: int, e: int) -> bool:
        ra, rb = self.rows[a], self.rows[b]
        ca, cb = ra[e], rb[e]
        for key in [-1] + self.slacks:
            va = ra.get(key, 0) * cb
            vb = rb.get(key, 0) * ca
            if va != vb:
                return va < vb
        return a < b

    def pivot(self, e: int) -> int:
        """Bring label e into the basis; returns the label that leaves."""
        best = None
        for r, row in enumerate(self.rows):
            c = row.get(e, 0)
            if c > 0 and (best is None or self._lex_key_less(r, best, e)):
                best = r
        if best is None:
            raise SolverError("unbounded ray: the game violates the polytope assumptions")
        prow = self.rows[best]
        c = prow[e]
        if c != 1:
            for key in prow:
                prow[key] /= c
        for r, row in enumerate(self.rows):
            if r == best:
                continue
            f = row.get(e, 0)
            if f:
                for key, v in prow.items():
                    nv = row.get(key, 0) - f * v
                    if nv:
                        row[key] = nv
                    else:
                        row.pop(key, None)
        leaving = self.basis[best]
        self.basis[best] = e
        return leaving

    def values(self, labels: range) -> list[Fraction]:
        where = {lab: r for r, lab in enumerate(self.basis)}
        return [self.rows[where[lab]].get(-1, Fraction(0)) if lab in where else Fraction(0) for lab in labels]


def _needs_shift(game: BimatrixGame) -> bool:
    if any(v < 0 for M in (game.A, game.B) for row in M for v in row):
        return True
    m, n = game.shape
    if any(all(game.A[i][j] == 0 for i in range(m)) for j in range(n)):
        return True
    return any(all(v == 0 for v in row) for row in game.B)


def lemke_howson(game: BimatrixGame, initial_label: int = 0, pivot_budget: int | None = None) -> SolveResult:
    m, n = game.shape
    if not 0 <= initial_label < m + n:
        raise ValueError(f"initial_label must lie in [0, {m + n})")
    budget = max_pivots() if pivot_budget is None else pivot_budget
    shift = positive_shift(game) if _needs_shift(game) else Fraction(0)
    one = Fraction(1)
    # P side: row j is  r_j + sum_i B[i][j] x_i = 1
    p_rows = []
    for j in range(n):
        row = {m + j: one, -1: one}
        for i in range(m):
            v = game.B[i][j] + shift
            if v:
                row[i] = v
        p_rows.append(row)
    p_tab = _Tableau(p_rows, [m + j for j in range(n)], [m + j for j in range(n)])
    # Q side: row i is  s_i + sum_j A[i][j] y_j = 1
    q_rows = []
    for i in range(m):
        row = {i: one, -1: one}
        for j in range(n):
            v = game.A[i][j] + shift
            if v:
                row[m + j] = v
        q_rows.append(row)
    q_tab = _Tableau(q_rows, list(range(m)), list(range(m)))

    tab = p_tab if initial_label < m else q_tab
    entering = initial_label
    pivots = 0
    while True:
        if pivots >= budget:
            raise BudgetError(f"Lemke-Howson exceeded {budget} pivots")
        leaving = tab.pivot(entering)
        pivots += 1
        if leaving == initial_label:
            break
        entering = leaving
        tab = q_tab if tab is p_tab else p_tab
    x = p_tab.values(range(m))
    y = q_tab.values(range(m, m + n))
    sx, sy = sum(x), sum(y)
    profile = MixedProfile(tuple(v / sx for v in x), tuple(v / sy for v in y))
    if not verify_wsne(game, profile, 0):
        raise SolverError("Lemke-Howson returned a profile that is not an exact equilibrium")
    return SolveResult((profile,), "LemkeHowson",
                       {"pivots": pivots, "shift": shift, "initial_label": initial_label})
