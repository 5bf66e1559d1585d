"""Exact enumeration of all extreme equilibria of a small bimatrix game.

After a positive shift the best-response polytopes

    P = {x >= 0 : B^T x <= 1}    Q = {y >= 0 : A y <= 1}

are bounded. Every vertex of Q with support J solves A[R, J] y_J = 1 for
some set R of |J| tight rows with A[R, J] nonsingular, so trying every
(J, R) pair of equal size finds all vertices, degenerate ones included.
Equilibria are the completely labelled vertex pairs, normalized.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from ..errors import BudgetError
from ..games import BimatrixGame, MixedProfile, transpose
from .common import SolveResult, integer_matrix, positive_shift

DEFAULT_BUDGET = 3_000_000


def solve_integer_system(M: list[list[int]]) -> list[Fraction] | None:
    """Solve M z = 1 by fraction-free elimination; None when M is singular."""
    n = len(M)
    rows = [row[:] + [1] for row in M]
    prev = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        p = rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c]
            rr = rows[r]
            pc = rows[c]
            for j in range(c, n + 1):
                rr[j] = (rr[j] * p - pc[j] * f) // prev
        prev = p
    z = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(rows[r][n])
        for j in range(r + 1, n):
            acc -= rows[r][j] * z[j]
        z[r] = acc / rows[r][r]
    return z


def polytope_vertices(M: list[list[int]], max_support: int) -> list[tuple[tuple[Fraction, ...], int]]:
    """Nonzero vertices of {z >= 0 : M z <= 1} with their label bitmasks.

    Labels: bit j for z_j = 0, bit q + i for a tight row i (q = len(M[0])).
    """
    p, q = len(M), len(M[0])
    seen = {}
    for s in range(1, max_support + 1):
        for J in combinations(range(q), s):
            for R in combinations(range(p), s):
                z_J = solve_integer_system([[M[i][j] for j in J] for i in R])
                if z_J is None or any(v <= 0 for v in z_J):
                    continue
                z = [Fraction(0)] * q
                for j, v in zip(J, z_J):
                    z[j] = v
                key = tuple(z)
                if key in seen:
                    continue
                labels = 0
                ok = True
                for i in range(p):
                    lhs = sum((M[i][j] * z[j] for j in J), Fraction(0))
                    if lhs > 1:
                        ok = False
                        break
                    if lhs == 1:
                        labels |= 1 << (q + i)
                if not ok:
                    continue
                for j in range(q):
                    if z[j] == 0:
                        labels |= 1 << j
                seen[key] = labels
    return list(seen.items())


def work_estimate(m: int, n: int, max_support: int) -> int:
    return 2 * sum(comb(m, s) * comb(n, s) for s in range(1, max_support + 1))


def support_enumeration(game: BimatrixGame, max_support: int | None = None,
                        budget: int = DEFAULT_BUDGET) -> SolveResult:
    m, n = game.shape
    if max_support is None:
        max_support = min(m, n)
    if max_support < 1:
        raise ValueError("max_support must be at least 1")
    max_support = min(max_support, m, n)
    work = work_estimate(m, n, max_support)
    if work > budget:
        raise BudgetError(f"{m}x{n} game needs about {work} linear systems, budget is {budget}")
    shift = positive_shift(game)
    A = integer_matrix(game.A, shift)
    Bt = integer_matrix(transpose(game.B), shift)
    # y-vertices: bits j (< n) for y_j = 0 and n + i for tight rows -> remap to
    # the global labels i (rows) and m + j (columns).
    ys = []
    for y, lab in polytope_vertices(A, max_support):
        g = 0
        for j in range(n):
            if lab >> j & 1:
                g |= 1 << (m + j)
        for i in range(m):
            if lab >> (n + i) & 1:
                g |= 1 << i
        ys.append((y, g))
    xs = []
    for x, lab in polytope_vertices(Bt, max_support):
        g = 0
        for i in range(m):
            if lab >> i & 1:
                g |= 1 << i
        for j in range(n):
            if lab >> (m + j) & 1:
                g |= 1 << (m + j)
        xs.append((x, g))
    full = (1 << (m + n)) - 1
    found = set()
    for x, gx in xs:
        for y, gy in ys:
            if gx | gy == full:
                sx, sy = sum(x), sum(y)
                found.add((tuple(v / sx for v in x), tuple(v / sy for v in y)))
    eqs = tuple(MixedProfile(x, y) for x, y in sorted(found))
    stats = {"systems": work, "x_vertices": len(xs), "y_vertices": len(ys), "shift": shift}
    return SolveResult(eqs, "SupportEnum", stats)
