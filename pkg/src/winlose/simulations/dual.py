"""Dual column simulation: merges the two 2s of a row into a single 2.

A row with exactly two 2s (in columns that each hold one 1 besides the 2)
has its column pair replaced by three columns c1, c2, c3 and four helper
rows. At equilibrium c1 = c2 + c3, so a single 2 in c1 pays what the two
2s used to pay.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Sequence

from ..errors import PatternError
from ..games import BimatrixGame, MixedProfile, as_matrix, transpose, zeros
from .common import PermutationPair, Side, SimKind, SimulationRecord, check_regime, finish, resolve_eps
from .single import oriented

S = as_matrix([[1, 0, 0], [0, 1, 1]])
T1 = as_matrix([[0, 1, 0], [1, 0, 0]])
T2 = as_matrix([[0, 0, 1], [1, 0, 0]])


def _pair_rows(col: Sequence[Fraction], two_row: int) -> int | None:
    """Row of the single 1 in a paired column, or None if the column is not {2, 1}."""
    nz = {i: v for i, v in enumerate(col) if v != 0}
    if nz.get(two_row) != 2 or len(nz) != 2:
        return None
    (one_row, v), = [(i, v) for i, v in nz.items() if i != two_row]
    return one_row if v == 1 else None


def prepare_dual(game: BimatrixGame) -> tuple[BimatrixGame, PermutationPair, int]:
    """Rows with two 2s first; row i's 2s moved to columns 2i and 2i+1."""
    n_rows, n_cols = game.shape
    values = {v for row in game.A for v in row}
    if not values <= {0, 1, 2}:
        bad = sorted(str(v) for v in values - {0, 1, 2})
        raise PatternError(f"dual input must be {{0,1,2}}-valued, found {bad}")
    cols = transpose(game.A)
    pair_rows, pair_cols, used = [], [], set()
    problems = []
    for i, row in enumerate(game.A):
        c = Counter(v for v in row if v != 0)
        if c[2] < 2:
            continue
        if c[2] > 2 or c[1]:
            problems.append(f"row {i} has two or more 2s together with other payoffs")
            continue
        a, b = [j for j, v in enumerate(row) if v == 2]
        ra, rb = _pair_rows(cols[a], i), _pair_rows(cols[b], i)
        if ra is None or rb is None:
            problems.append(f"row {i}: columns {a},{b} must each hold the 2 and exactly one 1")
            continue
        if ra == rb:
            problems.append(f"row {i}: the 1s of columns {a},{b} share row {ra}")
            continue
        if a in used or b in used:
            problems.append(f"row {i}: columns {a},{b} are already paired with another row")
            continue
        used |= {a, b}
        pair_rows.append(i)
        pair_cols += [a, b]
    if problems:
        raise PatternError("; ".join(problems))
    rest_rows = [i for i in range(n_rows) if i not in set(pair_rows)]
    rest_cols = [j for j in range(n_cols) if j not in used]
    perms = PermutationPair(tuple(pair_rows + rest_rows), tuple(pair_cols + rest_cols))
    return game.permuted(perms.row_perm, perms.col_perm), perms, len(pair_rows)


def encode_dual(col_a: Sequence, col_b: Sequence) -> list[list[Fraction]]:
    """Three-column encoding of a column pair sharing a row of 2s."""
    col_a = [Fraction(v) for v in col_a]
    col_b = [Fraction(v) for v in col_b]
    twos = [i for i, (a, b) in enumerate(zip(col_a, col_b)) if a == 2 and b == 2]
    if len(twos) != 1:
        raise PatternError("a dual pair needs exactly one shared row of 2s")
    r = twos[0]
    ra, rb = _pair_rows(col_a, r), _pair_rows(col_b, r)
    if ra is None or rb is None or ra == rb:
        raise PatternError("each column of a dual pair needs its own single 1 besides the 2")
    out = [[Fraction(0)] * 3 for _ in col_a]
    out[r][0] = Fraction(2)
    out[ra][1] = Fraction(1)
    out[rb][2] = Fraction(1)
    return out


def build_dual(game: BimatrixGame, k: int, eps=None,
               perms: PermutationPair | None = None) -> tuple[BimatrixGame, SimulationRecord]:
    n_rows, n_cols = game.shape
    rows = 4 * k + n_rows
    cols = 5 * k + (n_cols - 2 * k)
    A = zeros(rows, cols)
    B = zeros(rows, cols)
    A_cols = transpose(game.A)
    for i in range(k):
        c1 = 5 * i
        for half, Tm in ((0, T1), (1, T2)):
            top = 4 * i + 2 * half
            for r in range(2):
                for c in range(3):
                    A[top + r][c1 + c] = S[r][c]
                    B[top + r][c1 + c] = Tm[r][c]
                A[top + r][c1 + 3 + half] = Fraction(1)
        block = encode_dual(A_cols[2 * i], A_cols[2 * i + 1])
        for r in range(n_rows):
            for c in range(3):
                A[4 * k + r][c1 + c] = block[r][c]
            B[4 * k + r][c1 + 3] = game.B[r][2 * i]
            B[4 * k + r][c1 + 4] = game.B[r][2 * i + 1]
    for j in range(2 * k, n_cols):
        col = 5 * k + (j - 2 * k)
        for r in range(n_rows):
            A[4 * k + r][col] = game.A[r][j]
            B[4 * k + r][col] = game.B[r][j]
    built = BimatrixGame(A, B)
    record = SimulationRecord(
        kind=SimKind.DUAL, side=Side.ROW, k=k, in_dims=game.shape, out_dims=built.shape,
        perms=perms or PermutationPair.identity(n_rows, n_cols),
        eps=None if eps is None else Fraction(eps))
    return built, record


def simulate_dual(game: BimatrixGame, eps=None) -> tuple[BimatrixGame, SimulationRecord]:
    prepared, perms, k = prepare_dual(game)
    return build_dual(prepared, k, eps, perms)


def translate_back_dual(record: SimulationRecord, profile: MixedProfile, eps=None,
                        enforce_regime: bool = True) -> MixedProfile:
    eps = resolve_eps(record, eps)
    if enforce_regime:
        check_regime(record, eps)
    k = record.k
    n_rows, n_cols = record.in_dims
    cut = record.threshold * eps

    def row_side(p: MixedProfile) -> MixedProfile:
        x_prime = list(p.x[4 * k: 4 * k + n_rows])
        y_prime = []
        for j in range(n_cols):
            if j // 2 < k:
                v = p.y[5 * (j // 2) + 1 + (j % 2)]
                y_prime.append(Fraction(0) if v < cut else v)
            else:
                y_prime.append(p.y[5 * k + (j - 2 * k)])
        return finish(record, x_prime, y_prime)

    return oriented(record, profile, row_side)
