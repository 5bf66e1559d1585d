"""Block layout shared by the type-one and type-two single column simulations.

With block width w (2 for type one, 3 for type two), encoded column j < k
owns rows rb^j = {wj, ..., wj+w-1}, columns cb_1^j = {(w+1)j, ..., (w+1)j+w-1}
and cb_2^j = {(w+1)j+w}. The original rows sit in rb_e starting at row wk and
column j >= k is copied to column (w+1)k + (j-k).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import DimensionError
from ..games import BimatrixGame, Matrix, MixedProfile, transpose, zeros
from .common import Side, SimulationRecord, check_regime, finish, resolve_eps


def build_single(game: BimatrixGame, k: int, S: Matrix, T: Matrix,
                 encode: Callable[[Sequence[Fraction]], list[list[Fraction]]]) -> BimatrixGame:
    w = len(S)
    n_rows, n_cols = game.shape
    rows = w * k + n_rows
    cols = (w + 1) * k + (n_cols - k)
    A = zeros(rows, cols)
    B = zeros(rows, cols)
    A_cols = transpose(game.A)
    for j in range(k):
        c1 = (w + 1) * j
        for r in range(w):
            for c in range(w):
                A[w * j + r][c1 + c] = S[r][c]
                B[w * j + r][c1 + c] = T[r][c]
            A[w * j + r][c1 + w] = Fraction(1)
        block = encode(A_cols[j])
        for i in range(n_rows):
            for c in range(w):
                A[w * k + i][c1 + c] = block[i][c]
            B[w * k + i][c1 + w] = game.B[i][j]
    for j in range(k, n_cols):
        col = (w + 1) * k + (j - k)
        for i in range(n_rows):
            A[w * k + i][col] = game.A[i][j]
            B[w * k + i][col] = game.B[i][j]
    return BimatrixGame(A, B)


def oriented(record: SimulationRecord, profile: MixedProfile,
             translate: Callable[[MixedProfile], MixedProfile]) -> MixedProfile:
    """Run a row-side translate, swapping players around it for column-side records."""
    if (len(profile.x), len(profile.y)) != record.game_out_dims:
        raise DimensionError(
            f"profile is {len(profile.x)}x{len(profile.y)} but the built game is "
            f"{record.game_out_dims[0]}x{record.game_out_dims[1]}")
    if record.side is Side.COLUMN:
        return translate(profile.swapped()).swapped()
    return translate(profile)


def translate_single(record: SimulationRecord, profile: MixedProfile, eps,
                     enforce_regime: bool, w: int) -> MixedProfile:
    eps = resolve_eps(record, eps)
    if enforce_regime:
        check_regime(record, eps)
    k = record.k
    n_rows, n_cols = record.in_dims
    cut = record.threshold * eps

    def row_side(p: MixedProfile) -> MixedProfile:
        xs, ys = p.x, p.y
        x_prime = list(xs[w * k: w * k + n_rows])
        y_prime = []
        for j in range(n_cols):
            if j < k:
                c1 = (w + 1) * j
                mass = sum(ys[c1: c1 + w], Fraction(0))
                y_prime.append(ys[c1] if mass >= cut else Fraction(0))
            else:
                y_prime.append(ys[(w + 1) * k + (j - k)])
        return finish(record, x_prime, y_prime)

    return oriented(record, profile, row_side)
