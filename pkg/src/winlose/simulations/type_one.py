"""Type-one single column simulation: halves the large payoff K (8 -> 4 -> 2).

Every column of A holding K is replaced by a 2x3 gadget (S, a column of 1s)
that splits the column player's mass 1:2, so the encoded column can carry
K/2 where it used to carry K.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Sequence

from ..errors import MixedScaleError, PatternError
from ..games import BimatrixGame, MixedProfile, as_matrix, transpose
from .common import PermutationPair, Side, SimKind, SimulationRecord
from .single import build_single, translate_single

S = as_matrix([[2, 0], [0, 1]])
T = as_matrix([[0, 1], [1, 0]])

# Nonzero entries other than K allowed in a K-column, sorted.
PATTERNS = {(), (1,), (1, 1), (2,), (1, 2), (2, 2), (1, 1, 1)}


def detect_K(A) -> int | None:
    values = {v for row in A for v in row}
    bad = values - {0, 1, 2, 4, 8}
    if bad:
        cols = sorted({j for row in A for j, v in enumerate(row) if v in bad})
        raise PatternError(f"entries {sorted(map(str, bad))} are outside {{0,1,2,4,8}} (columns {cols})")
    if 8 in values and 4 in values:
        raise MixedScaleError("the matrix contains both 8 and 4")
    if 8 in values:
        return 8
    if 4 in values:
        return 4
    return None


def _pattern(col: Sequence[Fraction], K: int) -> tuple | None:
    c = Counter(v for v in col if v != 0)
    if c[K] != 1:
        return None
    rest = tuple(sorted(int(v) for v in col if v != 0 and v != K))
    return rest if rest in PATTERNS else None


def prepare_type_one(game: BimatrixGame) -> tuple[BimatrixGame, PermutationPair, int, int | None]:
    """Move the K-columns of A to the front (stable); returns (game, perms, k, K)."""
    K = detect_K(game.A)
    n_rows, n_cols = game.shape
    if K is None:
        return game, PermutationPair.identity(n_rows, n_cols), 0, None
    cols = transpose(game.A)
    k_cols = [j for j, col in enumerate(cols) if K in col]
    bad = [j for j in k_cols if _pattern(cols[j], K) is None]
    if bad:
        raise PatternError(f"K-columns {bad} match none of the type-one patterns")
    other = [j for j in range(n_cols) if j not in set(k_cols)]
    perms = PermutationPair(tuple(range(n_rows)), tuple(k_cols + other))
    return game.permuted(perms.row_perm, perms.col_perm), perms, len(k_cols), K


def encode_type_one(col: Sequence, K: int) -> list[list[Fraction]]:
    """Two-column encoding of a K-column; entries keep their rows."""
    col = [Fraction(v) for v in col]
    if _pattern(col, K) is None:
        raise PatternError(f"column {[str(v) for v in col]} matches no type-one pattern for K={K}")
    out = []
    for v in col:
        if v == 1:
            out.append([Fraction(1), Fraction(0)])
        elif v == 2:
            out.append([Fraction(0), Fraction(1)])
        elif v == K:
            out.append([Fraction(0), Fraction(K, 2)])
        else:
            out.append([Fraction(0), Fraction(0)])
    return out


def build_type_one(game: BimatrixGame, k: int, K: int | None, eps=None,
                   perms: PermutationPair | None = None) -> tuple[BimatrixGame, SimulationRecord]:
    """Build from an already prepared game (K-columns first)."""
    if k and K is None:
        raise PatternError("k > 0 needs a value of K")
    built = build_single(game, k, S, T, lambda col: encode_type_one(col, K))
    record = SimulationRecord(
        kind=SimKind.TYPE_ONE, side=Side.ROW, k=k, in_dims=game.shape, out_dims=built.shape,
        perms=perms or PermutationPair.identity(*game.shape), K=K,
        eps=None if eps is None else Fraction(eps))
    return built, record


def simulate_type_one(game: BimatrixGame, eps=None) -> tuple[BimatrixGame, SimulationRecord]:
    prepared, perms, k, K = prepare_type_one(game)
    return build_type_one(prepared, k, K, eps, perms)


def translate_back_type_one(record: SimulationRecord, profile: MixedProfile, eps=None,
                            enforce_regime: bool = True) -> MixedProfile:
    return translate_single(record, profile, eps, enforce_regime, w=2)
