"""Type-two single column simulation: turns every 2 into 1s.

A column holding a 2 (or four 1s) becomes three columns tied together by a
3x3 gadget that splits the column player's mass evenly; the 2 is written as
1s in two of the three columns.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Sequence

from ..errors import PatternError
from ..games import BimatrixGame, MixedProfile, as_matrix, transpose
from .common import PermutationPair, Side, SimKind, SimulationRecord
from .single import build_single, translate_single

S = as_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
T = as_matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])

PATTERNS = {(2,), (1, 2), (1, 1, 2), (1, 1, 1, 2), (1, 1, 1, 1)}

# Encoding of the r-th 1 (in row order) of an encoded column. A column of
# four 1s gets no [0, 1, 1] row, so exact equilibria with no mass on rb_e can
# exist; translate_back raises ZeroMassError there. The chain never produces
# such a column.
_ONE_SLOTS = ([1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1])


def needs_encoding(col: Sequence[Fraction]) -> bool:
    """True unless the column holds at most three 1s and no 2."""
    c = Counter(v for v in col if v != 0)
    return not (set(c) <= {1} and c[1] <= 3)


def _pattern(col: Sequence[Fraction]) -> tuple | None:
    nz = tuple(sorted(v for v in col if v != 0))
    if any(v not in (1, 2) for v in nz):
        return None
    nz = tuple(int(v) for v in nz)
    return nz if nz in PATTERNS else None


def prepare_type_two(game: BimatrixGame) -> tuple[BimatrixGame, PermutationPair, int]:
    n_rows, n_cols = game.shape
    values = {v for row in game.A for v in row}
    if not values <= {0, 1, 2}:
        bad = sorted(str(v) for v in values - {0, 1, 2})
        raise PatternError(f"type-two input must be {{0,1,2}}-valued, found {bad}")
    cols = transpose(game.A)
    enc = [j for j, col in enumerate(cols) if needs_encoding(col)]
    bad = [j for j in enc if _pattern(cols[j]) is None]
    if bad:
        raise PatternError(f"columns {bad} match none of the type-two patterns")
    other = [j for j in range(n_cols) if j not in set(enc)]
    perms = PermutationPair(tuple(range(n_rows)), tuple(enc + other))
    return game.permuted(perms.row_perm, perms.col_perm), perms, len(enc)


def encode_type_two(col: Sequence) -> list[list[Fraction]]:
    col = [Fraction(v) for v in col]
    if _pattern(col) is None:
        raise PatternError(f"column {[str(v) for v in col]} matches no type-two pattern")
    out = []
    ones = 0
    for v in col:
        if v == 2:
            row = [0, 1, 1]
        elif v == 1:
            row = _ONE_SLOTS[ones]
            ones += 1
        else:
            row = [0, 0, 0]
        out.append([Fraction(a) for a in row])
    return out


def build_type_two(game: BimatrixGame, k: int, eps=None,
                   perms: PermutationPair | None = None) -> tuple[BimatrixGame, SimulationRecord]:
    built = build_single(game, k, S, T, encode_type_two)
    record = SimulationRecord(
        kind=SimKind.TYPE_TWO, side=Side.ROW, k=k, in_dims=game.shape, out_dims=built.shape,
        perms=perms or PermutationPair.identity(*game.shape),
        eps=None if eps is None else Fraction(eps))
    return built, record


def simulate_type_two(game: BimatrixGame, eps=None) -> tuple[BimatrixGame, SimulationRecord]:
    prepared, perms, k = prepare_type_two(game)
    return build_type_two(prepared, k, eps, perms)


def translate_back_type_two(record: SimulationRecord, profile: MixedProfile, eps=None,
                            enforce_regime: bool = True) -> MixedProfile:
    return translate_single(record, profile, eps, enforce_regime, w=3)
