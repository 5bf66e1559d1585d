"""Records and helpers shared by the three column simulations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from ..errors import PreconditionError, ThresholdError
from ..games import MixedProfile, renormalize, to_rational


class SimKind(Enum):
    TYPE_ONE = "TypeOne"
    DUAL = "Dual"
    TYPE_TWO = "TypeTwo"


class Side(Enum):
    ROW = "Row"
    COLUMN = "Column"


# eps regime (strict upper bound is 1 / (c * n^2)) and exclusion threshold per kind
REGIME_DENOM = {SimKind.TYPE_ONE: 240, SimKind.DUAL: 600, SimKind.TYPE_TWO: 96}
THRESHOLD = {SimKind.TYPE_ONE: 11, SimKind.DUAL: 3, SimKind.TYPE_TWO: 18}


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for new, old in enumerate(perm):
        inv[old] = new
    return tuple(inv)


def check_perm(perm: Sequence[int], n: int) -> None:
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of range({n}): {list(perm)}")


@dataclass(frozen=True)
class PermutationPair:
    """Reordering applied to a game: new row r is old row ``row_perm[r]``."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "row_perm", tuple(self.row_perm))
        object.__setattr__(self, "col_perm", tuple(self.col_perm))
        check_perm(self.row_perm, len(self.row_perm))
        check_perm(self.col_perm, len(self.col_perm))

    @classmethod
    def identity(cls, n_rows: int, n_cols: int) -> "PermutationPair":
        return cls(identity_perm(n_rows), identity_perm(n_cols))

    @property
    def row_inverse(self) -> tuple[int, ...]:
        return invert(self.row_perm)

    @property
    def col_inverse(self) -> tuple[int, ...]:
        return invert(self.col_perm)

    def unpermute(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> MixedProfile:
        """Map a profile of the reordered game back to the original order."""
        xo = [Fraction(0)] * len(x)
        yo = [Fraction(0)] * len(y)
        for r, old in enumerate(self.row_perm):
            xo[old] = x[r]
        for c, old in enumerate(self.col_perm):
            yo[old] = y[c]
        return MixedProfile(tuple(xo), tuple(yo))


@dataclass(frozen=True)
class SimulationRecord:
    """Everything needed to translate a profile of the built game back.

    ``in_dims`` and ``out_dims`` are in the orientation the simulation saw,
    i.e. after the player swap when ``side`` is Column. ``eps`` is None when
    the caller supplies eps at translate time.
    """

    kind: SimKind
    side: Side
    k: int
    in_dims: tuple[int, int]
    out_dims: tuple[int, int]
    perms: PermutationPair
    K: int | None = None
    eps: Fraction | None = None

    @property
    def n(self) -> int:
        """The n used in the eps regime: the larger input dimension."""
        return max(self.in_dims)

    def regime(self) -> Fraction:
        return Fraction(1, REGIME_DENOM[self.kind] * self.n ** 2)

    @property
    def threshold(self) -> int:
        return THRESHOLD[self.kind]

    @property
    def game_in_dims(self) -> tuple[int, int]:
        """Input dimensions in the orientation of the caller's game."""
        r, c = self.in_dims
        return (r, c) if self.side is Side.ROW else (c, r)

    @property
    def game_out_dims(self) -> tuple[int, int]:
        r, c = self.out_dims
        return (r, c) if self.side is Side.ROW else (c, r)

    def blocks(self) -> dict[str, list]:
        """Row and column blocks of the built game, as index lists."""
        k, (n_rows, n_cols) = self.k, self.in_dims
        if self.kind is SimKind.DUAL:
            return {
                "rb1": [[4 * i, 4 * i + 1] for i in range(k)],
                "rb2": [[4 * i + 2, 4 * i + 3] for i in range(k)],
                "cb1": [[5 * i, 5 * i + 1, 5 * i + 2] for i in range(k)],
                "cb2": [[5 * i + 3] for i in range(k)],
                "cb3": [[5 * i + 4] for i in range(k)],
                "rb_e": list(range(4 * k, 4 * k + n_rows)),
                "passthrough": list(range(5 * k, 5 * k + n_cols - 2 * k)),
            }
        w = 2 if self.kind is SimKind.TYPE_ONE else 3
        return {
            "rb": [list(range(w * j, w * j + w)) for j in range(k)],
            "cb1": [list(range((w + 1) * j, (w + 1) * j + w)) for j in range(k)],
            "cb2": [[(w + 1) * j + w] for j in range(k)],
            "rb_e": list(range(w * k, w * k + n_rows)),
            "passthrough": list(range((w + 1) * k, (w + 1) * k + n_cols - k)),
        }


def resolve_eps(record: SimulationRecord, eps) -> Fraction:
    if eps is None:
        if record.eps is None:
            raise PreconditionError("eps was not stored at build time and must be passed")
        return record.eps
    eps = to_rational(eps)
    if record.eps is not None and eps != record.eps:
        raise PreconditionError(f"eps {eps} differs from the eps {record.eps} stored at build time")
    if eps < 0:
        raise PreconditionError("eps must be nonnegative")
    return eps


def check_regime(record: SimulationRecord, eps: Fraction, step=None) -> None:
    bound = record.regime()
    if eps >= bound:
        raise ThresholdError(
            f"{record.kind.value}: eps = {eps} is not below 1/({REGIME_DENOM[record.kind]}*{record.n}^2) = {bound}",
            step)


def finish(record: SimulationRecord, x_prime: list, y_prime: list) -> MixedProfile:
    x = renormalize(x_prime)
    y = renormalize(y_prime)
    return record.perms.unpermute(x, y)
