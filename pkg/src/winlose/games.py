"""Exact bimatrix games, mixed profiles and regret computation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidProfileError, ZeroMassError

Rational = Fraction
Matrix = tuple[tuple[Fraction, ...], ...]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they would silently bring rounding into checks that
    are meant to be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_rational(v) for v in row) for row in rows)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else ()


def zeros(n_rows: int, n_cols: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n_cols for _ in range(n_rows)]


@dataclass(frozen=True)
class BimatrixGame:
    """A two-player game (A, B); A pays the row player, B the column player."""

    A: Matrix
    B: Matrix

    def __post_init__(self):
        A = as_matrix(self.A)
        B = as_matrix(self.B)
        if not A or not A[0]:
            raise DimensionError("a game needs at least one row and one column")
        width = len(A[0])
        if any(len(r) != width for r in A):
            raise DimensionError("A is ragged")
        if len(B) != len(A) or any(len(r) != width for r in B):
            raise DimensionError("A and B must have identical dimensions")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n_rows(self) -> int:
        return len(self.A)

    @property
    def n_cols(self) -> int:
        return len(self.A[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BimatrixGame":
        """Game whose row r is old row ``row_perm[r]`` (same for columns)."""
        A = tuple(tuple(self.A[i][j] for j in col_perm) for i in row_perm)
        B = tuple(tuple(self.B[i][j] for j in col_perm) for i in row_perm)
        return BimatrixGame(A, B)


def _check_distribution(v: tuple[Fraction, ...], name: str) -> None:
    if not v:
        raise InvalidProfileError(f"{name} is empty")
    for i, p in enumerate(v):
        if p < 0:
            raise InvalidProfileError(f"{name}[{i}] = {p} is negative")
    total = sum(v)
    if total != 1:
        raise InvalidProfileError(f"{name} sums to {total}, not 1")


@dataclass(frozen=True)
class MixedProfile:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        x = tuple(to_rational(v) for v in self.x)
        y = tuple(to_rational(v) for v in self.y)
        _check_distribution(x, "x")
        _check_distribution(y, "y")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def row_support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.x) if p > 0)

    @property
    def col_support(self) -> tuple[int, ...]:
        return tuple(j for j, p in enumerate(self.y) if p > 0)

    def swapped(self) -> "MixedProfile":
        return MixedProfile(self.y, self.x)

    @classmethod
    def pure(cls, n_rows: int, n_cols: int, i: int, j: int) -> "MixedProfile":
        x = [Fraction(0)] * n_rows
        y = [Fraction(0)] * n_cols
        x[i] = Fraction(1)
        y[j] = Fraction(1)
        return cls(tuple(x), tuple(y))


@dataclass(frozen=True)
class RegretReport:
    row_best: Fraction
    col_best: Fraction
    row_supported_min: Fraction
    col_supported_min: Fraction
    row_payoff: Fraction
    col_payoff: Fraction

    @property
    def row_wsne_gap(self) -> Fraction:
        return self.row_best - self.row_supported_min

    @property
    def col_wsne_gap(self) -> Fraction:
        return self.col_best - self.col_supported_min

    @property
    def wsne_eps(self) -> Fraction:
        return max(self.row_wsne_gap, self.col_wsne_gap)

    @property
    def ne_eps(self) -> Fraction:
        return max(self.row_best - self.row_payoff, self.col_best - self.col_payoff)

    def swapped(self) -> "RegretReport":
        return RegretReport(self.col_best, self.row_best, self.col_supported_min,
                            self.row_supported_min, self.col_payoff, self.row_payoff)

    def format(self) -> str:
        return (f"row: best {self.row_best}, worst supported {self.row_supported_min}, payoff {self.row_payoff}\n"
                f"col: best {self.col_best}, worst supported {self.col_supported_min}, payoff {self.col_payoff}\n"
                f"wsne_eps {self.wsne_eps}, ne_eps {self.ne_eps}")


def _check_dims(game: BimatrixGame, profile: MixedProfile) -> None:
    if len(profile.x) != game.n_rows or len(profile.y) != game.n_cols:
        raise DimensionError(
            f"profile is {len(profile.x)}x{len(profile.y)} but game is {game.n_rows}x{game.n_cols}")


def _dot_sparse(row: Sequence[Fraction], vec: Sequence[Fraction], support: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for j in support:
        a = row[j]
        if a:
            total += a * vec[j]
    return total


def row_utilities(game: BimatrixGame, y: Sequence[Fraction]) -> list[Fraction]:
    """Payoff e_i A y of every pure row against y."""
    supp = [j for j, p in enumerate(y) if p]
    return [_dot_sparse(row, y, supp) for row in game.A]


def col_utilities(game: BimatrixGame, x: Sequence[Fraction]) -> list[Fraction]:
    """Payoff x^T B e_j of every pure column against x."""
    out = [Fraction(0)] * game.n_cols
    for i, p in enumerate(x):
        if not p:
            continue
        for j, b in enumerate(game.B[i]):
            if b:
                out[j] += p * b
    return out


def eval_payoffs(game: BimatrixGame, profile: MixedProfile) -> tuple[Fraction, Fraction]:
    _check_dims(game, profile)
    u = row_utilities(game, profile.y)
    v = col_utilities(game, profile.x)
    return (sum((p * u[i] for i, p in enumerate(profile.x) if p), Fraction(0)),
            sum((q * v[j] for j, q in enumerate(profile.y) if q), Fraction(0)))


def regret(game: BimatrixGame, profile: MixedProfile) -> RegretReport:
    _check_dims(game, profile)
    u = row_utilities(game, profile.y)
    v = col_utilities(game, profile.x)
    xs, ys = profile.row_support, profile.col_support
    return RegretReport(
        row_best=max(u),
        col_best=max(v),
        row_supported_min=min(u[i] for i in xs),
        col_supported_min=min(v[j] for j in ys),
        row_payoff=sum((profile.x[i] * u[i] for i in xs), Fraction(0)),
        col_payoff=sum((profile.y[j] * v[j] for j in ys), Fraction(0)),
    )


def verify_wsne(game: BimatrixGame, profile: MixedProfile, eps) -> bool:
    eps = to_rational(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return regret(game, profile).wsne_eps <= eps


def verify_ne(game: BimatrixGame, profile: MixedProfile, eps) -> bool:
    eps = to_rational(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return regret(game, profile).ne_eps <= eps


def transpose_swap(game: BimatrixGame) -> BimatrixGame:
    return BimatrixGame(transpose(game.B), transpose(game.A))


def renormalize(v: Sequence) -> tuple[Fraction, ...]:
    w = tuple(to_rational(a) for a in v)
    if any(a < 0 for a in w):
        raise InvalidProfileError("cannot renormalize a vector with negative entries")
    total = sum(w, Fraction(0))
    if total == 0:
        raise ZeroMassError("vector has zero total mass")
    return tuple(a / total for a in w)


def payoff_spread(game: BimatrixGame) -> Fraction:
    entries = [a for M in (game.A, game.B) for row in M for a in row]
    return max(entries) - min(entries)
