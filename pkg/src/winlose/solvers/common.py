from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from ..games import BimatrixGame, Matrix, MixedProfile


@dataclass(frozen=True)
class SolveResult:
    equilibria: tuple[MixedProfile, ...]
    method: str  # "SupportEnum" or "LemkeHowson"
    stats: dict = field(default_factory=dict)


def positive_shift(game: BimatrixGame) -> Fraction:
    """Shift 1 + |min entry| that makes every payoff at least 1."""
    low = min(min(min(r) for r in game.A), min(min(r) for r in game.B))
    return 1 + abs(low)


def integer_matrix(M: Matrix, shift) -> list[list[int]]:
    """(M + shift) scaled by the lcm of its denominators."""
    shifted = [[Fraction(v) + shift for v in row] for row in M]
    den = 1
    for row in shifted:
        for v in row:
            den = lcm(den, v.denominator)
    return [[int(v * den) for v in row] for row in shifted]


def profile_key(p: MixedProfile) -> tuple:
    return (p.x, p.y)
