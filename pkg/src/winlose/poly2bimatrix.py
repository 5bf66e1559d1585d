"""From a restricted polymatrix game to a 3-sparse {0,1,2,8} bimatrix game.

The row player simulates the L side and the column player the R side. Each
side has n primary indices (two actions each, one per bit) and n+2
secondary actions; the secondary payoffs form a generalized matching
pennies that forces both players to spread their mass almost evenly over
the indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateMassError, InvalidInstanceError, PreconditionError, ThresholdError
from .games import BimatrixGame, MixedProfile, to_rational, zeros
from .polymatrix import IDENTITY, RestrictedPolymatrixGame, validate_restricted

K = 8


@dataclass(frozen=True)
class PaddingRecord:
    """Dummy players added per side, in the order they were created."""

    left: tuple[str, ...] = ()
    right: tuple[str, ...] = ()

    @property
    def rounds(self) -> int:
        return (len(self.left) + len(self.right)) // 3


@dataclass(frozen=True)
class Poly2BimatrixLayout:
    n: int
    left: tuple[str, ...]   # primary index i of the row player -> player name
    right: tuple[str, ...]  # primary index j of the column player -> player name
    padding: PaddingRecord = field(default_factory=PaddingRecord)
    K: int = K

    @property
    def m(self) -> int:
        return 3 * self.n + 2

    @property
    def N(self) -> int:
        return 2 * self.n + 2

    def primary(self, i: int, t: int) -> int:
        return 2 * i + t

    def secondary(self, j: int) -> int:
        """Position of secondary index j (n <= j < N)."""
        return 2 * self.n + (j - self.n)

    @property
    def original_players(self) -> tuple[str, ...]:
        pad = set(self.padding.left) | set(self.padding.right)
        return tuple(p for p in self.left + self.right if p not in pad)

    def regime(self) -> Fraction:
        """Strict upper bound on eps for the translate-back guarantee."""
        return Fraction(1, 6 * self.K * self.N)


def _fresh(base: str, taken: set[str]) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    taken.add(name)
    return name


def balance_bipartition(g: RestrictedPolymatrixGame) -> tuple[RestrictedPolymatrixGame, PaddingRecord]:
    report = validate_restricted(g)
    if not report.ok:
        raise InvalidInstanceError(report.format(), report)
    players = list(g.players)
    sides = dict(g.sides)
    edges = dict(g.edges)
    taken = set(players)
    added = {"L": [], "R": []}
    r = 0
    while True:
        nl = sum(1 for p in players if sides[p] == "L")
        nr = len(players) - nl
        if nl == nr:
            break
        small, large = ("L", "R") if nl < nr else ("R", "L")
        i = _fresh(f"pad{r}a", taken)
        i2 = _fresh(f"pad{r}b", taken)
        j = _fresh(f"pad{r}c", taken)
        for p, s in ((i, small), (i2, small), (j, large)):
            players.append(p)
            sides[p] = s
            added[s].append(p)
        for a in (i, i2):
            edges[(a, j)] = IDENTITY
            edges[(j, a)] = IDENTITY
        r += 1
    out = RestrictedPolymatrixGame.make(players, sides, edges)
    return out, PaddingRecord(tuple(added["L"]), tuple(added["R"]))


def build(g: RestrictedPolymatrixGame, padding: PaddingRecord | None = None) -> tuple[BimatrixGame, Poly2BimatrixLayout]:
    left, right = g.side("L"), g.side("R")
    if len(left) != len(right):
        raise PreconditionError(f"sides have {len(left)} and {len(right)} players; balance them first")
    if not left:
        raise PreconditionError("the game has no players")
    layout = Poly2BimatrixLayout(len(left), left, right, padding or PaddingRecord())
    n, m, N = layout.n, layout.m, layout.N
    A = zeros(m, m)
    B = zeros(m, m)
    for i, pi in enumerate(left):
        for j, pj in enumerate(right):
            Mij = g.matrix(pi, pj)   # left player's payoff
            Mji = g.matrix(pj, pi)   # right player's payoff
            for s in (0, 1):
                for t in (0, 1):
                    A[2 * i + s][2 * j + t] = Mij[s][t]
                    B[2 * i + s][2 * j + t] = Mji[t][s]
    sec = range(n, N)
    for i in range(n):
        for j in sec:
            d = (j - i) % N
            for s in (0, 1):
                if d == n + 1:
                    A[2 * i + s][layout.secondary(j)] = Fraction(1)
                if d == n + 2:
                    B[2 * i + s][layout.secondary(j)] = Fraction(K)
    for i in sec:
        for j in range(n):
            d = (j - i) % N
            for t in (0, 1):
                if d == n + 1:
                    A[layout.secondary(i)][2 * j + t] = Fraction(K)
                if d == n + 2:
                    B[layout.secondary(i)][2 * j + t] = Fraction(1)
    for i in sec:
        for j in sec:
            d = (j - i) % N
            if d == n + 1:
                A[layout.secondary(i)][layout.secondary(j)] = Fraction(1)
            if d == n + 2:
                B[layout.secondary(i)][layout.secondary(j)] = Fraction(1)
    return BimatrixGame(A, B), layout


def build_from_polymatrix(g: RestrictedPolymatrixGame) -> tuple[BimatrixGame, Poly2BimatrixLayout]:
    """Pad the bipartition, then build."""
    padded, record = balance_bipartition(g)
    return build(padded, record)


def index_masses(layout: Poly2BimatrixLayout, v: Sequence[Fraction]) -> list[Fraction]:
    """Mass on each of the N indices: a primary pair summed, or one secondary action."""
    n = layout.n
    out = [v[2 * i] + v[2 * i + 1] for i in range(n)]
    out += [v[layout.secondary(j)] for j in range(n, layout.N)]
    return out


def translate_back(layout: Poly2BimatrixLayout, profile: MixedProfile, eps,
                   enforce_regime: bool = True) -> tuple[dict[str, Fraction], Fraction]:
    """Recover a polymatrix profile; returns it with delta = 3*K*N*eps."""
    eps = to_rational(eps)
    if len(profile.x) != layout.m or len(profile.y) != layout.m:
        raise PreconditionError(f"profile does not fit the {layout.m}x{layout.m} game")
    if enforce_regime and eps >= layout.regime():
        raise ThresholdError(f"eps = {eps} is not below 1/(6KN) = {layout.regime()}")
    prof = {}
    for side, names, v in (("row", layout.left, profile.x), ("column", layout.right, profile.y)):
        for i, name in enumerate(names):
            mass = v[2 * i] + v[2 * i + 1]
            if mass == 0:
                raise DegenerateMassError(f"{side} primary index {i} ({name}) has zero probability")
            prof[name] = v[2 * i + 1] / mass
    keep = layout.original_players
    delta = 3 * layout.K * layout.N * eps
    return {p: prof[p] for p in keep}, delta
