"""Restricted two-action bipartite polymatrix games and the circuit gadgets."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InvalidInstanceError, NotAWsneError, ThresholdError
from .games import Matrix, as_matrix, to_rational
from .purecircuit import PureCircuitInstance, require_valid, two_coloring
from .report import ReportBuilder, ValidationReport

PolymatrixProfile = dict  # player name -> probability of action 1

NOT_MATRIX = as_matrix([[0, 1], [1, 0]])
AND_MATRIX = as_matrix([[2, 0], [0, 1]])
PURIFY_V_MATRIX = as_matrix([[1, 0], [0, 2]])
PURIFY_W_MATRIX = as_matrix([[2, 0], [0, 1]])
IDENTITY = as_matrix([[1, 0], [0, 1]])


def _is_zero(M: Matrix) -> bool:
    return all(v == 0 for row in M for v in row)


@dataclass(frozen=True)
class RestrictedPolymatrixGame:
    """Players with a side label, and edge matrices keyed by (receiver, source).

    ``edges[(i, j)]`` is A^{ij}, the payoff of player i against player j.
    Zero matrices are never stored.
    """

    players: tuple[str, ...]
    sides: Mapping[str, str]
    edges: Mapping[tuple[str, str], Matrix]

    @classmethod
    def make(cls, players, sides, edges) -> "RestrictedPolymatrixGame":
        clean = {}
        for (i, j), M in edges.items():
            M = as_matrix(M)
            if not _is_zero(M):
                clean[(str(i), str(j))] = M
        return cls(tuple(players), dict(sides), clean)

    def side(self, name: str) -> tuple[str, ...]:
        return tuple(p for p in self.players if self.sides[p] == name)

    def matrix(self, i: str, j: str) -> Matrix:
        return self.edges.get((i, j), ((Fraction(0),) * 2,) * 2)


def validate_restricted(g: RestrictedPolymatrixGame) -> ValidationReport:
    rb = ReportBuilder("restricted polymatrix game")
    names = set(g.players)
    if len(names) != len(g.players):
        rb.add("players", "", "player names must be unique")
    for p in g.players:
        if g.sides.get(p) not in ("L", "R"):
            rb.add("player", p, "side must be L or R")
    indeg, outdeg = Counter(), Counter()
    for (i, j), M in g.edges.items():
        where = f"{i}<-{j}"
        if i not in names or j not in names:
            rb.add("edge", where, "edge refers to an unknown player")
            continue
        if i == j:
            rb.add("edge", where, "a player has no edge to itself")
        if len(M) != 2 or any(len(r) != 2 for r in M):
            rb.add("edge", where, "edge matrices must be 2x2")
            continue
        if any(v not in (0, 1, 2) for row in M for v in row):
            rb.add("edge", where, "entries must lie in {0,1,2}")
        diag = M[0][1] == 0 and M[1][0] == 0
        anti = M[0][0] == 0 and M[1][1] == 0
        if not (diag or anti):
            rb.add("edge", where, "matrix must be diagonal or anti-diagonal")
        if g.sides.get(i) == g.sides.get(j):
            rb.add("edge", where, "bipartite: edges must join an L player and an R player")
        indeg[i] += 1
        outdeg[j] += 1
    for p in g.players:
        if indeg[p] > 2:
            rb.add("player", p, f"in-degree {indeg[p]} exceeds 2")
        if outdeg[p] > 2:
            rb.add("player", p, f"out-degree {outdeg[p]} exceeds 2")
    return rb.build()


def poly_utilities(g: RestrictedPolymatrixGame, prof: Mapping[str, object]) -> dict[str, tuple[Fraction, Fraction]]:
    """u_i(0) and u_i(1) for every player against the others' mixed strategies."""
    q = {p: to_rational(prof[p]) for p in g.players}
    util = {p: [Fraction(0), Fraction(0)] for p in g.players}
    for (i, j), M in g.edges.items():
        for s in (0, 1):
            util[i][s] += (1 - q[j]) * M[s][0] + q[j] * M[s][1]
    return {p: (u[0], u[1]) for p, u in util.items()}


def poly_regret(g: RestrictedPolymatrixGame, prof: Mapping[str, object]) -> dict[str, Fraction]:
    """Per-player WSNE gap: worst supported action's shortfall from the best."""
    util = poly_utilities(g, prof)
    gaps = {}
    for p in g.players:
        a = to_rational(prof[p])
        best = max(util[p])
        supported = [s for s, mass in ((0, 1 - a), (1, a)) if mass > 0]
        gaps[p] = max(best - util[p][s] for s in supported)
    return gaps


def from_purecircuit(inst: PureCircuitInstance) -> RestrictedPolymatrixGame:
    """One player per variable; each gate installs its gadget matrices.

    The instance is used as given. Run ``normalize_for_reduction`` first when
    the result feeds the bimatrix pipeline.
    """
    require_valid(inst)
    sides = two_coloring(inst)
    edges: dict[tuple[str, str], Matrix] = {}
    for gate in inst.gates:
        if gate.op == "NOT":
            edges[(gate.outputs[0], gate.inputs[0])] = NOT_MATRIX
        elif gate.op == "AND":
            w = gate.outputs[0]
            for u in gate.inputs:
                edges[(w, u)] = AND_MATRIX
        else:
            u = gate.inputs[0]
            v, w = gate.outputs
            edges[(v, u)] = PURIFY_V_MATRIX
            edges[(w, u)] = PURIFY_W_MATRIX
    g = RestrictedPolymatrixGame.make(inst.variables, sides, edges)
    report = validate_restricted(g)
    if not report.ok:
        raise InvalidInstanceError(report.format(), report)
    return g


def assignment_from_wsne(inst: PureCircuitInstance, g: RestrictedPolymatrixGame,
                         prof: Mapping[str, object], delta) -> dict[str, Fraction]:
    delta = to_rational(delta)
    if delta >= Fraction(1, 2):
        raise ThresholdError(f"delta = {delta} must be below 1/2 for the gadgets to work")
    gaps = poly_regret(g, prof)
    bad = {p: gap for p, gap in gaps.items() if gap > delta}
    if bad:
        worst = max(bad, key=bad.get)
        raise NotAWsneError(f"player {worst!r} has gap {bad[worst]} > delta = {delta}")
    return {v: to_rational(prof[v]) for v in inst.variables}


def random_restricted(seed: int, n_left: int, n_right: int, density: float = 0.7) -> RestrictedPolymatrixGame:
    """A random valid restricted game; ``density`` is the chance of trying each pair."""
    rng = random.Random(seed)
    left = [f"l{i}" for i in range(n_left)]
    right = [f"r{i}" for i in range(n_right)]
    sides = {p: "L" for p in left} | {p: "R" for p in right}
    indeg, outdeg = Counter(), Counter()
    edges = {}
    pairs = [(a, b) for a in left for b in right] + [(b, a) for a in left for b in right]
    rng.shuffle(pairs)
    for i, j in pairs:
        if rng.random() > density or indeg[i] >= 2 or outdeg[j] >= 2:
            continue
        a, b = rng.choice([(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)])
        if rng.random() < 0.5:
            M = [[a, 0], [0, b]]
        else:
            M = [[0, a], [b, 0]]
        edges[(i, j)] = M
        indeg[i] += 1
        outdeg[j] += 1
    return RestrictedPolymatrixGame.make(left + right, sides, edges)
