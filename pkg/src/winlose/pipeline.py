"""The full reduction chain, its trace, and composed back-translation.

Circuit -> normalized circuit -> gadget polymatrix game -> padded
{0,1,2,8} bimatrix game (ResBi) -> eight column simulations -> 3-sparse
win-lose game. The simulations run in four two-sided rounds:

    1, 2  type one (row, column)   ResBi  -> Stage1
    3, 4  type one (row, column)   Stage1 -> Stage2
    5, 6  dual     (row, column)   Stage2 -> Stage3
    7, 8  type two (row, column)   Stage3 -> WinLose3Sparse
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .classes import GameClass, validate_class
from .errors import ParseError, StageError, ThresholdError, TraceValidationError, ZeroMassError
from .formats import (_Doc, circuit_from_doc, circuit_to_json, dumps, encode_entry, load_doc, parse_entry,
                      polymatrix_from_doc, polymatrix_to_json)
from .games import BimatrixGame, MixedProfile, to_rational
from .poly2bimatrix import PaddingRecord, Poly2BimatrixLayout, build_from_polymatrix
from .poly2bimatrix import translate_back as poly_translate_back
from .polymatrix import RestrictedPolymatrixGame, assignment_from_wsne, from_purecircuit, poly_regret
from .purecircuit import PureCircuitInstance, normalize_for_reduction, require_valid
from .simulations import PermutationPair, Side, SimKind, SimulationRecord, simulate, translate_back

DEFAULT_ENVELOPE = Fraction(4000)
DUAL_ROW_CONSTANT = 1200

CANONICAL = (
    (SimKind.TYPE_ONE, Side.ROW), (SimKind.TYPE_ONE, Side.COLUMN),
    (SimKind.TYPE_ONE, Side.ROW), (SimKind.TYPE_ONE, Side.COLUMN),
    (SimKind.DUAL, Side.ROW), (SimKind.DUAL, Side.COLUMN),
    (SimKind.TYPE_TWO, Side.ROW), (SimKind.TYPE_TWO, Side.COLUMN),
)

# class that must hold after the given simulation ordinal
STAGE_AFTER = {2: GameClass.STAGE1, 4: GameClass.STAGE2, 6: GameClass.STAGE3, 8: GameClass.WINLOSE3SPARSE}
# first simulation ordinal for a game of the given class
START_FOR = {GameClass.RESBI: 1, GameClass.STAGE1: 3, GameClass.STAGE2: 5, GameClass.STAGE3: 7}


def step_factor(record: SimulationRecord, envelope: Fraction) -> Fraction:
    """Bound on how much one translate-back inflates eps.

    The dual simulation has an explicit constant; the single column
    simulations only have an O(n^2) bound, covered by the envelope C * n^2.
    """
    n2 = record.n ** 2
    if record.kind is SimKind.DUAL:
        return Fraction(DUAL_ROW_CONSTANT * n2)
    return envelope * n2


@dataclass(frozen=True)
class SimStep:
    index: int  # 1..8 in the canonical chain
    record: SimulationRecord


@dataclass(frozen=True)
class ReductionTrace:
    original: PureCircuitInstance | None = None
    normalized: PureCircuitInstance | None = None
    polymatrix: RestrictedPolymatrixGame | None = None
    layout: Poly2BimatrixLayout | None = None
    simulations: tuple[SimStep, ...] = ()
    envelope: Fraction = DEFAULT_ENVELOPE
    games: tuple = field(default=(), compare=False, repr=False)

    def factors(self) -> list[Fraction]:
        return [step_factor(s.record, self.envelope) for s in self.simulations]

    def cumulative_factor(self) -> Fraction:
        total = Fraction(1)
        for f in self.factors():
            total *= f
        if self.layout is not None:
            total *= 3 * self.layout.K * self.layout.N
        return total

    def max_eps(self) -> Fraction:
        """Supremum of eps for which every step's regime holds (strict)."""
        bound = None
        scale = Fraction(1)
        for step in reversed(self.simulations):
            b = step.record.regime() / scale
            bound = b if bound is None else min(bound, b)
            scale *= step_factor(step.record, self.envelope)
        if self.layout is not None:
            b = self.layout.regime() / scale
            bound = b if bound is None else min(bound, b)
        return bound if bound is not None else Fraction(0)

    def validate(self) -> None:
        check_trace(self)


def check_trace(trace: ReductionTrace) -> None:
    sims = trace.simulations
    for a, b in zip(sims, sims[1:]):
        if b.index != a.index + 1:
            raise TraceValidationError(f"simulation steps {a.index} and {b.index} are not consecutive")
    for s in sims:
        if not 1 <= s.index <= 8:
            raise TraceValidationError(f"simulation index {s.index} outside 1..8")
        want = CANONICAL[s.index - 1]
        got = (s.record.kind, s.record.side)
        if got != want:
            raise TraceValidationError(
                f"step {s.index} is {got[0].value}({got[1].value}) but the chain needs {want[0].value}({want[1].value})")
    for a, b in zip(sims, sims[1:]):
        if a.record.game_out_dims != b.record.game_in_dims:
            raise TraceValidationError(
                f"step {a.index} outputs {a.record.game_out_dims} but step {b.index} expects {b.record.game_in_dims}")
    if trace.layout is not None and sims:
        if sims[0].index != 1:
            raise TraceValidationError("a trace with a bimatrix layout must start its simulations at step 1")
        m = trace.layout.m
        if sims[0].record.game_in_dims != (m, m):
            raise TraceValidationError(f"step 1 expects {sims[0].record.game_in_dims}, layout gives {(m, m)}")
    if trace.original is not None and len(sims) != 8:
        raise TraceValidationError(f"a full chain needs 8 simulations, found {len(sims)}")


def _stage_check(game: BimatrixGame, cls: GameClass, step: int) -> None:
    report = validate_class(game, cls)
    if not report.ok:
        raise StageError(f"step {step}: game fails {cls.value}\n{report.format()}", step, report)


def run_simulations(game: BimatrixGame, first: int = 1, last: int = 8, eps=None,
                    keep_games: bool = False, check_stages: bool = True):
    """Apply canonical simulations first..last; returns (game, steps, games)."""
    steps, games = [], []
    for index in range(first, last + 1):
        kind, side = CANONICAL[index - 1]
        game, record = simulate(kind, game, side, eps)
        steps.append(SimStep(index, record))
        if keep_games:
            games.append(game)
        if check_stages and index in STAGE_AFTER:
            _stage_check(game, STAGE_AFTER[index], index)
    return game, tuple(steps), tuple(games)


def run_chain(inst: PureCircuitInstance, keep_games: bool = False,
              envelope: Fraction = DEFAULT_ENVELOPE) -> tuple[BimatrixGame, ReductionTrace]:
    require_valid(inst)
    normalized = normalize_for_reduction(inst)
    poly = from_purecircuit(normalized)
    resbi, layout = build_from_polymatrix(poly)
    _stage_check(resbi, GameClass.RESBI, 0)
    final, steps, games = run_simulations(resbi, 1, 8, keep_games=keep_games)
    trace = ReductionTrace(inst, normalized, poly, layout, steps, Fraction(envelope),
                           ((resbi,) + games) if keep_games else ())
    return final, trace


@dataclass(frozen=True)
class BackTranslation:
    assignment: dict | None              # values of the original circuit's variables
    normalized_assignment: dict | None   # includes variables added by normalization
    polymatrix_profile: dict | None
    delta: Fraction | None
    profiles: tuple                      # (step index, profile of that step's input game, eps bound)

    def profile_at(self, index: int) -> MixedProfile:
        for i, p, _ in self.profiles:
            if i == index:
                return p
        raise KeyError(index)


def compose_back_translation(trace: ReductionTrace, profile: MixedProfile, eps,
                             check: bool = True) -> BackTranslation:
    """Undo the chain step by step, inflating eps by each step's factor.

    ``profiles`` lists, for every simulation s (from the last to the first),
    the translated profile of that simulation's input game and the eps it is
    guaranteed to meet there.
    """
    eps = to_rational(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    current, e = profile, eps
    out = []
    for step in reversed(trace.simulations):
        rec = step.record
        if e >= rec.regime():
            raise ThresholdError(
                f"step {step.index} ({rec.kind.value}, {rec.side.value}): eps {e} is not below {rec.regime()}",
                step.index)
        try:
            current = translate_back(rec, current, e, enforce_regime=False)
        except ZeroMassError as exc:
            err = ZeroMassError(f"step {step.index} ({rec.kind.value}, {rec.side.value}): {exc}")
            err.step = step.index
            raise err from exc
        e = e * step_factor(rec, trace.envelope)
        out.append((step.index, current, e))
    if trace.layout is None:
        return BackTranslation(None, None, None, None, tuple(out))
    if e >= trace.layout.regime():
        raise ThresholdError(f"poly2bimatrix: eps {e} is not below 1/(6KN) = {trace.layout.regime()}",
                             "poly2bimatrix")
    poly_prof, delta = poly_translate_back(trace.layout, current, e)
    if trace.normalized is None or trace.polymatrix is None:
        return BackTranslation(None, None, poly_prof, delta, tuple(out))
    full = assignment_from_wsne(trace.normalized, trace.polymatrix, poly_prof, delta) if check else dict(poly_prof)
    original = trace.original or trace.normalized
    assignment = {v: full[v] for v in original.variables}
    return BackTranslation(assignment, full, poly_prof, delta, tuple(out))


# serialization

def _layout_to_json(layout: Poly2BimatrixLayout) -> dict:
    return {"step": "poly2bimatrix", "n": layout.n, "K": layout.K,
            "left": list(layout.left), "right": list(layout.right),
            "padding": {"L": list(layout.padding.left), "R": list(layout.padding.right)},
            "dims": [layout.m, layout.m], "regime": encode_entry(layout.regime())}


def _record_to_json(step: SimStep, envelope: Fraction) -> dict:
    r = step.record
    return {"step": "simulation", "index": step.index, "kind": r.kind.value, "side": r.side.value,
            "K": r.K, "k": r.k, "in_dims": list(r.in_dims), "out_dims": list(r.out_dims),
            "row_perm": list(r.perms.row_perm), "col_perm": list(r.perms.col_perm),
            "eps": None if r.eps is None else encode_entry(r.eps),
            "regime": encode_entry(r.regime()), "factor": encode_entry(step_factor(r, envelope))}


def trace_to_json(trace: ReductionTrace) -> dict:
    steps = []
    if trace.original is not None:
        steps.append({"step": "normalize", "original": circuit_to_json(trace.original),
                      "normalized": circuit_to_json(trace.normalized)})
    if trace.polymatrix is not None:
        steps.append({"step": "gadgets", "polymatrix": polymatrix_to_json(trace.polymatrix)})
    if trace.layout is not None:
        steps.append(_layout_to_json(trace.layout))
    steps += [_record_to_json(s, trace.envelope) for s in trace.simulations]
    return {"envelope": encode_entry(trace.envelope), "steps": steps}


def write_trace(trace: ReductionTrace, path: str | Path) -> None:
    Path(path).write_text(dumps(trace_to_json(trace)))


def _get(doc: _Doc, obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise doc.error(f"missing field {key!r}", None, where)
    v = obj[key]
    if kind is not None and (not isinstance(v, kind) or isinstance(v, bool)):
        raise doc.error(f"field {key!r} has the wrong type", v, where)
    return v


def _int_list(doc: _Doc, obj, key: str, where: str) -> tuple[int, ...]:
    v = _get(doc, obj, key, list, where)
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise doc.error(f"field {key!r} must hold integers", None, where)
    return tuple(v)


def _sub_doc(doc: _Doc, data: Any) -> _Doc:
    sub = _Doc.__new__(_Doc)
    sub.text, sub.path, sub.data = doc.text, doc.path, data
    return sub


def trace_from_doc(doc: _Doc) -> ReductionTrace:
    data = doc.data
    steps = _get(doc, data, "steps", list, "trace")
    envelope = parse_entry(_get(doc, data, "envelope", None, "trace"), doc, "envelope") \
        if isinstance(data, dict) and "envelope" in data else DEFAULT_ENVELOPE
    original = normalized = poly = layout = None
    sims = []
    for n, st in enumerate(steps):
        where = f"steps[{n}]"
        kind = _get(doc, st, "step", str, where)
        if kind == "normalize":
            original = circuit_from_doc(_sub_doc(doc, _get(doc, st, "original", dict, where)))
            normalized = circuit_from_doc(_sub_doc(doc, _get(doc, st, "normalized", dict, where)))
        elif kind == "gadgets":
            poly = polymatrix_from_doc(_sub_doc(doc, _get(doc, st, "polymatrix", dict, where)))
        elif kind == "poly2bimatrix":
            pad = _get(doc, st, "padding", dict, where)
            layout = Poly2BimatrixLayout(
                _get(doc, st, "n", int, where),
                tuple(_get(doc, st, "left", list, where)), tuple(_get(doc, st, "right", list, where)),
                PaddingRecord(tuple(_get(doc, pad, "L", list, where)), tuple(_get(doc, pad, "R", list, where))),
                _get(doc, st, "K", int, where))
            if layout.n != len(layout.left) or layout.n != len(layout.right):
                raise TraceValidationError(f"{where}: layout sides do not have n = {layout.n} players")
        elif kind == "simulation":
            try:
                sim_kind = SimKind(_get(doc, st, "kind", str, where))
                side = Side(_get(doc, st, "side", str, where))
            except ValueError as exc:
                raise doc.error(str(exc), None, where) from None
            K = st.get("K")
            if K is not None and (not isinstance(K, int) or isinstance(K, bool)):
                raise doc.error("K must be an integer or null", K, where)
            eps = st.get("eps")
            try:
                perms = PermutationPair(_int_list(doc, st, "row_perm", where), _int_list(doc, st, "col_perm", where))
            except ValueError as exc:
                raise TraceValidationError(f"{where}: {exc}") from None
            in_dims = _int_list(doc, st, "in_dims", where)
            out_dims = _int_list(doc, st, "out_dims", where)
            if len(in_dims) != 2 or len(out_dims) != 2:
                raise doc.error("dims must have two entries", None, where)
            record = SimulationRecord(sim_kind, side, _get(doc, st, "k", int, where), in_dims, out_dims, perms, K,
                                      None if eps is None else parse_entry(eps, doc, f"{where}.eps"))
            if (len(perms.row_perm), len(perms.col_perm)) != record.in_dims:
                raise TraceValidationError(f"{where}: permutation sizes do not match the input dims")
            sims.append(SimStep(_get(doc, st, "index", int, where), record))
        else:
            raise doc.error(f"unknown step {kind!r}", kind, where)
    trace = ReductionTrace(original, normalized, poly, layout, tuple(sims), envelope)
    check_trace(trace)
    return trace


def read_trace(path: str | Path) -> ReductionTrace:
    return trace_from_doc(load_doc(path))


def parse_trace_text(text: str) -> ReductionTrace:
    return trace_from_doc(_Doc(text))


def final_dims(trace: ReductionTrace) -> tuple[int, int]:
    if trace.simulations:
        return trace.simulations[-1].record.game_out_dims
    if trace.layout is not None:
        return (trace.layout.m, trace.layout.m)
    raise ValueError("trace has no game steps")


def polymatrix_gaps(trace: ReductionTrace, back: BackTranslation) -> dict:
    return poly_regret(trace.polymatrix, back.polymatrix_profile)
