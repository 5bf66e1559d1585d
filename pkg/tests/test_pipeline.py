import json
from fractions import Fraction as F

import pytest

from instances import not_cycle, purify_and
from winlose.classes import GameClass, validate_class
from winlose.errors import (InvalidInstanceError, ParseError, StageError, ThresholdError, TraceValidationError,
                            ValidationError)
from winlose.games import regret
from winlose.pipeline import (CANONICAL, ReductionTrace, compose_back_translation, final_dims, parse_trace_text,
                              read_trace, run_chain, run_simulations, trace_to_json, write_trace)
from winlose.purecircuit import NOT, PureCircuitInstance, check_assignment, random_circuit
from winlose.simulations import Side, SimKind
from winlose.solvers import lemke_howson

NOT_CYCLE_SIZES = [(5, 5), (9, 9), (13, 13), (17, 17), (21, 21), (25, 24), (28, 28), (43, 43), (58, 58)]
PURIFY_AND_SIZES = [(14, 14), (30, 30), (46, 46), (62, 62), (78, 78), (94, 90), (106, 106), (166, 166), (226, 226)]


@pytest.fixture(scope="module")
def chains():
    return {name: run_chain(f(), keep_games=True) for name, f in (("not", not_cycle), ("pa", purify_and))}


def test_canonical_order():
    T1, DU, T2 = SimKind.TYPE_ONE, SimKind.DUAL, SimKind.TYPE_TWO
    R, C = Side.ROW, Side.COLUMN
    assert list(CANONICAL) == [(T1, R), (T1, C), (T1, R), (T1, C), (DU, R), (DU, C), (T2, R), (T2, C)]


@pytest.mark.parametrize("name, sizes", [("not", NOT_CYCLE_SIZES), ("pa", PURIFY_AND_SIZES)])
def test_size_regression(chains, name, sizes):
    final, trace = chains[name]
    assert [g.shape for g in trace.games] == sizes
    assert final_dims(trace) == sizes[-1] == final.shape


@pytest.mark.parametrize("name", ["not", "pa"])
def test_stage_classes(chains, name):
    final, trace = chains[name]
    g = trace.games
    assert validate_class(g[0], GameClass.RESBI).ok
    assert validate_class(g[2], GameClass.STAGE1).ok
    assert validate_class(g[4], GameClass.STAGE2).ok
    assert validate_class(g[6], GameClass.STAGE3).ok
    assert validate_class(final, GameClass.WINLOSE3SPARSE).ok


def test_invalid_instance_rejected():
    bad = PureCircuitInstance(("u",), (NOT("u", "u"),))
    with pytest.raises(InvalidInstanceError) as info:
        run_chain(bad)
    assert not info.value.report.ok


def test_run_simulations_rejects_wrong_class():
    g = run_chain(not_cycle(), keep_games=True)[1].games[0]
    with pytest.raises(StageError):
        run_simulations(g, 3, 4)


@pytest.mark.parametrize("name, factory", [("not", not_cycle), ("pa", purify_and)])
def test_exact_roundtrip(chains, name, factory):
    final, trace = chains[name]
    p = lemke_howson(final).equilibria[0]
    back = compose_back_translation(trace, p, 0)
    assert [i for i, _, _ in back.profiles] == list(range(8, 0, -1))
    assert back.delta == 0
    assert check_assignment(factory(), back.assignment).ok
    assert set(back.assignment) == set(factory().variables)


def test_intermediate_profiles_meet_inflated_eps(chains):
    final, trace = chains["not"]
    p = lemke_howson(final).equilibria[0]
    eps = trace.max_eps() / 2
    back = compose_back_translation(trace, p, eps)
    for index, q, bound in back.profiles:
        assert regret(trace.games[index - 1], q).wsne_eps <= bound
    assert back.delta <= 3 * trace.layout.K * trace.layout.N * back.profiles[-1][2]
    assert check_assignment(not_cycle(), back.assignment).ok


def test_large_eps_fails_at_last_step(chains):
    final, trace = chains["not"]
    p = lemke_howson(final).equilibria[0]
    with pytest.raises(ThresholdError) as info:
        compose_back_translation(trace, p, F(1, 100))
    assert info.value.step == 8


def test_cumulative_factor_matches_max_eps(chains):
    _, trace = chains["not"]
    factors = trace.factors()
    assert len(factors) == 8 and all(f > 1 for f in factors)
    assert trace.max_eps() > 0
    assert trace.max_eps() * trace.cumulative_factor() <= 1


def test_trace_roundtrip(chains, tmp_path):
    final, trace = chains["pa"]
    path = tmp_path / "trace.json"
    write_trace(trace, path)
    again = read_trace(path)
    assert again == trace
    p = lemke_howson(final).equilibria[0]
    assert compose_back_translation(again, p, 0).assignment == compose_back_translation(trace, p, 0).assignment


def test_truncated_trace(chains, tmp_path):
    path = tmp_path / "trace.json"
    write_trace(chains["not"][1], path)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(ParseError):
        read_trace(path)


def test_out_of_order_trace(chains):
    data = trace_to_json(chains["not"][1])
    sims = [s for s in data["steps"] if s["step"] == "simulation"]
    sims[2]["index"], sims[3]["index"] = sims[3]["index"], sims[2]["index"]
    with pytest.raises(ValidationError):
        parse_trace_text(json.dumps(data))
    assert ValidationError is TraceValidationError


def test_mismatched_dims_trace(chains):
    data = trace_to_json(chains["not"][1])
    sims = [s for s in data["steps"] if s["step"] == "simulation"]
    sims[4]["out_dims"] = [1, 1]
    with pytest.raises(TraceValidationError):
        parse_trace_text(json.dumps(data))


def test_partial_trace_from_stage():
    g = run_chain(not_cycle(), keep_games=True)[1].games[6]
    final, steps, _ = run_simulations(g, 7, 8)
    trace = ReductionTrace(simulations=steps)
    assert [(s.record.kind, s.record.side) for s in steps] == [(SimKind.TYPE_TWO, Side.ROW),
                                                               (SimKind.TYPE_TWO, Side.COLUMN)]
    p = lemke_howson(final).equilibria[0]
    back = compose_back_translation(trace, p, 0)
    assert back.assignment is None
    assert regret(g, back.profiles[-1][1]).wsne_eps == 0


@pytest.mark.parametrize("seed", range(6))
def test_random_circuits_exact(seed):
    inst = random_circuit(seed, 4)
    final, trace = run_chain(inst)
    assert validate_class(final, GameClass.WINLOSE3SPARSE).ok
    back = compose_back_translation(trace, lemke_howson(final).equilibria[0], 0)
    assert check_assignment(inst, back.assignment).ok


def test_chain_is_deterministic():
    a = run_chain(purify_and())
    b = run_chain(purify_and())
    assert a[0] == b[0] and a[1] == b[1]
