import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from instances import S_T, not_cycle, profile, purify_and
from winlose import formats
from winlose.cli import main
from winlose.pipeline import compose_back_translation, read_trace, run_chain
from winlose.purecircuit import NOT, PureCircuitInstance
from winlose.solvers import lemke_howson


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def circuit(tmp_path):
    path = tmp_path / "circuit.json"
    formats.write_circuit(not_cycle(), path)
    return path


def test_validate_circuit(capsys, circuit, tmp_path):
    assert run(capsys, "validate-circuit", circuit)[0] == 0
    bad = tmp_path / "bad.json"
    formats.write_circuit(PureCircuitInstance(("u",), (NOT("u", "u"),)), bad)
    code, out, _ = run(capsys, "validate-circuit", bad)
    assert code == 1 and "FAIL" in out.upper()


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"variables": ["u"], "gates": [')
    code, _, err = run(capsys, "validate-circuit", path)
    assert code == 2 and "error" in err


def test_check_assignment(capsys, circuit, tmp_path):
    good, bad, partial = (tmp_path / n for n in ("good.json", "bad.json", "partial.json"))
    formats.write_assignment({"u": F(0), "v": F(1)}, good)
    formats.write_assignment({"u": F(1), "v": F(1)}, bad)
    formats.write_assignment({"u": F(1)}, partial)
    assert run(capsys, "check-assignment", circuit, good)[0] == 0
    assert run(capsys, "check-assignment", circuit, bad)[0] == 1
    assert run(capsys, "check-assignment", circuit, partial)[0] == 1


def test_full_chain_matches_library(capsys, tmp_path):
    src = tmp_path / "c.json"
    formats.write_circuit(purify_and(), src)
    out, tr = tmp_path / "game.json", tmp_path / "trace.json"
    assert run(capsys, "reduce", src, "-o", out, "--trace", tr)[0] == 0
    final, trace = run_chain(purify_and())
    lib_game, lib_trace = tmp_path / "lib_game.json", tmp_path / "lib_trace.json"
    formats.write_game(final, lib_game)
    from winlose.pipeline import write_trace
    write_trace(trace, lib_trace)
    assert out.read_bytes() == lib_game.read_bytes()
    assert tr.read_bytes() == lib_trace.read_bytes()


def test_solve_verify_translate(capsys, circuit, tmp_path):
    game, tr, prof, asg = (tmp_path / n for n in ("g.json", "t.json", "p.json", "a.json"))
    assert run(capsys, "reduce", circuit, "-o", game, "--trace", tr)[0] == 0
    code, out, _ = run(capsys, "solve", game, "-o", prof)
    assert code == 0
    assert json.loads(out)["method"] == "LemkeHowson"
    assert formats.parse_profile_file(prof) == lemke_howson(formats.parse_game_file(game)).equilibria[0]
    assert run(capsys, "verify", game, prof)[0] == 0
    assert run(capsys, "translate-back", prof, "--trace", tr, "-o", asg)[0] == 0
    expected = compose_back_translation(read_trace(tr), formats.parse_profile_file(prof), 0).assignment
    assert formats.parse_assignment_file(asg) == expected
    assert run(capsys, "check-assignment", circuit, asg)[0] == 0
    # far too large for the last step's regime
    code, _, err = run(capsys, "translate-back", prof, "--trace", tr, "--eps", "1/10")
    assert code == 1 and "ThresholdError" in err


def test_verify_modes(capsys, tmp_path):
    g, p = tmp_path / "g.json", tmp_path / "p.json"
    formats.write_game(S_T, g)
    formats.write_profile(profile([1, 0], [1, 0]), p)
    assert run(capsys, "verify", g, p)[0] == 1
    assert run(capsys, "verify", g, p, "--eps", "1")[0] == 0
    formats.write_profile(profile([F(1, 2), F(1, 2)], [1, 0]), p)
    assert run(capsys, "verify", g, p, "--mode", "ne", "--eps", "1")[0] == 0
    assert run(capsys, "verify", g, p, "--mode", "wsne", "--eps", "1")[0] == 1
    formats.write_profile(profile([1, 0, 0], [1, 0]), p)
    assert run(capsys, "verify", g, p)[0] == 2


def test_solve_support_enum(capsys, tmp_path):
    g = tmp_path / "g.json"
    formats.write_game(S_T, g)
    code, out, _ = run(capsys, "solve", g, "--method", "support-enum")
    data = json.loads(out)
    assert code == 0 and data["equilibria"] == [{"x": ["1/2", "1/2"], "y": ["1/3", "2/3"]}]


def test_single_steps_and_usage(capsys, circuit, tmp_path):
    poly, resbi, s1 = (tmp_path / n for n in ("poly.json", "resbi.json", "s1.json"))
    assert run(capsys, "reduce", circuit, "--step", "gadgets", "-o", poly)[0] == 0
    assert run(capsys, "reduce", poly, "--from", "poly", "--step", "poly2bimatrix", "-o", resbi)[0] == 0
    assert run(capsys, "reduce", resbi, "--from", "resbi", "--step", "type-one", "-o", s1)[0] == 0
    assert formats.parse_game_file(s1).shape == (13, 13)
    half = tmp_path / "half.json"
    assert run(capsys, "reduce", resbi, "--from", "resbi", "--step", "type-one", "--side", "row", "-o", half)[0] == 0
    assert formats.parse_game_file(half).shape == (9, 9)
    assert run(capsys, "inspect", s1, "--class", "Stage1")[0] == 0
    assert run(capsys, "inspect", resbi, "--class", "Stage3")[0] == 1
    assert run(capsys, "reduce", resbi, "--from", "resbi", "--step", "dual", "-o", s1)[0] == 2
    assert run(capsys, "reduce", circuit, "--step", "dual", "-o", s1)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["reduce", str(circuit)])
    assert info.value.code == 2


def test_generate_circuit(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "generate-circuit", "--seed", 5, "-o", a)[0] == 0
    assert run(capsys, "generate-circuit", "--seed", 5, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(capsys, "validate-circuit", a)[0] == 0


def test_module_entry_point(tmp_path):
    path = tmp_path / "c.json"
    res = subprocess.run([sys.executable, "-m", "winlose", "generate-circuit", "--seed", "1", "-o", str(path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and path.exists()
