"""Command line front end.

Exit codes: 0 success, 1 validation failure (report printed), 2 usage or
parse error. Output files are only written to paths given explicitly.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .classes import GameClass, validate_class
from .errors import MissingValueError, ParseError, WinLoseError
from .games import regret
from .pipeline import (ReductionTrace, compose_back_translation, read_trace, run_chain, run_simulations,
                       write_trace, START_FOR)
from .poly2bimatrix import build_from_polymatrix
from .polymatrix import from_purecircuit, validate_restricted
from .purecircuit import check_assignment, normalize_for_reduction, random_circuit, require_valid, validate_instance
from .simulations import SimKind

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        value = formats.parse_entry(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if value < 0:
        raise argparse.ArgumentTypeError("eps must be nonnegative")
    return value


def _print_json(obj) -> None:
    sys.stdout.write(formats.dumps(obj))


def cmd_validate_circuit(args) -> int:
    inst = formats.parse_circuit_file(args.circuit)
    report = validate_instance(inst)
    print(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_check_assignment(args) -> int:
    inst = formats.parse_circuit_file(args.circuit)
    values = formats.parse_assignment_file(args.assignment)
    report = validate_instance(inst)
    if not report.ok:
        print(report.format())
        return EXIT_FAIL
    try:
        report = check_assignment(inst, values)
    except MissingValueError as exc:
        print(f"assignment: FAIL ({exc})")
        return EXIT_FAIL
    print(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


_SIM_STEP = {"type-one": SimKind.TYPE_ONE, "dual": SimKind.DUAL, "type-two": SimKind.TYPE_TWO}
_SIDES = {"row": (0,), "col": (1,), "both": (0, 1)}


def _sim_range(start_class: GameClass, step: str, side: str) -> tuple[int, int]:
    first = START_FOR[start_class]
    if step == "full-chain":
        return first, 8
    kind = _SIM_STEP[step]
    from .pipeline import CANONICAL
    if CANONICAL[first - 1][0] is not kind:
        raise UsageError(f"a {start_class.value} game takes the {CANONICAL[first - 1][0].value} step, not {step}")
    offsets = _SIDES[side]
    return first + offsets[0], first + offsets[-1]


def cmd_reduce(args) -> int:
    src, step = args.source, args.step
    if src in ("circuit", "poly") and step in _SIM_STEP:
        raise UsageError(f"--step {step} needs a game input (--from resbi/stage1/stage2/stage3)")
    if src not in ("circuit", "poly") and step in ("gadgets", "poly2bimatrix"):
        raise UsageError(f"--step {step} needs --from circuit or poly")
    if src == "poly" and step == "gadgets":
        raise UsageError("--step gadgets needs --from circuit")
    if args.side != "both" and step not in _SIM_STEP:
        raise UsageError("--side only applies to a single simulation step")
    trace = None
    if src == "circuit":
        inst = formats.parse_circuit_file(args.input)
        require_valid(inst)
        if step == "full-chain":
            game, trace = run_chain(inst)
        else:
            normalized = normalize_for_reduction(inst)
            poly = from_purecircuit(normalized)
            if step == "gadgets":
                formats.write_polymatrix(poly, args.out)
                print(f"wrote polymatrix game with {len(poly.players)} players to {args.out}")
                return EXIT_OK
            game, layout = build_from_polymatrix(poly)
            trace = ReductionTrace(inst, normalized, poly, layout)
    elif src == "poly":
        poly = formats.parse_polymatrix_file(args.input)
        report = validate_restricted(poly)
        if not report.ok:
            print(report.format())
            return EXIT_FAIL
        game, layout = build_from_polymatrix(poly)
        sims = ()
        if step == "full-chain":
            game, sims, _ = run_simulations(game, 1, 8)
        trace = ReductionTrace(None, None, poly, layout, sims)
    else:
        cls = GameClass.parse(src)
        game = formats.parse_game_file(args.input)
        report = validate_class(game, cls)
        if not report.ok:
            print(report.format())
            return EXIT_FAIL
        first, last = _sim_range(cls, step, args.side)
        game, sims, _ = run_simulations(game, first, last, check_stages=True)
        trace = ReductionTrace(simulations=sims)
    formats.write_game(game, args.out)
    print(f"wrote {game.n_rows}x{game.n_cols} game to {args.out}")
    if args.trace:
        write_trace(trace, args.trace)
        print(f"wrote trace with {len(trace.simulations)} simulation steps to {args.trace}")
    return EXIT_OK


def cmd_solve(args) -> int:
    from .solvers import lemke_howson, support_enumeration

    game = formats.parse_game_file(args.game)
    if args.method == "support-enum":
        result = support_enumeration(game, args.max_support)
    else:
        result = lemke_howson(game, args.label)
    _print_json({"method": result.method,
                 "equilibria": [formats.profile_to_json(p) for p in result.equilibria],
                 "stats": {k: formats.encode_entry(v) if isinstance(v, Fraction) else v
                           for k, v in result.stats.items()}})
    if args.out:
        if not result.equilibria:
            print("no equilibrium found", file=sys.stderr)
            return EXIT_FAIL
        formats.write_profile(result.equilibria[0], args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    game = formats.parse_game_file(args.game)
    profile = formats.parse_profile_file(args.profile)
    if (len(profile.x), len(profile.y)) != game.shape:
        raise ParseError(f"profile is {len(profile.x)}x{len(profile.y)} but the game is {game.n_rows}x{game.n_cols}",
                         path=args.profile)
    rep = regret(game, profile)
    print(rep.format())
    value = rep.wsne_eps if args.mode == "wsne" else rep.ne_eps
    ok = value <= args.eps
    print(f"{args.mode} {'holds' if ok else 'fails'} at eps = {args.eps}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_translate_back(args) -> int:
    trace = read_trace(args.trace)
    profile = formats.parse_profile_file(args.profile)
    back = compose_back_translation(trace, profile, args.eps)
    for index, p, e in back.profiles:
        print(f"step {index}: {len(p.x)}x{len(p.y)} profile, eps bound {e}")
    if back.polymatrix_profile is not None:
        print(f"polymatrix profile with delta = {back.delta}")
    if back.assignment is not None:
        report = check_assignment(trace.original, back.assignment)
        print(report.format())
        if args.out:
            formats.write_assignment(back.assignment, args.out)
        _print_json(formats.assignment_to_json(back.assignment))
        return EXIT_OK if report.ok else EXIT_FAIL
    if back.polymatrix_profile is not None:
        _print_json({"values": {k: formats.encode_entry(v) for k, v in back.polymatrix_profile.items()}})
        if args.out:
            formats.write_assignment(back.polymatrix_profile, args.out)
        return EXIT_OK
    last = back.profiles[-1][1] if back.profiles else profile
    _print_json(formats.profile_to_json(last))
    if args.out:
        formats.write_profile(last, args.out)
    return EXIT_OK


def cmd_inspect(args) -> int:
    game = formats.parse_game_file(args.game)
    print(f"{game.n_rows}x{game.n_cols} game")
    if args.cls:
        report = validate_class(game, GameClass.parse(args.cls))
        print(report.format())
        return EXIT_OK if report.ok else EXIT_FAIL
    for cls in GameClass:
        print(f"  {cls.value}: {'pass' if validate_class(game, cls).ok else 'fail'}")
    return EXIT_OK


def cmd_generate_circuit(args) -> int:
    inst = random_circuit(args.seed, args.vars)
    formats.write_circuit(inst, args.out)
    print(f"wrote circuit with {len(inst.variables)} variables and {len(inst.gates)} gates to {args.out}")
    return EXIT_OK


def _class_tag(text: str) -> str:
    try:
        GameClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="winlose", description="Build, solve and invert the win-lose reduction chain.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate-circuit", help="check a circuit's structural invariants")
    s.add_argument("circuit")
    s.set_defaults(func=cmd_validate_circuit)

    s = sub.add_parser("check-assignment", help="check an assignment against the gate constraints")
    s.add_argument("circuit")
    s.add_argument("assignment")
    s.set_defaults(func=cmd_check_assignment)

    s = sub.add_parser("reduce", help="run one step or the whole chain")
    s.add_argument("input")
    s.add_argument("--from", dest="source", default="circuit",
                   choices=["circuit", "poly", "resbi", "stage1", "stage2", "stage3"])
    s.add_argument("--step", default="full-chain",
                   choices=["gadgets", "poly2bimatrix", "type-one", "dual", "type-two", "full-chain"])
    s.add_argument("--side", default="both", choices=["row", "col", "both"])
    s.add_argument("-o", "--out", required=True, help="output game (or polymatrix) file")
    s.add_argument("--trace", help="where to write the reduction trace")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="compute exact equilibria")
    s.add_argument("game")
    s.add_argument("--method", default="lemke-howson", choices=["support-enum", "lemke-howson"])
    s.add_argument("--label", type=int, default=0, help="initial dropped label for Lemke-Howson")
    s.add_argument("--max-support", type=int, default=None)
    s.add_argument("-o", "--out", help="write the first equilibrium as a profile file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check that a profile is an eps-NE or eps-WSNE")
    s.add_argument("game")
    s.add_argument("profile")
    s.add_argument("--eps", type=_rational, default=Fraction(0))
    s.add_argument("--mode", default="wsne", choices=["ne", "wsne"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("translate-back", help="map a profile of the final game back through a trace")
    s.add_argument("profile")
    s.add_argument("--trace", required=True)
    s.add_argument("--eps", type=_rational, default=Fraction(0))
    s.add_argument("-o", "--out", help="write the recovered assignment (or profile)")
    s.set_defaults(func=cmd_translate_back)

    s = sub.add_parser("inspect", help="report game dimensions and class membership")
    s.add_argument("game")
    s.add_argument("--class", dest="cls", type=_class_tag)
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("generate-circuit", help="write a random valid circuit")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--vars", type=int, default=6)
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_generate_circuit)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WinLoseError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
