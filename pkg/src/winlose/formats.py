"""Reading and writing the shared JSON file formats.

Rational entries are JSON integers or strings "p/q" in lowest terms with a
positive denominator. Floats are rejected so that every file round-trips
bit-exactly. Parse failures carry the 1-based line and column of the
offending token.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any

from .errors import ParseError
from .games import BimatrixGame, MixedProfile

_ENTRY_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")
_BOOL_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|\b(true|false)\b')
_FLOAT_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|(-?\d+(?:\.\d+[eE][+-]?\d+|\.\d+|[eE][+-]?\d+))')


class _PosStr(str):
    """A JSON string value remembering the offset where it started."""

    pos: int


class _FloatToken:
    def __init__(self, text: str):
        self.text = text


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Doc:
    """Parsed JSON plus the source text, for error locations."""

    def __init__(self, text: str, path: str | None = None):
        self.text = text
        self.path = path
        decoder = json.JSONDecoder(parse_float=_FloatToken)
        original = decoder.parse_string

        def parse_string(s, end, strict):
            value, new_end = original(s, end, strict)
            tagged = _PosStr(value)
            tagged.pos = end - 1
            return tagged, new_end

        decoder.parse_string = parse_string
        decoder.scan_once = json.scanner.py_make_scanner(decoder)
        try:
            self.data = decoder.decode(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None

    def key_error(self, message: str, key: str) -> ParseError:
        """Error located at the first occurrence of an object key."""
        m = re.search(r'"%s"\s*:' % re.escape(key), self.text)
        if m is None:
            return ParseError(message, path=self.path)
        line, col = _line_col(self.text, m.start())
        return ParseError(message, line, col, self.path)

    def error(self, message: str, value: Any = None, where: str | None = None) -> ParseError:
        if isinstance(value, _PosStr):
            line, col = _line_col(self.text, value.pos)
            return ParseError(message, line, col, self.path)
        if isinstance(value, (_FloatToken, bool)):
            pattern = _BOOL_TOKEN if isinstance(value, bool) else _FLOAT_TOKEN
            for m in pattern.finditer(self.text):
                if m.group(1) is not None:
                    line, col = _line_col(self.text, m.start(1))
                    return ParseError(message, line, col, self.path)
        if where is not None:
            message = f"{message} at {where}"
        return ParseError(message, path=self.path)


def parse_entry(value: Any, doc: _Doc | None = None, where: str = "") -> Fraction:
    def fail(msg):
        if doc is None:
            return ParseError(f"{msg} at {where}" if where else msg)
        return doc.error(msg, value, where)

    if isinstance(value, bool):
        raise fail(f"boolean {value!r} is not a rational entry")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _FloatToken):
        raise fail(f"float {value.text} is not allowed; write it as \"p/q\"")
    if isinstance(value, float):
        raise fail(f"float {value!r} is not allowed; write it as \"p/q\"")
    if isinstance(value, str):
        m = _ENTRY_RE.match(value.strip())
        if not m:
            raise fail(f"malformed rational {str(value)!r}")
        p = int(m.group(1))
        if m.group(2) is None:
            return Fraction(p)
        q = int(m.group(2))
        if q == 0:
            raise fail(f"zero denominator in {str(value)!r}")
        if q < 0:
            raise fail(f"negative denominator in {str(value)!r}")
        if gcd(p, q) != 1:
            raise fail(f"{str(value)!r} is not in lowest terms")
        return Fraction(p, q)
    raise fail(f"expected an integer or \"p/q\" string, got {type(value).__name__}")


def encode_entry(v: Fraction) -> int | str:
    v = Fraction(v)
    if v.denominator == 1:
        return v.numerator
    return f"{v.numerator}/{v.denominator}"


def encode_matrix(M) -> list[list]:
    return [[encode_entry(v) for v in row] for row in M]


def encode_vector(v) -> list:
    return [encode_entry(a) for a in v]


def _dumps(obj: Any, indent: int = 0) -> str:
    """JSON text with one matrix row per line, so big games stay readable."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dumps(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        items = [inner + _dumps(x, indent + 2) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, separators=(", ", ": "))


def dumps(obj: Any) -> str:
    return _dumps(obj) + "\n"


def load_doc(path: str | Path) -> _Doc:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(p)) from None
    return _Doc(text, str(p))


def _field(doc: _Doc, obj: Any, key: str, kind: type | tuple, where: str) -> Any:
    if not isinstance(obj, dict):
        raise doc.error(f"expected an object", obj, where)
    if key not in obj:
        raise doc.error(f"missing field {key!r}", None, where)
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise doc.error(f"field {key!r} has the wrong type", value, where)
    return value


def _matrix(doc: _Doc, rows: Any, name: str) -> list[list[Fraction]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise doc.error(f"{name} must be a list of rows", rows, name)
    return [[parse_entry(v, doc, f"{name}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]


def _vector(doc: _Doc, v: Any, name: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise doc.error(f"{name} must be a list", v, name)
    return [parse_entry(a, doc, f"{name}[{i}]") for i, a in enumerate(v)]


# games and profiles

def game_to_json(game: BimatrixGame) -> dict:
    return {"rows": game.n_rows, "cols": game.n_cols,
            "A": encode_matrix(game.A), "B": encode_matrix(game.B)}


def game_from_doc(doc: _Doc, obj: Any = None, where: str = "game") -> BimatrixGame:
    obj = doc.data if obj is None else obj
    rows = _field(doc, obj, "rows", int, where)
    cols = _field(doc, obj, "cols", int, where)
    A = _matrix(doc, _field(doc, obj, "A", list, where), "A")
    B = _matrix(doc, _field(doc, obj, "B", list, where), "B")
    for name, M in (("A", A), ("B", B)):
        if len(M) != rows or any(len(r) != cols for r in M):
            raise doc.key_error(f"{name} is not {rows}x{cols} as declared", name)
    if rows < 1 or cols < 1:
        raise doc.key_error("a game needs at least one row and one column", "rows")
    return BimatrixGame(A, B)


def parse_game_text(text: str, path: str | None = None) -> BimatrixGame:
    return game_from_doc(_Doc(text, path))


def parse_game_file(path: str | Path) -> BimatrixGame:
    return game_from_doc(load_doc(path))


def write_game(game: BimatrixGame, path: str | Path) -> None:
    Path(path).write_text(dumps(game_to_json(game)))


def profile_to_json(profile: MixedProfile) -> dict:
    return {"x": encode_vector(profile.x), "y": encode_vector(profile.y)}


def profile_from_doc(doc: _Doc, obj: Any = None) -> MixedProfile:
    obj = doc.data if obj is None else obj
    x = _vector(doc, _field(doc, obj, "x", list, "profile"), "x")
    y = _vector(doc, _field(doc, obj, "y", list, "profile"), "y")
    try:
        return MixedProfile(tuple(x), tuple(y))
    except ValueError as exc:
        raise ParseError(f"invalid profile: {exc}", path=doc.path) from None


def parse_profile_text(text: str, path: str | None = None) -> MixedProfile:
    return profile_from_doc(_Doc(text, path))


def parse_profile_file(path: str | Path) -> MixedProfile:
    return profile_from_doc(load_doc(path))


def write_profile(profile: MixedProfile, path: str | Path) -> None:
    Path(path).write_text(dumps(profile_to_json(profile)))


# circuits and assignments

def circuit_to_json(inst) -> dict:
    return {"vars": list(inst.variables),
            "gates": [{"op": g.op, "in": list(g.inputs), "out": list(g.outputs)} for g in inst.gates]}


def circuit_from_doc(doc: _Doc):
    from .purecircuit import Gate, PureCircuitInstance

    obj = doc.data
    names = _field(doc, obj, "vars", list, "circuit")
    for v in names:
        if not isinstance(v, str):
            raise doc.error("variable names must be strings", v, "vars")
    gates = []
    for i, g in enumerate(_field(doc, obj, "gates", list, "circuit")):
        where = f"gates[{i}]"
        op = _field(doc, g, "op", str, where)
        ins = _field(doc, g, "in", list, where)
        outs = _field(doc, g, "out", list, where)
        if not all(isinstance(v, str) for v in ins + outs):
            raise doc.error("gate endpoints must be variable names", None, where)
        try:
            gates.append(Gate(str(op), tuple(str(v) for v in ins), tuple(str(v) for v in outs)))
        except ValueError as exc:
            raise doc.error(str(exc), op, where) from None
    return PureCircuitInstance(tuple(str(v) for v in names), tuple(gates))


def parse_circuit_text(text: str, path: str | None = None):
    return circuit_from_doc(_Doc(text, path))


def parse_circuit_file(path: str | Path):
    return circuit_from_doc(load_doc(path))


def write_circuit(inst, path: str | Path) -> None:
    Path(path).write_text(dumps(circuit_to_json(inst)))


def assignment_to_json(values: dict) -> dict:
    return {"values": {str(k): encode_entry(v) for k, v in values.items()}}


def assignment_from_doc(doc: _Doc) -> dict[str, Fraction]:
    vals = _field(doc, doc.data, "values", dict, "assignment")
    return {str(k): parse_entry(v, doc, f"values.{k}") for k, v in vals.items()}


def parse_assignment_file(path: str | Path) -> dict[str, Fraction]:
    return assignment_from_doc(load_doc(path))


def parse_assignment_text(text: str, path: str | None = None) -> dict[str, Fraction]:
    return assignment_from_doc(_Doc(text, path))


def write_assignment(values: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(assignment_to_json(values)))


# polymatrix games

def polymatrix_to_json(g) -> dict:
    return {"players": [{"name": p, "side": g.sides[p]} for p in g.players],
            "edges": [{"to": i, "from": j, "M": encode_matrix(M)} for (i, j), M in g.edges.items()]}


def polymatrix_from_doc(doc: _Doc):
    from .polymatrix import RestrictedPolymatrixGame

    players, sides = [], {}
    for i, p in enumerate(_field(doc, doc.data, "players", list, "polymatrix")):
        where = f"players[{i}]"
        name = _field(doc, p, "name", str, where)
        side = _field(doc, p, "side", str, where)
        if side not in ("L", "R"):
            raise doc.error(f"side must be \"L\" or \"R\"", side, where)
        players.append(str(name))
        sides[str(name)] = str(side)
    edges = {}
    for e, rec in enumerate(_field(doc, doc.data, "edges", list, "polymatrix")):
        where = f"edges[{e}]"
        to = str(_field(doc, rec, "to", str, where))
        frm = str(_field(doc, rec, "from", str, where))
        M = _matrix(doc, _field(doc, rec, "M", list, where), f"{where}.M")
        if len(M) != 2 or any(len(r) != 2 for r in M):
            raise doc.error("edge matrices must be 2x2", None, where)
        if to not in sides or frm not in sides:
            raise doc.error("edge refers to an unknown player", None, where)
        edges[(to, frm)] = M
    return RestrictedPolymatrixGame.make(players, sides, edges)


def parse_polymatrix_file(path: str | Path):
    return polymatrix_from_doc(load_doc(path))


def parse_polymatrix_text(text: str, path: str | None = None):
    return polymatrix_from_doc(_Doc(text, path))


def write_polymatrix(g, path: str | Path) -> None:
    Path(path).write_text(dumps(polymatrix_to_json(g)))
