"""PureCircuit instances: validation, assignment checking, normalization."""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InvalidInstanceError, MissingValueError
from .games import to_rational
from .report import ReportBuilder, ValidationReport

_ARITY = {"NOT": (1, 1), "AND": (2, 1), "PURIFY": (1, 2)}

Assignment = dict  # variable name -> Fraction in [0, 1]


@dataclass(frozen=True)
class Gate:
    op: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        op = self.op.upper()
        if op not in _ARITY:
            raise ValueError(f"unknown gate {self.op!r}")
        n_in, n_out = _ARITY[op]
        if len(self.inputs) != n_in or len(self.outputs) != n_out:
            raise ValueError(f"{op} takes {n_in} input(s) and {n_out} output(s)")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    def edges(self):
        """Dependency edges input -> output."""
        return [(u, v) for u in self.inputs for v in self.outputs]

    def __str__(self) -> str:
        return f"{','.join(self.outputs)} = {self.op}({','.join(self.inputs)})"


def NOT(u: str, v: str) -> Gate:
    return Gate("NOT", (u,), (v,))


def AND(u: str, v: str, w: str) -> Gate:
    return Gate("AND", (u, v), (w,))


def PURIFY(u: str, v: str, w: str) -> Gate:
    return Gate("PURIFY", (u,), (v, w))


@dataclass(frozen=True)
class PureCircuitInstance:
    variables: tuple[str, ...]
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "gates", tuple(self.gates))

    def edges(self) -> list[tuple[str, str]]:
        return [e for g in self.gates for e in g.edges()]

    def out_degree(self) -> dict[str, int]:
        d = {v: 0 for v in self.variables}
        for u, _ in self.edges():
            d[u] = d.get(u, 0) + 1
        return d

    def in_degree(self) -> dict[str, int]:
        d = {v: 0 for v in self.variables}
        for _, v in self.edges():
            d[v] = d.get(v, 0) + 1
        return d


def two_coloring(inst: PureCircuitInstance) -> dict[str, str] | None:
    """Sides "L"/"R" of the undirected dependency graph, or None if it has an odd cycle.

    In each connected component the lexicographically smallest variable goes to L.
    """
    adj = defaultdict(list)
    for u, v in inst.edges():
        adj[u].append(v)
        adj[v].append(u)
    side: dict[str, str] = {}
    for start in sorted(inst.variables):
        if start in side:
            continue
        side[start] = "L"
        queue = deque([start])
        while queue:
            u = queue.popleft()
            other = "R" if side[u] == "L" else "L"
            for v in adj[u]:
                if v not in side:
                    side[v] = other
                    queue.append(v)
                elif side[v] != other:
                    return None
    return side


def validate_instance(inst: PureCircuitInstance) -> ValidationReport:
    rb = ReportBuilder("PureCircuit instance")
    declared = set(inst.variables)
    if len(declared) != len(inst.variables):
        rb.add("variables", "", "variable names must be unique")
    producers = defaultdict(int)
    for gi, g in enumerate(inst.gates):
        for v in g.inputs + g.outputs:
            if v not in declared:
                rb.add("gate", gi, f"unknown variable {v!r}")
        if len(set(g.outputs)) != len(g.outputs):
            rb.add("gate", gi, "gate outputs must be distinct")
        if g.op == "AND" and g.inputs[0] == g.inputs[1]:
            rb.add("gate", gi, "AND inputs must be distinct")
        for v in g.outputs:
            producers[v] += 1
    for v in inst.variables:
        if producers[v] != 1:
            rb.add("variable", v, f"must be the output of exactly one gate (found {producers[v]})")
    ind, outd = inst.in_degree(), inst.out_degree()
    for v in inst.variables:
        if ind[v] > 2:
            rb.add("variable", v, f"in-degree {ind[v]} exceeds 2")
        if outd[v] > 2:
            rb.add("variable", v, f"out-degree {outd[v]} exceeds 2")
        if ind[v] + outd[v] > 3:
            rb.add("variable", v, f"degree {ind[v] + outd[v]} exceeds 3")
    if two_coloring(inst) is None:
        rb.add("graph", "", "dependency graph is not bipartite")
    return rb.build()


def require_valid(inst: PureCircuitInstance) -> None:
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report.format(), report)


def _is_bool(a: Fraction) -> bool:
    return a == 0 or a == 1


def check_assignment(inst: PureCircuitInstance, a: Mapping[str, object]) -> ValidationReport:
    for v in inst.variables:
        if v not in a:
            raise MissingValueError(f"variable {v!r} is unassigned")
    val = {v: to_rational(a[v]) for v in inst.variables}
    rb = ReportBuilder("assignment")
    for v in inst.variables:
        if not 0 <= val[v] <= 1:
            rb.add("variable", v, f"value {val[v]} outside [0,1]")
    for gi, g in enumerate(inst.gates):
        if g.op == "NOT":
            u, v = val[g.inputs[0]], val[g.outputs[0]]
            if _is_bool(u) and v != 1 - u:
                rb.add("gate", gi, f"NOT: input {u} requires output {1 - u}, got {v}")
        elif g.op == "AND":
            u, v = val[g.inputs[0]], val[g.inputs[1]]
            w = val[g.outputs[0]]
            if (u == 0 or v == 0) and w != 0:
                rb.add("gate", gi, f"AND: an input is 0 so the output must be 0, got {w}")
            elif u == 1 and v == 1 and w != 1:
                rb.add("gate", gi, f"AND: both inputs are 1 so the output must be 1, got {w}")
        else:
            u = val[g.inputs[0]]
            v, w = val[g.outputs[0]], val[g.outputs[1]]
            if _is_bool(u):
                if v != u or w != u:
                    rb.add("gate", gi, f"PURIFY: input {u} requires both outputs {u}, got {v}, {w}")
            elif not (_is_bool(v) or _is_bool(w)):
                rb.add("gate", gi, f"PURIFY: at least one output must be in {{0,1}}, got {v}, {w}")
    return rb.build()


def _fresh(name: str, taken: set[str]) -> str:
    i = 1
    while f"{name}{i}" in taken:
        i += 1
    taken.add(f"{name}{i}")
    return f"{name}{i}"


def normalize_for_reduction(inst: PureCircuitInstance) -> PureCircuitInstance:
    """Route AND inputs of out-degree-2 variables through NOT(NOT(.)).

    Afterwards no variable of out-degree two feeds an AND gate, which keeps
    every column of the gadget payoff block within the stage patterns.
    """
    require_valid(inst)
    outd = inst.out_degree()
    taken = set(inst.variables)
    variables = list(inst.variables)
    gates: list[Gate] = []
    for g in inst.gates:
        if g.op != "AND" or not any(outd[u] == 2 for u in g.inputs):
            gates.append(g)
            continue
        new_inputs = []
        for u in g.inputs:
            if outd[u] == 2:
                n1 = _fresh(f"{u}~not", taken)
                n2 = _fresh(f"{u}~not", taken)
                variables += [n1, n2]
                gates += [NOT(u, n1), NOT(n1, n2)]
                new_inputs.append(n2)
            else:
                new_inputs.append(u)
        gates.append(Gate("AND", tuple(new_inputs), g.outputs))
    out = PureCircuitInstance(tuple(variables), tuple(gates))
    require_valid(out)
    return out


def extend_assignment(original: PureCircuitInstance, normalized: PureCircuitInstance,
                      a: Mapping[str, object]) -> dict[str, Fraction]:
    """Extend an assignment of ``original`` to the NOT pairs added by normalization."""
    val = {v: to_rational(a[v]) for v in original.variables}
    pending = [g for g in normalized.gates if g.outputs[0] not in val]
    while pending:
        rest = []
        for g in pending:
            if g.op == "NOT" and g.inputs[0] in val:
                val[g.outputs[0]] = 1 - val[g.inputs[0]]
            else:
                rest.append(g)
        if len(rest) == len(pending):
            raise InvalidInstanceError("normalized instance has variables not reachable through inserted NOTs")
        pending = rest
    return val


def restrict_assignment(inst: PureCircuitInstance, a: Mapping[str, object]) -> dict[str, Fraction]:
    return {v: to_rational(a[v]) for v in inst.variables}


def random_circuit(seed: int, n_vars: int = 6, attempts: int = 1000) -> PureCircuitInstance:
    """A random valid instance with ``n_vars`` variables (n_vars >= 2)."""
    if n_vars < 2:
        raise ValueError("need at least two variables")
    rng = random.Random(seed)
    for _ in range(attempts):
        names = [f"x{i}" for i in range(n_vars)]
        color = {v: rng.randrange(2) for v in names}
        color[names[0]], color[names[1]] = 0, 1
        outd = {v: 0 for v in names}
        ind = {v: 0 for v in names}
        gates: list[Gate] = []
        todo = names[:]
        rng.shuffle(todo)
        ok = True
        while todo:
            w = todo[0]
            feeders = [u for u in names if color[u] != color[w] and outd[u] + ind[u] < 3 and outd[u] < 2]
            twins = [v for v in todo[1:] if color[v] == color[w]]
            options = ["NOT"]
            if len(feeders) >= 2:
                options.append("AND")
            if twins:
                options.append("PURIFY")
            op = rng.choice(options)
            if not feeders:
                ok = False
                break
            if op == "NOT":
                u = rng.choice(feeders)
                gates.append(NOT(u, w))
                outd[u] += 1
                ind[w] += 1
                todo.remove(w)
            elif op == "AND":
                u, v = rng.sample(feeders, 2)
                gates.append(AND(u, v, w))
                outd[u] += 1
                outd[v] += 1
                ind[w] += 2
                todo.remove(w)
            else:
                feeders2 = [u for u in feeders if outd[u] == 0 and ind[u] <= 1]
                if not feeders2:
                    continue
                u = rng.choice(feeders2)
                w2 = rng.choice(twins)
                gates.append(PURIFY(u, w, w2))
                outd[u] += 2
                ind[w] += 1
                ind[w2] += 1
                todo.remove(w)
                todo.remove(w2)
        if not ok:
            continue
        inst = PureCircuitInstance(tuple(names), tuple(gates))
        if validate_instance(inst).ok:
            return inst
    raise RuntimeError(f"could not generate a valid circuit with seed {seed}")
