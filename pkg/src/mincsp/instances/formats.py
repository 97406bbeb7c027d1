"""Line-oriented text formats for every instance kind.

``#`` starts a comment everywhere except DIMACS files, which use ``c`` lines.
Every parser raises :class:`~mincsp.errors.ParseError` with a line number.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import MalformedInstance, MalformedRelation, ParseError
from ..gf2 import Gf2Matrix, format_bits, parse_bits
from ..relations import (Language, format_relation, numbered_lines, parse_language,
                         parse_relation_blocks, serialize_language)
from .model import (AND, INPUT, OR, ColoredGraph, Cnf3, Constraint, DcspInstance,
                    EvenOddSetInstance, Gate, MonotoneCircuit, NcInstance)

__all__ = [
    "parse_language", "serialize_language",
    "parse_dcsp", "serialize_dcsp",
    "parse_oddset", "serialize_oddset",
    "parse_nc", "serialize_nc",
    "parse_circuit", "serialize_circuit",
    "parse_mkds", "serialize_mkds",
    "parse_cnf", "serialize_cnf",
    "load", "dump", "KIND_BY_SUFFIX",
]


def _int(word, lineno, what="integer"):
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"expected {what}, got {word!r}", lineno) from None


# .dcsp ----------------------------------------------------------------------

def parse_dcsp(text: str) -> DcspInstance:
    """Relation blocks, one ``variables`` line, then ``constraint``/``constraint!`` lines.

    ``constraint! R a b`` marks an undeletable constraint.
    """
    relations, rest = parse_relation_blocks(numbered_lines(text))
    variables = None
    constraints = []
    for lineno, line in rest:
        words = line.split()
        if words[0] == "variables":
            if variables is not None:
                raise ParseError("second 'variables' line", lineno)
            variables = tuple(words[1:])
        elif words[0] in ("constraint", "constraint!"):
            if variables is None:
                raise ParseError("constraint before 'variables'", lineno)
            if len(words) < 3:
                raise ParseError("expected 'constraint <relation> <vars...>'", lineno)
            constraints.append((lineno, Constraint(words[1], tuple(words[2:]), words[0] == "constraint!")))
        else:
            raise ParseError(f"unknown directive {words[0]!r}", lineno)
    if variables is None:
        raise ParseError("missing 'variables' line")
    try:
        language = Language(tuple(relations))
    except MalformedRelation as exc:
        raise ParseError(str(exc)) from None
    for lineno, c in constraints:
        try:
            DcspInstance(language, variables, (c,))
        except MalformedInstance as exc:
            raise ParseError(str(exc).replace("constraint 0: ", ""), lineno) from None
    try:
        return DcspInstance(language, variables, tuple(c for _, c in constraints))
    except MalformedInstance as exc:
        raise ParseError(str(exc)) from None


def serialize_dcsp(instance: DcspInstance) -> str:
    lines = [format_relation(r) for r in instance.language]
    lines.append(" ".join(["variables", *instance.variables]))
    for c in instance.constraints:
        head = "constraint!" if c.undeletable else "constraint"
        lines.append(" ".join([head, c.relation, *c.scope]))
    return "\n".join(lines) + "\n"


# .odds ----------------------------------------------------------------------

def parse_oddset(text: str) -> EvenOddSetInstance:
    """``universe <n>`` then ``set odd|even e1 e2 ...`` lines (elements 0-based)."""
    lines = numbered_lines(text)
    if not lines or lines[0][1].split()[0] != "universe":
        raise ParseError("expected 'universe <n>' first", lines[0][0] if lines else None)
    words = lines[0][1].split()
    if len(words) != 2:
        raise ParseError("expected 'universe <n>'", lines[0][0])
    n = _int(words[1], lines[0][0])
    sets, parities = [], []
    for lineno, line in lines[1:]:
        words = line.split()
        if words[0] != "set" or len(words) < 2 or words[1] not in ("odd", "even"):
            raise ParseError("expected 'set odd|even <elements...>'", lineno)
        elems = [_int(w, lineno, "element") for w in words[2:]]
        if any(not 0 <= e < n for e in elems):
            raise ParseError(f"element outside universe 0..{n - 1}", lineno)
        if len(set(elems)) != len(elems):
            raise ParseError("repeated element in a set", lineno)
        sets.append(tuple(elems))
        parities.append(1 if words[1] == "odd" else 0)
    try:
        return EvenOddSetInstance(n, tuple(sets), tuple(parities))
    except MalformedInstance as exc:
        raise ParseError(str(exc)) from None


def serialize_oddset(instance: EvenOddSetInstance) -> str:
    lines = [f"universe {instance.n}"]
    for s, p in zip(instance.sets, instance.parities):
        lines.append(" ".join(["set", "odd" if p else "even", *map(str, s)]))
    return "\n".join(lines) + "\n"


# .nc ------------------------------------------------------------------------

def parse_nc(text: str) -> NcInstance:
    """``matrix <m> <n>``, m bit-string rows, ``target``, one m-bit string."""
    lines = numbered_lines(text)
    if not lines:
        raise ParseError("empty file")
    lineno, head = lines[0]
    words = head.split()
    if len(words) != 3 or words[0] != "matrix":
        raise ParseError("expected 'matrix <m> <n>'", lineno)
    m, n = _int(words[1], lineno), _int(words[2], lineno)
    if m < 1 or n < 1:
        raise ParseError("matrix dimensions must be positive", lineno)
    if len(lines) != m + 3:
        raise ParseError(f"expected {m} rows, 'target' and a target line", lineno)
    rows = []
    for lineno, line in lines[1:m + 1]:
        if len(line) != n:
            raise ParseError(f"row must have {n} bits", lineno)
        try:
            rows.append(parse_bits(line))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    lineno, marker = lines[m + 1]
    if marker != "target":
        raise ParseError("expected 'target'", lineno)
    lineno, tline = lines[m + 2]
    if len(tline) != m:
        raise ParseError(f"target must have {m} bits", lineno)
    try:
        b = parse_bits(tline)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None
    return NcInstance(Gf2Matrix(np.stack(rows), cols=n), b)


def serialize_nc(instance: NcInstance) -> str:
    lines = [f"matrix {instance.m} {instance.n}"]
    lines += [format_bits(row) for row in instance.A.bits]
    lines += ["target", format_bits(instance.b)]
    return "\n".join(lines) + "\n"


# .mcirc ---------------------------------------------------------------------

def parse_circuit(text: str) -> MonotoneCircuit:
    """``input <id>``, ``and <id> <a> <b>``, ``or <id> <a> <b>``, and one ``output <id>``."""
    gates, output = [], None
    for lineno, line in numbered_lines(text):
        words = line.split()
        kind = words[0]
        if kind == INPUT and len(words) == 2:
            gates.append(Gate(words[1], INPUT))
        elif kind in (AND, OR) and len(words) == 4:
            gates.append(Gate(words[1], kind, (words[2], words[3])))
        elif kind == "output" and len(words) == 2:
            if output is not None:
                raise ParseError("second output line", lineno)
            output = words[1]
        else:
            raise ParseError(f"cannot parse gate line {line!r}", lineno)
        try:
            if kind != "output":
                MonotoneCircuit(tuple(gates), gates[-1].id)
        except MalformedInstance as exc:
            raise ParseError(str(exc), lineno) from None
    if output is None:
        raise ParseError("missing output line")
    try:
        return MonotoneCircuit(tuple(gates), output)
    except MalformedInstance as exc:
        raise ParseError(str(exc)) from None


def serialize_circuit(circuit: MonotoneCircuit) -> str:
    lines = [" ".join([g.kind, g.id, *g.operands]) for g in circuit.gates]
    lines.append(f"output {circuit.output}")
    return "\n".join(lines) + "\n"


# .mkds ----------------------------------------------------------------------

def parse_mkds(text: str) -> ColoredGraph:
    """``classes <k>``, ``vertex <name> <class>`` (0-based), ``edge <u> <v>``."""
    lines = numbered_lines(text)
    if not lines or lines[0][1].split()[0] != "classes":
        raise ParseError("expected 'classes <k>' first", lines[0][0] if lines else None)
    words = lines[0][1].split()
    if len(words) != 2:
        raise ParseError("expected 'classes <k>'", lines[0][0])
    k = _int(words[1], lines[0][0])
    classes = [[] for _ in range(k)]
    edges = []
    known = set()
    for lineno, line in lines[1:]:
        words = line.split()
        if words[0] == "vertex" and len(words) == 3:
            c = _int(words[2], lineno, "class")
            if not 0 <= c < k:
                raise ParseError(f"class {c} outside 0..{k - 1}", lineno)
            if words[1] in known:
                raise ParseError(f"vertex {words[1]!r} declared twice", lineno)
            known.add(words[1])
            classes[c].append(words[1])
        elif words[0] == "edge" and len(words) == 3:
            for v in words[1:]:
                if v not in known:
                    raise ParseError(f"unknown vertex {v!r}", lineno)
            if words[1] == words[2]:
                raise ParseError("self-loop", lineno)
            edges.append((words[1], words[2]))
        else:
            raise ParseError(f"cannot parse {line!r}", lineno)
    try:
        return ColoredGraph(tuple(tuple(c) for c in classes), tuple(edges))
    except MalformedInstance as exc:
        raise ParseError(str(exc)) from None


def serialize_mkds(graph: ColoredGraph) -> str:
    lines = [f"classes {graph.k}"]
    for i, c in enumerate(graph.classes):
        lines += [f"vertex {v} {i}" for v in c]
    lines += [f"edge {u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


# .cnf (DIMACS subset) -------------------------------------------------------

def parse_cnf(text: str) -> Cnf3:
    header = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            words = line.split()
            if header is not None or len(words) != 4 or words[1] != "cnf":
                raise ParseError("expected a single 'p cnf <vars> <clauses>' header", lineno)
            header = (_int(words[2], lineno), _int(words[3], lineno))
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", lineno)
        for word in line.split():
            lit = _int(word, lineno, "literal")
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                if len(current) > 3:
                    raise ParseError("clause with more than three literals", lineno)
                if any(abs(l) > header[0] for l in current):
                    raise ParseError("literal exceeds the declared variable count", lineno)
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return Cnf3(header[0], tuple(clauses))


def serialize_cnf(formula: Cnf3) -> str:
    lines = [f"p cnf {formula.n_vars} {len(formula.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in formula.clauses]
    return "\n".join(lines) + "\n"


# dispatch by suffix ---------------------------------------------------------

KIND_BY_SUFFIX = {
    ".lang": (parse_language, serialize_language),
    ".dcsp": (parse_dcsp, serialize_dcsp),
    ".odds": (parse_oddset, serialize_oddset),
    ".nc": (parse_nc, serialize_nc),
    ".mcirc": (parse_circuit, serialize_circuit),
    ".mkds": (parse_mkds, serialize_mkds),
    ".cnf": (parse_cnf, serialize_cnf),
}


def load(path):
    path = Path(path)
    try:
        parser, _ = KIND_BY_SUFFIX[path.suffix]
    except KeyError:
        raise ParseError(f"unknown file kind {path.suffix!r}") from None
    return parser(path.read_text(encoding="utf-8"))


_SERIALIZERS = {
    Language: serialize_language,
    DcspInstance: serialize_dcsp,
    EvenOddSetInstance: serialize_oddset,
    NcInstance: serialize_nc,
    MonotoneCircuit: serialize_circuit,
    ColoredGraph: serialize_mkds,
    Cnf3: serialize_cnf,
}


def serialize(obj) -> str:
    return _SERIALIZERS[type(obj)](obj)


def dump(obj, path):
    Path(path).write_text(serialize(obj), encoding="utf-8")
