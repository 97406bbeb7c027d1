"""Instance types for every problem the package handles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from ..errors import MalformedInstance
from ..gf2 import Gf2Matrix, as_vector
from ..relations import Language


# -- minimum-deletion CSP ----------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    relation: str
    scope: tuple
    undeletable: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))


@dataclass(frozen=True)
class DcspInstance:
    """Variables and constraints over a language; some constraints may be undeletable.

    With no undeletable constraints this is a plain minimum-deletion
    instance.  Scopes may repeat variables.
    """

    language: Language
    variables: tuple
    constraints: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise MalformedInstance("duplicate variable names")
        declared = set(self.variables)
        for i, c in enumerate(self.constraints):
            if c.relation not in self.language:
                raise MalformedInstance(f"constraint {i}: unknown relation {c.relation!r}")
            arity = self.language[c.relation].arity
            if len(c.scope) != arity:
                raise MalformedInstance(
                    f"constraint {i}: scope has {len(c.scope)} variables, {c.relation} has arity {arity}")
            missing = [v for v in c.scope if v not in declared]
            if missing:
                raise MalformedInstance(f"constraint {i}: undeclared variable {missing[0]!r}")

    @property
    def undeletable(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.constraints) if c.undeletable)

    @property
    def deletable(self) -> tuple:
        return tuple(i for i, c in enumerate(self.constraints) if not c.undeletable)

    @property
    def has_undeletable(self) -> bool:
        return any(c.undeletable for c in self.constraints)

    def relation_of(self, index):
        return self.language[self.constraints[index].relation]

    def satisfies(self, index, assignment: Mapping) -> bool:
        c = self.constraints[index]
        rel = self.language[c.relation]
        return tuple(int(assignment[v]) for v in c.scope) in rel

    def replace(self, **changes) -> "DcspInstance":
        fields = dict(language=self.language, variables=self.variables, constraints=self.constraints)
        fields.update(changes)
        return DcspInstance(**fields)


@dataclass(frozen=True)
class DcspSolution:
    """A deletion set together with an assignment witnessing it."""

    deleted: frozenset
    assignment: Mapping = field(hash=False, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        object.__setattr__(self, "assignment", dict(self.assignment))

    @property
    def cost(self) -> int:
        return len(self.deleted)


def _check_assignment(instance: DcspInstance, assignment: Mapping):
    missing = [v for v in instance.variables if v not in assignment]
    if missing:
        raise MalformedInstance(f"assignment misses variable {missing[0]!r}")


def evaluate(instance: DcspInstance, assignment: Mapping) -> frozenset:
    """Indices of constraints violated by ``assignment``."""
    _check_assignment(instance, assignment)
    return frozenset(i for i in range(len(instance.constraints))
                     if not instance.satisfies(i, assignment))


def deletion_set(instance: DcspInstance, indices) -> frozenset:
    """Validated deletion set: distinct, in range, nothing undeletable."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise MalformedInstance("deletion set repeats a constraint")
    for i in indices:
        if not 0 <= i < len(instance.constraints):
            raise MalformedInstance(f"constraint index {i} out of range")
        if instance.constraints[i].undeletable:
            raise MalformedInstance(f"constraint {i} is undeletable")
    return frozenset(indices)


def check_deletion_set(instance: DcspInstance, deleted, witness: Mapping) -> bool:
    """True iff ``witness`` satisfies every constraint outside ``deleted``."""
    return evaluate(instance, witness) <= frozenset(deleted)


def solution_from_assignment(instance: DcspInstance, assignment: Mapping) -> Optional[DcspSolution]:
    """The cheapest deletion set an assignment supports, or None if it breaks an undeletable."""
    violated = evaluate(instance, assignment)
    if violated & instance.undeletable:
        return None
    return DcspSolution(violated, {v: int(assignment[v]) for v in instance.variables})


def dual_name(name: str) -> str:
    return name[1:] if name.startswith("~") else "~" + name


def dual_instance(instance: DcspInstance) -> DcspInstance:
    """Complement every relation (tuple-wise) and toggle a ``~`` prefix on its name."""
    language = Language(tuple(r.complemented(dual_name(r.name)) for r in instance.language))
    constraints = tuple(Constraint(dual_name(c.relation), c.scope, c.undeletable)
                        for c in instance.constraints)
    return DcspInstance(language, instance.variables, constraints)


def complement_assignment(assignment: Mapping) -> dict:
    return {v: 1 - int(b) for v, b in assignment.items()}


def is_feasible_solution(instance: DcspInstance, solution: DcspSolution) -> bool:
    if solution.deleted & instance.undeletable:
        return False
    if any(not 0 <= i < len(instance.constraints) for i in solution.deleted):
        return False
    return check_deletion_set(instance, solution.deleted, solution.assignment)


# -- parity set systems ------------------------------------------------------

ODD, EVEN = 1, 0


@dataclass(frozen=True)
class EvenOddSetInstance:
    """Set system over ``range(n)``; ``parities[i]`` is 1 when set ``i`` must be hit oddly."""

    n: int
    sets: tuple
    parities: tuple

    def __post_init__(self):
        sets = tuple(tuple(sorted(set(int(e) for e in s))) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if self.n < 0:
            raise MalformedInstance("universe size must be nonnegative")
        if len(self.sets) != len(self.parities):
            raise MalformedInstance("one parity target per set is required")
        for i, s in enumerate(self.sets):
            if any(not 0 <= e < self.n for e in s):
                raise MalformedInstance(f"set {i} has an element outside the universe")
        if any(p not in (ODD, EVEN) for p in self.parities):
            raise MalformedInstance("parities must be 0 (even) or 1 (odd)")

    @property
    def is_odd_set(self) -> bool:
        return all(p == ODD for p in self.parities)

    @property
    def m(self) -> int:
        return len(self.sets)

    def incidence(self) -> Gf2Matrix:
        bits = np.zeros((len(self.sets), max(self.n, 1)), dtype=np.uint8)
        for i, s in enumerate(self.sets):
            bits[i, list(s)] = 1
        return Gf2Matrix(bits, cols=max(self.n, 1))

    def set_masks(self):
        return [sum(1 << int(e) for e in s) for s in self.sets]


def OddSetInstance(n: int, sets) -> EvenOddSetInstance:
    sets = tuple(sets)
    return EvenOddSetInstance(n, sets, (ODD,) * len(sets))


def check_parity_solution(instance: EvenOddSetInstance, chosen) -> bool:
    chosen = frozenset(chosen)
    if any(not 0 <= e < instance.n for e in chosen):
        return False
    return all(len(chosen.intersection(s)) % 2 == p
               for s, p in zip(instance.sets, instance.parities))


# -- nearest codeword --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NcInstance:
    """Matrix ``A`` (m x n) and target ``b``; minimise the distance from ``A x`` to ``b``."""

    A: Gf2Matrix
    b: np.ndarray

    def __post_init__(self):
        b = as_vector(self.b)
        if b.size != self.A.rows:
            raise MalformedInstance(f"target has length {b.size}, matrix has {self.A.rows} rows")
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @property
    def m(self):
        return self.A.rows

    @property
    def n(self):
        return self.A.cols

    def distance(self, x) -> int:
        return int(np.count_nonzero((self.A @ as_vector(x)) ^ self.b))

    def __eq__(self, other):
        return (isinstance(other, NcInstance) and self.A == other.A
                and bool(np.array_equal(self.b, other.b)))

    def __hash__(self):
        return hash((self.A, self.b.tobytes()))


# -- monotone circuits -------------------------------------------------------

INPUT, AND, OR = "input", "and", "or"


@dataclass(frozen=True)
class Gate:
    id: str
    kind: str
    operands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))


@dataclass(frozen=True)
class MonotoneCircuit:
    """Topologically ordered AND/OR gates of fan-in 2 over input gates."""

    gates: tuple
    output: str

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        seen = set()
        for g in self.gates:
            if g.id in seen:
                raise MalformedInstance(f"duplicate gate id {g.id!r}")
            if g.kind == INPUT:
                if g.operands:
                    raise MalformedInstance(f"input gate {g.id!r} has operands")
            elif g.kind in (AND, OR):
                if len(g.operands) != 2:
                    raise MalformedInstance(f"gate {g.id!r} must have exactly 2 operands")
                for op in g.operands:
                    if op not in seen:
                        raise MalformedInstance(
                            f"gate {g.id!r} uses {op!r} before it is defined (cycle or bad order)")
            else:
                raise MalformedInstance(f"gate {g.id!r} has unknown kind {g.kind!r}")
            seen.add(g.id)
        if self.output not in seen:
            raise MalformedInstance(f"output {self.output!r} is not a gate")

    @property
    def inputs(self) -> tuple:
        return tuple(g.id for g in self.gates if g.kind == INPUT)

    def evaluate(self, true_inputs) -> bool:
        true_inputs = set(true_inputs)
        value = {}
        for g in self.gates:
            if g.kind == INPUT:
                value[g.id] = g.id in true_inputs
            elif g.kind == AND:
                value[g.id] = value[g.operands[0]] and value[g.operands[1]]
            else:
                value[g.id] = value[g.operands[0]] or value[g.operands[1]]
        return value[self.output]


# -- graphs ------------------------------------------------------------------

def _edge(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise MalformedInstance("duplicate vertex")
        edges = []
        for u, v in self.edges:
            if u == v:
                raise MalformedInstance(f"self-loop on {u!r}")
            if u not in vs or v not in vs:
                raise MalformedInstance(f"edge {u!r}-{v!r} uses an unknown vertex")
            edges.append(_edge(u, v))
        if len(set(edges)) != len(edges):
            raise MalformedInstance("duplicate edge")
        object.__setattr__(self, "edges", tuple(edges))

    def induced_edges(self, chosen) -> int:
        chosen = set(chosen)
        return sum(1 for u, v in self.edges if u in chosen and v in chosen)


@dataclass(frozen=True)
class ColoredGraph:
    """Graph whose vertices are partitioned into ``k`` numbered classes."""

    classes: tuple
    edges: tuple

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        flat = [v for c in classes for v in c]
        if len(set(flat)) != len(flat):
            raise MalformedInstance("color classes must be disjoint")
        # validates edges
        g = Graph(tuple(flat), self.edges)
        object.__setattr__(self, "edges", g.edges)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def vertices(self) -> tuple:
        return tuple(v for c in self.classes for v in c)

    @property
    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def color_of(self, v) -> int:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        raise KeyError(v)

    def edges_between(self, i, j) -> tuple:
        ci, cj = set(self.classes[i]), set(self.classes[j])
        return tuple(e for e in self.edges
                     if (e[0] in ci and e[1] in cj) or (e[0] in cj and e[1] in ci))


# -- 3-CNF -------------------------------------------------------------------

@dataclass(frozen=True)
class Cnf3:
    """CNF with at most three literals per clause, DIMACS-style signed literals."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for i, c in enumerate(clauses):
            if not c:
                raise MalformedInstance(f"clause {i} is empty")
            if len(c) > 3:
                raise MalformedInstance(f"clause {i} has more than three literals")
            if any(l == 0 or abs(l) > self.n_vars for l in c):
                raise MalformedInstance(f"clause {i} has a literal outside 1..{self.n_vars}")

    def clause_satisfied(self, index, assignment: Mapping) -> bool:
        return any(bool(assignment[abs(l)]) == (l > 0) for l in self.clauses[index])

    def satisfied_count(self, assignment: Mapping) -> int:
        return sum(self.clause_satisfied(i, assignment) for i in range(len(self.clauses)))
