"""Reductions between DCSP instances and from monotone circuits."""

from __future__ import annotations

from ..errors import InfeasibleSource, PreconditionError
from ..instances.model import (AND, INPUT, Constraint, DcspInstance, DcspSolution, MonotoneCircuit,
                               complement_assignment, dual_instance)
from ..relations import Language, clause_relation, closed_under, unit, xor
from ..solvers.satisfy import find_satisfying
from .artifact import COST_PRESERVING, ReductionArtifact


# -- undeletable constraints ---------------------------------------------------

def _replicate_undeletable(instance: DcspInstance, copies: int) -> ReductionArtifact:
    constraints = []
    origin = []
    for j, c in enumerate(instance.constraints):
        reps = copies if c.undeletable else 1
        for _ in range(reps):
            constraints.append(Constraint(c.relation, c.scope, False))
            origin.append(j)
    target = instance.replace(constraints=tuple(constraints))
    hard = instance.undeletable

    def pull_back(sol: DcspSolution) -> DcspSolution:
        touched = {origin[i] for i in sol.deleted}
        if touched & hard:
            # the proof's fallback: drop every deletable constraint
            witness = find_satisfying(instance, sorted(hard))
            if witness is None:
                raise InfeasibleSource("undeletable constraints are unsatisfiable")
            return DcspSolution(frozenset(instance.deletable), witness)
        return DcspSolution(frozenset(touched), sol.assignment)

    return ReductionArtifact(instance, target, COST_PRESERVING, pull_back, 1,
                             f"undeletable constraints replaced by {copies} deletable copies")


def eliminate_undeletable(instance: DcspInstance, check_feasible=True) -> ReductionArtifact:
    """Each undeletable constraint becomes m+1 deletable copies (m = constraint count)."""
    if check_feasible and instance.has_undeletable:
        if find_satisfying(instance, sorted(instance.undeletable)) is None:
            raise InfeasibleSource("undeletable constraints are unsatisfiable")
    return _replicate_undeletable(instance, len(instance.constraints) + 1)


# -- constants through a fixed xor pair ----------------------------------------

def _unit_value(relation):
    if relation.arity != 1:
        return None
    return 1 if relation.same_tuples(unit(1)) else 0 if relation.same_tuples(unit(0)) else None


def add_constants(instance: DcspInstance, target_language: Language) -> ReductionArtifact:
    """Remove unit constraints from an instance over a self-dual language plus units.

    Fresh X0, X1 get an undeletable ``xor``.  ``v = 0`` becomes
    ``xor(X0, u), xor(u, v)`` with fresh u (X1 for ``v = 1``), keeping the
    source's deletability.  The pull-back complements the witness when X0 = 1.
    """
    if "xor" not in target_language or not target_language["xor"].same_tuples(xor()):
        raise PreconditionError("target language needs the relation xor = {01, 10}")
    for r in target_language:
        if not closed_under(r, "not1"):
            raise PreconditionError(f"target relation {r.name!r} is not self-dual")
    for c in instance.constraints:
        rel = instance.language[c.relation]
        if _unit_value(rel) is None:
            if c.relation not in target_language or not target_language[c.relation].same_tuples(rel):
                raise PreconditionError(f"relation {c.relation!r} is not in the target language")
    taken = set(instance.variables)

    def fresh(base):
        name = base
        while name in taken:
            name = "_" + name
        taken.add(name)
        return name

    zero, one = fresh("_X0"), fresh("_X1")
    variables = list(instance.variables) + [zero, one]
    constraints = [Constraint("xor", (zero, one), True)]
    origin = [None]
    for j, c in enumerate(instance.constraints):
        value = _unit_value(instance.language[c.relation])
        if value is None:
            constraints.append(c)
            origin.append(j)
            continue
        u = fresh(f"_u{j}")
        variables.append(u)
        anchor = zero if value == 0 else one
        constraints.append(Constraint("xor", (anchor, u), c.undeletable))
        constraints.append(Constraint("xor", (u, c.scope[0]), c.undeletable))
        origin += [j, j]
    target = DcspInstance(target_language, tuple(variables), tuple(constraints))
    source_vars = instance.variables

    def pull_back(sol: DcspSolution) -> DcspSolution:
        phi = sol.assignment
        if phi[zero] == 1:
            phi = complement_assignment(phi)
        deleted = frozenset(origin[i] for i in sol.deleted if origin[i] is not None)
        return DcspSolution(deleted, {v: phi[v] for v in source_vars})

    return ReductionArtifact(instance, target, COST_PRESERVING, pull_back, 1,
                             "unit constraints routed through a fixed xor pair")


# -- complement ----------------------------------------------------------------

def dualize(instance: DcspInstance) -> ReductionArtifact:
    """Complement every relation; witnesses map by global complement."""
    target = dual_instance(instance)

    def pull_back(sol: DcspSolution) -> DcspSolution:
        return DcspSolution(sol.deleted, complement_assignment(sol.assignment))

    return ReductionArtifact(instance, target, COST_PRESERVING, pull_back, 1,
                             "every literal negated")


# -- monotone circuits -----------------------------------------------------------

def circuit_language() -> Language:
    """{x or y or not z, x, not x} with the names the gadget uses."""
    return Language((clause_relation((1, 1, 0)), unit(1), unit(0)))


def mcs_to_dcsp(circuit: MonotoneCircuit) -> ReductionArtifact:
    """Minimum-weight satisfying input set as a deletion problem.

    One variable per gate.  AND gate y = a & b gives ``a or a or not y`` and
    ``b or b or not y``; OR gate gives ``a or b or not y``.  These and the
    output unit are undeletable; each input gets a deletable ``not x``.
    """
    lang = circuit_language()
    clause = lang.relations[0].name
    constraints = []
    inputs = []
    for g in circuit.gates:
        if g.kind == INPUT:
            inputs.append(g.id)
            constraints.append(Constraint("nx", (g.id,)))
        elif g.kind == AND:
            a, b = g.operands
            constraints.append(Constraint(clause, (a, a, g.id), True))
            constraints.append(Constraint(clause, (b, b, g.id), True))
        else:
            a, b = g.operands
            constraints.append(Constraint(clause, (a, b, g.id), True))
    constraints.append(Constraint("x", (circuit.output,), True))
    target = DcspInstance(lang, tuple(g.id for g in circuit.gates), tuple(constraints))

    def pull_back(sol: DcspSolution) -> frozenset:
        # gate values under the witness never exceed the true circuit values,
        # so the inputs set to 1 already drive the output to 1
        return frozenset(i for i in inputs if sol.assignment[i] == 1)

    return ReductionArtifact(circuit, target, COST_PRESERVING, pull_back, 1,
                             "gate clauses undeletable, one deletable negative unit per input")
