"""The Nearest Codeword / Odd Set / DCSP(B2) / DCSP(B3) cycle."""

from __future__ import annotations

import numpy as np

from ..errors import InfeasibleSource, PreconditionError
from ..gf2 import Gf2Matrix, orthogonal_complement, solve
from ..instances.model import (Constraint, DcspInstance, DcspSolution, EvenOddSetInstance, NcInstance,
                               OddSetInstance, evaluate)
from ..relations import B2, B3, Language, odd
from ..solvers.linear import constraint_equations, is_single_equation
from .artifact import COST_PRESERVING, ReductionArtifact, chain
from .core import add_constants, eliminate_undeletable
from .pp import odd_definition, pp_expand


def _identity(T):
    return frozenset(T)


def evenodd_to_odd(instance: EvenOddSetInstance) -> ReductionArtifact:
    """Fold even targets into odd ones using the lowest-indexed odd set."""
    odd_sets = [i for i, p in enumerate(instance.parities) if p == 1]
    if not odd_sets:
        target = OddSetInstance(instance.n, ())
        return ReductionArtifact(instance, target, COST_PRESERVING, lambda T: frozenset(),
                                 note="no odd set: the empty set is optimal")
    anchor = set(instance.sets[odd_sets[0]])
    sets = []
    for s, p in zip(instance.sets, instance.parities):
        sets.append(tuple(sorted(set(s) if p == 1 else set(s) ^ anchor)))
    target = OddSetInstance(instance.n, sets)
    return ReductionArtifact(instance, target, COST_PRESERVING, _identity,
                             note=f"even sets replaced by their symmetric difference with set {odd_sets[0]}")


def nc_to_evenodd(nc: NcInstance) -> ReductionArtifact:
    """Sets are the supports of A-perp rows; targets are the bits of A-perp b."""
    perp = orthogonal_complement(nc.A)
    syndrome = perp @ nc.b if perp.rows else np.zeros(0, dtype=np.uint8)
    sets = [tuple(int(j) for j in np.flatnonzero(row)) for row in perp.bits]
    target = EvenOddSetInstance(nc.m, tuple(sets), tuple(int(s) for s in syndrome))

    def pull_back(T):
        z = np.zeros(nc.m, dtype=np.uint8)
        z[sorted(T)] = 1
        x = solve(nc.A, nc.b ^ z)
        if x is None:
            raise ValueError("set does not meet the parity targets")
        return x

    return ReductionArtifact(nc, target, COST_PRESERVING, pull_back,
                             note="parity checks of the code (orthogonal complement)")


def nc_to_oddset(nc: NcInstance) -> ReductionArtifact:
    first = nc_to_evenodd(nc)
    return chain(first, evenodd_to_odd(first.target), note="nearest codeword to odd set")


def oddset_to_dcspB2(instance: EvenOddSetInstance) -> ReductionArtifact:
    """Undeletable odd^s per set (expanded over B2), a deletable ``nx`` per used element.

    Elements that occur in no set get no variable.  The result has no
    undeletable constraints left.
    """
    if not instance.is_odd_set:
        raise PreconditionError("expected an all-odd instance")
    if any(len(s) == 0 for s in instance.sets):
        raise InfeasibleSource("an empty set can never be hit an odd number of times")
    if instance.sets and solve(instance.incidence(), np.ones(instance.m, dtype=np.uint8)) is None:
        raise InfeasibleSource("parity constraints are inconsistent")
    used = sorted({e for s in instance.sets for e in s})
    name = {e: f"e{e}" for e in used}
    sizes = sorted({len(s) for s in instance.sets})
    rels = list(B2()) + [odd(s) for s in sizes if s > 1]
    lang = Language(tuple(r for r in rels))
    constraints = []
    for s in instance.sets:
        rel = "x" if len(s) == 1 else f"odd{len(s)}"
        constraints.append(Constraint(rel, tuple(name[e] for e in s), True))
    constraints += [Constraint("nx", (name[e],)) for e in used]
    staged = DcspInstance(lang, tuple(name[e] for e in used), tuple(constraints))
    definitions = {f"odd{s}": odd_definition(s) for s in sizes if s > 1}
    expanded = pp_expand(staged, definitions, B2())
    plain = eliminate_undeletable(expanded.target)
    steps = chain(expanded, plain)

    def pull_back(sol: DcspSolution) -> frozenset:
        phi = steps.pull_back(sol).assignment
        return frozenset(e for e in used if phi[name[e]] == 1)

    return ReductionArtifact(instance, plain.target, COST_PRESERVING, pull_back, 1,
                             "odd^s chains over B2, negative unit per element")


def _check_language(instance, base, what):
    for c in instance.constraints:
        if c.relation not in base or not base[c.relation].same_tuples(instance.language[c.relation]):
            raise PreconditionError(f"instance is not over {what}: relation {c.relation!r}")


def dcspB2_to_dcspB3(instance: DcspInstance) -> ReductionArtifact:
    """Constants through an xor pair, then the undeletable pair is replicated away."""
    _check_language(instance, B2(), "B2")
    first = add_constants(instance, B3())
    return chain(first, eliminate_undeletable(first.target), note="B2 to B3 via constants")


def dcsp_to_nc(instance: DcspInstance) -> ReductionArtifact:
    """One row per constraint for languages of single GF(2) equations.

    Repeated scope variables add up mod 2.  Pull-back deletes exactly the
    rows the vector gets wrong.
    """
    if instance.has_undeletable:
        raise PreconditionError("remove undeletable constraints first")
    for r in instance.language:
        if not is_single_equation(r):
            raise PreconditionError(f"relation {r.name!r} is not a single GF(2) equation")
    n = len(instance.variables)
    if n == 0:
        raise PreconditionError("instance has no variables")
    A = np.zeros((len(instance.constraints), n), dtype=np.uint8)
    b = np.zeros(len(instance.constraints), dtype=np.uint8)
    for j in range(len(instance.constraints)):
        eqs = constraint_equations(instance, j)
        if eqs:
            mask, rhs = eqs[0]
            A[j] = [(mask >> i) & 1 for i in range(n)]
            b[j] = rhs
    target = NcInstance(Gf2Matrix(A, cols=n), b)

    def pull_back(x) -> DcspSolution:
        phi = {v: int(x[i]) for i, v in enumerate(instance.variables)}
        return DcspSolution(evaluate(instance, phi), phi)

    return ReductionArtifact(instance, target, COST_PRESERVING, pull_back, 1,
                             "constraint rows of a linear system")


def dcspB3_to_nc(instance: DcspInstance) -> ReductionArtifact:
    _check_language(instance, B3(), "B3")
    return dcsp_to_nc(instance)


def parity_cycle(nc: NcInstance):
    """NC -> Odd Set -> DCSP(B2) -> DCSP(B3) -> NC; returns the four artifacts."""
    a = nc_to_oddset(nc)
    b = oddset_to_dcspB2(a.target)
    c = dcspB2_to_dcspB3(b.target)
    d = dcspB3_to_nc(c.target)
    return [a, b, c, d]
