"""Check reductions against exact oracles on both sides."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import singledispatch

import numpy as np

from ..errors import InfeasibleSource, InstanceTooLarge
from ..gf2 import MAX_FREE_VARIABLES, rank
from ..instances.formats import serialize
from ..instances.generators import random_circuit, random_dcsp, random_nc, random_oddset
from ..instances.model import (DcspInstance, DcspSolution, EvenOddSetInstance, MonotoneCircuit,
                               NcInstance, check_parity_solution, is_feasible_solution,
                               solution_from_assignment)
from ..relations import B2, B3, Language, clause_relation, closed_under, implication, nand, odd, or_, unit
from ..solvers.bijunctive import solve_bijunctive
from ..solvers.brute import brute_force_dcsp
from ..solvers.linear import affine_equations, solve_linear_dcsp
from ..solvers.parity import solve_nc_exact, solve_oddset_exact
from .artifact import A_REDUCTION, COST_PRESERVING, SELF_IMPROVEMENT
from .core import _replicate_undeletable, add_constants, dualize, eliminate_undeletable, mcs_to_dcsp
from .parity import dcspB2_to_dcspB3, dcspB3_to_nc, evenodd_to_odd, nc_to_oddset, oddset_to_dcspB2
from .pp import odd_definition, pp_expand
from .gadgets import oddset_self_improve

BRUTE_ORACLE_WORK = 1 << 23
MAX_CIRCUIT_INPUTS = 16
SAMPLED_SOLUTIONS = 8

PASS, FAIL, SKIP = "pass", "fail", "skip"


# -- oracles: (OPT, optimal solution) or None when infeasible ------------------

@singledispatch
def optimum(instance):
    raise TypeError(f"no oracle for {type(instance).__name__}")


@optimum.register
def _(instance: DcspInstance):
    # enumeration while it is cheap, then the exact structural solvers
    n = len(instance.variables)
    if (1 << n) * max(1, len(instance.constraints)) <= BRUTE_ORACLE_WORK:
        out = brute_force_dcsp(instance)
    elif all(affine_equations(r) is not None for r in instance.language):
        out = solve_linear_dcsp(instance)
    elif all(closed_under(r, "maj3") for r in instance.language):
        out = solve_bijunctive(instance)
    else:
        out = brute_force_dcsp(instance)
    if out.cost is None:
        return None
    return out.cost, DcspSolution(out.deleted, out.assignment)


@optimum.register
def _(instance: EvenOddSetInstance):
    out = solve_oddset_exact(instance)
    return None if out.cost is None else (out.cost, out.deleted)


@optimum.register
def _(instance: NcInstance):
    # the code dimension bounds syndrome search; wide codes go through equation deletion
    engine = "syndrome" if rank(instance.A) <= MAX_FREE_VARIABLES else "grouped"
    x, d = solve_nc_exact(instance, engine)
    return d, x


@optimum.register
def _(circuit: MonotoneCircuit):
    inputs = circuit.inputs
    if len(inputs) > MAX_CIRCUIT_INPUTS:
        raise InstanceTooLarge(f"{len(inputs)} inputs exceeds {MAX_CIRCUIT_INPUTS}")
    for w in range(len(inputs) + 1):
        for chosen in itertools.combinations(inputs, w):
            if circuit.evaluate(chosen):
                return w, frozenset(chosen)
    return None


@singledispatch
def solution_cost(instance, solution) -> int:
    """Cost of ``solution``; raises ValueError when it is not feasible."""
    raise TypeError(f"no cost function for {type(instance).__name__}")


@solution_cost.register
def _(instance: DcspInstance, solution):
    if not is_feasible_solution(instance, solution):
        raise ValueError("pulled-back DCSP solution is not feasible")
    return solution.cost


@solution_cost.register
def _(instance: EvenOddSetInstance, solution):
    if not check_parity_solution(instance, solution):
        raise ValueError("pulled-back set misses a parity target")
    return len(solution)


@solution_cost.register
def _(instance: NcInstance, solution):
    return instance.distance(solution)


@solution_cost.register
def _(circuit: MonotoneCircuit, solution):
    if not circuit.evaluate(solution):
        raise ValueError("pulled-back inputs do not satisfy the circuit")
    return len(solution)


def _sampled_solutions(instance, best):
    """The optimal target solution plus a few seeded random feasible ones (DCSP targets)."""
    out = [best]
    if isinstance(instance, DcspInstance):
        rng = np.random.default_rng(0)
        for _ in range(SAMPLED_SOLUTIONS):
            phi = {v: int(b) for v, b in zip(instance.variables, rng.integers(2, size=len(instance.variables)))}
            sol = solution_from_assignment(instance, phi)
            if sol is not None:
                out.append(sol)
    return out


# -- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    status: str
    kind: str
    alpha: int
    source_opt: object = None
    target_opt: object = None
    pulled_cost: object = None
    messages: tuple = ()
    instance_text: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        parts = [f"status={self.status}", f"kind={self.kind}", f"alpha={self.alpha}",
                 f"source_opt={self.source_opt}", f"target_opt={self.target_opt}",
                 f"pulled_cost={self.pulled_cost}"]
        if self.messages:
            parts.append("note=" + "; ".join(self.messages))
        return " ".join(parts)


def verify_reduction(artifact, source_oracle=optimum, target_oracle=optimum) -> VerificationReport:
    source, target = artifact.source, artifact.target
    kind, alpha = artifact.kind, artifact.alpha
    src = source_oracle(source)
    if src is None:
        return VerificationReport(SKIP, kind, alpha, messages=("source is infeasible",))
    opt, _ = src
    tgt = target_oracle(target)
    problems = []
    if tgt is None:
        return VerificationReport(FAIL, kind, alpha, opt, None, None,
                                  ("target is infeasible for a feasible source",), serialize(source))
    topt, tsol = tgt
    try:
        pulled = solution_cost(source, artifact.pull_back(tsol))
    except ValueError as exc:
        pulled = None
        problems.append(str(exc))
    if kind == COST_PRESERVING:
        if topt != opt:
            problems.append(f"OPT changed from {opt} to {topt}")
        if pulled is not None and pulled != opt:
            problems.append(f"pulled-back optimal solution costs {pulled}, OPT is {opt}")
    elif kind == SELF_IMPROVEMENT:
        if topt != 1 + opt + opt * opt:
            problems.append(f"target OPT {topt} is not 1 + {opt} + {opt}^2")
        if pulled is not None and pulled != opt:
            problems.append(f"pulled-back optimal solution costs {pulled}, OPT is {opt}")
    elif kind == A_REDUCTION:
        if opt > alpha * topt:
            problems.append(f"OPT {opt} exceeds alpha * target OPT {alpha * topt}")
        for s in _sampled_solutions(target, tsol):
            try:
                c = solution_cost(source, artifact.pull_back(s))
            except ValueError as exc:
                problems.append(str(exc))
                continue
            if c > alpha * solution_cost(target, s):
                problems.append(f"pulled-back cost {c} exceeds alpha * {solution_cost(target, s)}")
    else:
        raise ValueError(f"unknown reduction kind {kind!r}")
    status = FAIL if problems else PASS
    return VerificationReport(status, kind, alpha, opt, topt, pulled, tuple(problems),
                              serialize(source) if problems else "")


# -- named suites ----------------------------------------------------------------

def _size(seed, low=4, high=10):
    return low + seed % (high - low + 1)


def _bijunctive_language():
    return Language((or_(2), implication(), nand(2), unit(1), unit(0)))


def _horn_language():
    return Language((clause_relation((0, 0, 1)), unit(1), unit(0)))


def _b2_plus_odd3():
    return Language(B2().relations + (odd(3),))


def _mutated(instance):
    return _replicate_undeletable(instance, 1)


SUITES = {
    "eliminate_undeletable": (
        lambda s: random_dcsp(_bijunctive_language(), _size(s), _size(s) + 4, s, undeletable_fraction=0.3),
        eliminate_undeletable),
    "add_constants": (
        lambda s: random_dcsp(B2(), _size(s, 3, 8), _size(s, 3, 8) + 3, s),
        lambda I: add_constants(I, B3())),
    "evenodd_to_odd": (
        lambda s: random_oddset(_size(s), 5, 4, s, even_fraction=0.4),
        evenodd_to_odd),
    "mcs_to_dcsp": (
        lambda s: random_circuit(_size(s, 4, 10), s),
        mcs_to_dcsp),
    "dualize": (
        lambda s: random_dcsp(_horn_language(), _size(s), _size(s) + 4, s),
        dualize),
    "pp_expand": (
        lambda s: random_dcsp(_b2_plus_odd3(), _size(s, 4, 8), _size(s, 4, 8), s),
        lambda I: pp_expand(I, {"odd3": odd_definition(3)}, B2())),
    "nc_to_oddset": (
        lambda s: random_nc(_size(s, 3, 8), _size(s, 2, 6), s, density=0.4),
        nc_to_oddset),
    "oddset_to_dcspB2": (
        lambda s: random_oddset(_size(s, 3, 8), 4, 3, s),
        oddset_to_dcspB2),
    "dcspB2_to_dcspB3": (
        lambda s: random_dcsp(B2(), _size(s, 3, 8), _size(s, 3, 8) + 2, s),
        dcspB2_to_dcspB3),
    "dcspB3_to_nc": (
        lambda s: random_dcsp(B3(), _size(s), _size(s) + 3, s),
        dcspB3_to_nc),
    "oddset_self_improve": (
        lambda s: random_oddset(_size(s, 1, 4), 1 + s % 4, 3, s),
        oddset_self_improve),
    "mutation_eliminate_undeletable": (
        lambda s: random_dcsp(_bijunctive_language(), _size(s), _size(s) + 4, s, undeletable_fraction=0.3),
        _mutated),
}

MUTATION_SUITES = ("mutation_eliminate_undeletable",)


@dataclass
class SuiteReport:
    name: str
    rows: list = field(default_factory=list)

    def count(self, status) -> int:
        return sum(1 for _, r in self.rows if r.status == status)

    @property
    def passed(self) -> bool:
        return self.count(FAIL) == 0

    def text(self, include_instances=True) -> str:
        lines = [f"suite {self.name}"]
        for seed, r in self.rows:
            lines.append(f"  seed={seed} {r.line()}")
            if include_instances and r.status == FAIL and r.instance_text:
                lines += ["    | " + l for l in r.instance_text.rstrip("\n").splitlines()]
        lines.append(f"  passed={self.count(PASS)} failed={self.count(FAIL)} skipped={self.count(SKIP)}")
        return "\n".join(lines) + "\n"


def run_suite(name, seeds=50, start=0) -> SuiteReport:
    build, reduce = SUITES[name]
    report = SuiteReport(name)
    for seed in range(start, start + seeds):
        source = build(seed)
        try:
            artifact = reduce(source)
        except InfeasibleSource as exc:
            report.rows.append((seed, VerificationReport(SKIP, "-", 1, messages=(f"infeasible source: {exc}",))))
            continue
        report.rows.append((seed, verify_reduction(artifact)))
    return report
