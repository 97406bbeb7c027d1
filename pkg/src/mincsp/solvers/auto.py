"""Pick a solver from the language's classification."""

from __future__ import annotations

from ..classifier import (APPROX_IHSB, FPT_BIJUNCTIVE, HARD, ODDSET_EQUIVALENT, POLY_VALID,
                          classify)
from ..errors import InfeasibleSource
from ..gf2 import MAX_FREE_VARIABLES
from ..instances.model import DcspInstance
from .bijunctive import solve_bijunctive
from .brute import brute_force_dcsp, solve_valid
from .ihsb import approx_ihsb
from .linear import is_single_equation, solve_linear_dcsp
from .outcome import OPTIMAL, SolveOutcome, infeasible, over_budget
from .parity import free_variables, solve_oddset_exact


def _via_oddset(instance: DcspInstance, k):
    """Affine instances of single equations: route through Nearest Codeword and Odd Set.

    Returns None when the Odd Set instance is too wide for the exact GF(2) engine.
    """
    from ..reductions.artifact import chain
    from ..reductions.core import eliminate_undeletable
    from ..reductions.parity import dcsp_to_nc, nc_to_oddset

    try:
        plain = eliminate_undeletable(instance)
    except InfeasibleSource as exc:
        return infeasible(str(exc))
    to_nc = dcsp_to_nc(plain.target)
    to_odd = nc_to_oddset(to_nc.target)
    if free_variables(to_odd.target) > MAX_FREE_VARIABLES:
        return None
    steps = chain(plain, to_nc, to_odd)
    out = solve_oddset_exact(to_odd.target, k, engine="gf2")
    if out.cost is None:
        return out
    sol = steps.pull_back(out.deleted)
    return SolveOutcome(OPTIMAL, sol.cost, sol.deleted, sol.assignment,
                        narrative=("solved as Odd Set through Nearest Codeword",
                                   f"odd set: {to_odd.target.n} elements, {to_odd.target.m} sets"))


def solve_auto(instance: DcspInstance, k=None) -> SolveOutcome:
    cls = classify(instance.language)
    head = f"class: {cls.label}"
    if cls.kind == POLY_VALID:
        out = solve_valid(instance, k)
    elif cls.kind == FPT_BIJUNCTIVE:
        out = solve_bijunctive(instance, k)
    elif cls.kind == APPROX_IHSB:
        out = approx_ihsb(instance, cls.width, cls.polarity, k)
    elif cls.kind == ODDSET_EQUIVALENT:
        out = None
        if all(is_single_equation(r) for r in instance.language):
            out = _via_oddset(instance, k)
        if out is None:
            out = solve_linear_dcsp(instance, k)
    else:
        assert cls.kind in HARD
        out = brute_force_dcsp(instance, k).with_notes(
            "warning: no parameterized approximation expected for this class; exhaustive search used")
    # the ratio solver may legitimately return up to ratio * k
    if k is not None and out.status == OPTIMAL and out.cost > k:
        out = over_budget(k, out.lower_bound)
    return SolveOutcome(out.status, out.cost, out.deleted, out.assignment, out.vector, out.ratio,
                        out.lower_bound, (head,) + out.narrative)
