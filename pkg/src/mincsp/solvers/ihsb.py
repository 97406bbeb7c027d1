"""LP rounding for IHS-B languages.

Plus polarity: every relation is a conjunction of clauses  x,  not x,
not x or y,  and  x1 or ... or xb  with b <= B.  The relaxation has a
variable x_v per variable and z_j per deletable constraint:

    positive or       sum x_i + z_j >= 1
    implication       x_y - x_x + z_j >= 0
    negative unit     z_j - x_v >= 0
    positive unit     x_v + z_j >= 1

Setting v true iff x_v >= t for any t in (0, 1/(B+1)] violates a clause
of constraint j only if z_j was paying for at least 1/(B+1) of it in
expectation, so the cheapest threshold costs at most c(B+1) LP units, where
c bounds the clauses per constraint.  Only thresholds equal to some x_v, or
the interval end, give distinct roundings.  Minus polarity is handled by
complementing everything.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PreconditionError
from ..instances.model import DcspInstance, complement_assignment, dual_instance, evaluate
from ..relations import ihs_decomposition
from .lp import solve_covering_lp
from .outcome import WITHIN_RATIO, SolveOutcome, infeasible, over_budget


def _clause_rows(instance: DcspInstance, width: int):
    """Per constraint: list of (positive vars, negative vars) after substitution."""
    decomp = {}
    for rel in instance.language:
        d = ihs_decomposition(rel, width, "plus")
        if d is None:
            raise PreconditionError(f"relation {rel.name!r} is not IHS-B+ with B={width}")
        decomp[rel.name] = d
    pos = {v: i for i, v in enumerate(instance.variables)}
    out = []
    for c in instance.constraints:
        clauses = set()
        for cl in decomp[c.relation]:
            plus = frozenset(pos[c.scope[t]] for t, p in zip(cl.coordinates, cl.polarities) if p)
            minus = frozenset(pos[c.scope[t]] for t, p in zip(cl.coordinates, cl.polarities) if not p)
            if plus & minus:
                continue
            clauses.add((tuple(sorted(plus)), tuple(sorted(minus))))
        out.append(sorted(clauses))
    group_size = max((len(d) for d in decomp.values()), default=1)
    return out, max(group_size, 1)


def lp_relaxation(instance: DcspInstance, width: int):
    """Exact LP optimum; returns (value, x values per variable, z per constraint, c) or None."""
    groups, group_size = _clause_rows(instance, width)
    n = len(instance.variables)
    zvar = {}
    for j, c in enumerate(instance.constraints):
        if not c.undeletable:
            zvar[j] = n + len(zvar)
    rows, h = [], []
    for j, clauses in enumerate(groups):
        for plus, minus in clauses:
            row = {}
            for v in plus:
                row[v] = row.get(v, 0) + 1
            for v in minus:
                row[v] = row.get(v, 0) - 1
            if j in zvar:
                row[zvar[j]] = 1
            rows.append(row)
            h.append(1 if not minus else 0)
    cost = [0] * n + [1] * len(zvar)
    solved = solve_covering_lp(cost, rows, h)
    if solved is None:
        return None
    value, x = solved
    z = {j: x[i] for j, i in zvar.items()}
    return value, x[:n], z, group_size


def approx_ihsb(instance: DcspInstance, width: int, polarity: str = "plus", k=None) -> SolveOutcome:
    if polarity == "minus":
        out = approx_ihsb(dual_instance(instance), width, "plus", k)
        if out.assignment is None:
            return out
        return SolveOutcome(out.status, out.cost, out.deleted, complement_assignment(out.assignment),
                            ratio=out.ratio, lower_bound=out.lower_bound,
                            narrative=out.narrative + ("solved on the complemented instance",))
    if polarity != "plus":
        raise ValueError(f"polarity must be 'plus' or 'minus', not {polarity!r}")
    width = max(int(width), 1)
    relaxed = lp_relaxation(instance, width)
    if relaxed is None:
        return infeasible("LP relaxation of the undeletable part is infeasible")
    value, x, _, group_size = relaxed
    if k is not None and value > k:
        return over_budget(k, value, f"LP lower bound {value} already exceeds k")
    top = Fraction(1, width + 1)
    thresholds = sorted({v for v in x if 0 < v <= top} | {top})
    best = None
    for t in thresholds:
        witness = {v: int(x[i] >= t) for i, v in enumerate(instance.variables)}
        violated = evaluate(instance, witness)
        if violated & instance.undeletable:
            continue
        key = (len(violated), tuple(sorted(violated)))
        if best is None or key < best[0]:
            best = (key, witness, t)
    if best is None:
        return infeasible("every threshold violates an undeletable constraint")
    (cost, deleted), witness, t = best
    ratio = group_size * (width + 1)
    return SolveOutcome(WITHIN_RATIO, cost, frozenset(deleted), witness,
                        ratio=Fraction(ratio), lower_bound=value,
                        narrative=(f"LP optimum {value}", f"threshold {t} of {len(thresholds)} candidates",
                                   f"guarantee {group_size}*(B+1) = {ratio}"))
