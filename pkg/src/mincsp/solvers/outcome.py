"""Result type shared by every solver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

OPTIMAL = "optimal"
WITHIN_RATIO = "within_ratio"
BUDGET_EXCEEDED = "budget_exceeded"
INFEASIBLE = "infeasible"

SUCCESS = (OPTIMAL, WITHIN_RATIO)


@dataclass(frozen=True)
class SolveOutcome:
    """What a solver found.

    ``deleted`` holds constraint indices for DCSP instances and chosen
    elements for parity set systems; ``vector`` is the Nearest Codeword
    answer.  ``cost`` is None unless a solution was produced.
    """

    status: str
    cost: Optional[int] = None
    deleted: frozenset = frozenset()
    assignment: Optional[dict] = None
    vector: Optional[tuple] = None
    ratio: Optional[Fraction] = None
    lower_bound: Optional[Fraction] = None
    narrative: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status in SUCCESS

    @property
    def status_label(self) -> str:
        if self.status == WITHIN_RATIO:
            return f"{WITHIN_RATIO}({self.ratio})"
        return self.status

    def with_notes(self, *notes) -> "SolveOutcome":
        return SolveOutcome(self.status, self.cost, self.deleted, self.assignment, self.vector,
                            self.ratio, self.lower_bound, self.narrative + tuple(notes))


def infeasible(*notes) -> SolveOutcome:
    return SolveOutcome(INFEASIBLE, narrative=tuple(notes))


def over_budget(k, lower_bound=None, *notes) -> SolveOutcome:
    return SolveOutcome(BUDGET_EXCEEDED, lower_bound=lower_bound,
                        narrative=(f"optimum exceeds budget k={k}",) + tuple(notes))


def _fmt(value):
    if value is None:
        return ""
    return str(value)


def flat_outcome(outcome: SolveOutcome, variables=None) -> str:
    """``key=value`` lines in a fixed order."""
    lines = [f"status={outcome.status}", f"cost={_fmt(outcome.cost)}",
             f"ratio={_fmt(outcome.ratio)}", f"lower_bound={_fmt(outcome.lower_bound)}",
             "deleted=" + " ".join(str(i) for i in sorted(outcome.deleted))]
    if outcome.assignment is not None:
        names = variables if variables is not None else sorted(outcome.assignment)
        lines.append("assignment=" + " ".join(f"{v}:{outcome.assignment[v]}" for v in names))
    if outcome.vector is not None:
        lines.append("vector=" + "".join(str(int(b)) for b in outcome.vector))
    lines += [f"note={n}" for n in outcome.narrative]
    return "\n".join(lines) + "\n"


def human_outcome(outcome: SolveOutcome, variables=None, what="deleted constraints") -> str:
    lines = [f"status: {outcome.status_label}"]
    if outcome.cost is not None:
        lines.append(f"cost: {outcome.cost}")
        lines.append(f"{what}: " + (", ".join(str(i) for i in sorted(outcome.deleted)) or "none"))
    if outcome.lower_bound is not None:
        lines.append(f"lower bound: {outcome.lower_bound}")
    if outcome.assignment is not None:
        names = variables if variables is not None else sorted(outcome.assignment)
        lines.append("assignment: " + " ".join(f"{v}={outcome.assignment[v]}" for v in names))
    if outcome.vector is not None:
        lines.append("x: " + "".join(str(int(b)) for b in outcome.vector))
    lines += [f"note: {n}" for n in outcome.narrative]
    return "\n".join(lines) + "\n"
