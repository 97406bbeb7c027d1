"""Reduction results: a target instance plus the way back."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

COST_PRESERVING = "cost_preserving"
A_REDUCTION = "a_reduction"
SELF_IMPROVEMENT = "self_improvement"


@dataclass(frozen=True)
class ReductionArtifact:
    """``target`` plus ``pull_back`` mapping target solutions to source solutions.

    ``alpha`` is 1 for cost-preserving reductions.  Self-improvement
    artifacts obey OPT' = 1 + OPT + OPT^2 instead of a ratio bound.
    """

    source: Any
    target: Any
    kind: str
    pull_back: Callable
    alpha: int = 1
    note: str = ""

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")


def compose(first: ReductionArtifact, second: ReductionArtifact, note=None) -> ReductionArtifact:
    """``second`` applied to ``first.target``; solutions flow back through both."""
    if second.source is not first.target and second.source != first.target:
        raise ValueError("second reduction does not start where the first ends")
    if first.kind == second.kind == COST_PRESERVING:
        kind = COST_PRESERVING
    else:
        kind = A_REDUCTION
    return ReductionArtifact(
        first.source, second.target, kind,
        lambda sol: first.pull_back(second.pull_back(sol)),
        first.alpha * second.alpha,
        note or f"{first.note} ; {second.note}")


def chain(*artifacts: ReductionArtifact, note=None) -> ReductionArtifact:
    out = artifacts[0]
    for a in artifacts[1:]:
        out = compose(out, a)
    if note:
        out = ReductionArtifact(out.source, out.target, out.kind, out.pull_back, out.alpha, note)
    return out
