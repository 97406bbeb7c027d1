"""Odd Set gadgets: instance squaring, densest multicolored subgraph, and 3-SAT."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError
from ..instances.model import ColoredGraph, Cnf3, EvenOddSetInstance, Graph, OddSetInstance
from .artifact import SELF_IMPROVEMENT, ReductionArtifact

MAX_GROUP_VARIABLES = 20
MAX_EXPERIMENT_CLASSES = 4


# -- squaring -----------------------------------------------------------------

def oddset_self_improve(instance: EvenOddSetInstance) -> ReductionArtifact:
    """Universe U + {x_h^i} + {e}; sets S + {S_j^i} + {{e}}.

    With n = |U|, copy element x_h^i is ``n + i*n + h`` and e is ``n + n*n``.
    S_j^i = {e, x_i} + {x_h^i : x_h in S_j}.  OPT' = 1 + OPT + OPT^2.
    """
    if not instance.is_odd_set:
        raise PreconditionError("expected an all-odd instance")
    n = instance.n
    e = n + n * n
    sets = list(instance.sets)
    for i in range(n):
        for s in instance.sets:
            sets.append((e, i) + tuple(n + i * n + h for h in s))
    sets.append((e,))
    target = OddSetInstance(n + n * n + 1, sets)

    def pull_back(T):
        return frozenset(t for t in T if t < n)

    return ReductionArtifact(instance, target, SELF_IMPROVEMENT, pull_back,
                             note="instance squaring; solutions restrict to the original universe")


def lift_solution(instance: EvenOddSetInstance, T) -> frozenset:
    """The size 1 + |T| + |T|^2 solution of the squared instance built from T."""
    n = instance.n
    T = sorted(T)
    return frozenset([n + n * n] + T + [n + i * n + h for i in T for h in T])


# -- densest multicolored subgraph --------------------------------------------

@dataclass(frozen=True)
class MkdsGadget:
    """Odd Set instance for one guess of which class pairs carry edges."""

    graph: ColoredGraph
    pairs: tuple
    classes: tuple
    labels: tuple
    instance: EvenOddSetInstance

    @property
    def k_prime(self) -> int:
        return len(self.classes)

    def decode(self, T) -> tuple:
        """One vertex per class: the lowest chosen vertex element in that class, else the first vertex."""
        chosen = {}
        for t in sorted(T):
            kind, what = self.labels[t]
            if kind == "v":
                c = self.graph.color_of(what)
                chosen.setdefault(c, what)
        return tuple(chosen.get(c, cls[0] if cls else None) for c, cls in enumerate(self.graph.classes))


def _check_pairs(graph: ColoredGraph, pairs):
    out = set()
    for p in pairs:
        i, j = sorted(p)
        if i == j or not (0 <= i < graph.k and 0 <= j < graph.k):
            raise PreconditionError(f"bad class pair {p!r}")
        out.add((i, j))
    return tuple(sorted(out))


def mkds_guess_to_oddset(graph: ColoredGraph, pairs) -> MkdsGadget:
    pairs = _check_pairs(graph, pairs)
    classes = tuple(sorted({c for p in pairs for c in p}))
    labels = []
    index = {}
    for c in classes:
        for v in graph.classes[c]:
            index[("v", v)] = len(labels)
            labels.append(("v", v))
    for i, j in pairs:
        for e in graph.edges_between(i, j):
            index[("e", e)] = len(labels)
            labels.append(("e", e))
    sets = []
    for i, j in pairs:
        for a, b in ((i, j), (j, i)):
            between = graph.edges_between(a, b)
            for u in graph.classes[a]:
                s = [index[("v", v)] for v in graph.classes[a] if v != u]
                s += [index[("e", e)] for e in between if u in e]
                sets.append(tuple(s))
    for c in classes:
        sets.append(tuple(index[("v", v)] for v in graph.classes[c]))
    instance = OddSetInstance(len(labels), sets)
    return MkdsGadget(graph, pairs, classes, tuple(labels), instance)


def best_multicolored(graph: ColoredGraph):
    """Exhaustive optimum: (edge count, one vertex per class)."""
    best = None
    g = graph.graph
    for pick in itertools.product(*graph.classes):
        val = g.induced_edges(pick)
        if best is None or val > best[0]:
            best = (val, pick)
    return best


def kds_color_coding(graph: Graph, k: int, seed: int, repetitions: int):
    """``repetitions`` uniformly random k-colorings of ``graph``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(repetitions):
        colors = rng.integers(k, size=len(graph.vertices))
        classes = tuple(tuple(v for v, c in zip(graph.vertices, colors) if c == i) for i in range(k))
        out.append(ColoredGraph(classes, graph.edges))
    return out


def experiment_mkds(graph: ColoredGraph, solver=None):
    """Try every guess of class pairs, solve each gadget exactly, keep the best decoding.

    Returns a dict with the best vertex choice, its induced edge count, and
    per-guess (pairs, OPT, decoded edges) rows.
    """
    if graph.k > MAX_EXPERIMENT_CLASSES:
        raise PreconditionError(f"at most {MAX_EXPERIMENT_CLASSES} classes (2^(k choose 2) guesses)")
    if any(not c for c in graph.classes):
        raise PreconditionError("every class needs at least one vertex")
    if solver is None:
        from ..solvers.parity import solve_oddset_exact as solver
    all_pairs = list(itertools.combinations(range(graph.k), 2))
    g = graph.graph
    rows = []
    best = None
    for r in range(len(all_pairs) + 1):
        for guess in itertools.combinations(all_pairs, r):
            gadget = mkds_guess_to_oddset(graph, guess)
            out = solver(gadget.instance)
            if out.cost is None:
                rows.append((guess, None, None))
                continue
            pick = gadget.decode(out.deleted)
            val = g.induced_edges(pick)
            rows.append((guess, out.cost, val))
            if best is None or val > best[0]:
                best = (val, pick)
    return {"edges": best[0], "vertices": best[1], "guesses": rows}


# -- Max 3-SAT -----------------------------------------------------------------

@dataclass(frozen=True)
class SatGadget:
    formula: Cnf3
    groups: tuple
    group_vars: tuple
    labels: tuple
    instance: EvenOddSetInstance

    @property
    def k(self) -> int:
        return len(self.groups)

    def extract(self, T):
        """Global assignment from groups hit exactly once, plus the certified group indices.

        Unassigned variables default to False.  Raises if two certified
        groups disagree on a shared variable.
        """
        hits = {}
        for t in sorted(T):
            i, _ = self.labels[t]
            hits.setdefault(i, []).append(t)
        certified = sorted(i for i, ts in hits.items() if len(ts) == 1)
        assignment = {v: 0 for v in range(1, self.formula.n_vars + 1)}
        fixed = {}
        for i in certified:
            _, partial = self.labels[hits[i][0]]
            for v, val in zip(self.group_vars[i], partial):
                if fixed.get(v, val) != val:
                    raise ValueError(f"certified groups disagree on variable {v}")
                fixed[v] = val
        assignment.update(fixed)
        return assignment, tuple(certified)


def max3sat_to_oddset(formula: Cnf3, k: int) -> SatGadget:
    """Round-robin clause groups; one element per satisfying partial assignment."""
    if k < 1:
        raise PreconditionError("need at least one group")
    groups = tuple(tuple(c for c in range(len(formula.clauses)) if c % k == i) for i in range(k))
    group_vars = []
    for g in groups:
        vs = sorted({abs(l) for c in g for l in formula.clauses[c]})
        if len(vs) > MAX_GROUP_VARIABLES:
            raise PreconditionError(f"group has {len(vs)} variables, cap is {MAX_GROUP_VARIABLES}")
        group_vars.append(tuple(vs))
    labels = []
    members = []
    for i, g in enumerate(groups):
        vs = group_vars[i]
        mine = []
        for values in itertools.product((0, 1), repeat=len(vs)):
            phi = dict(zip(vs, values))
            if all(any(bool(phi[abs(l)]) == (l > 0) for l in formula.clauses[c]) for c in g):
                mine.append(len(labels))
                labels.append((i, values))
        members.append(mine)
    sets = [tuple(m) for m in members]
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            shared = sorted(set(group_vars[i]) & set(group_vars[j]))
            for y in shared:
                pi, pj = group_vars[i].index(y), group_vars[j].index(y)
                s = [t for t in members[i] if labels[t][1][pi] == 1]
                s += [t for t in members[j] if labels[t][1][pj] == 0]
                sets.append(tuple(s))
    instance = OddSetInstance(len(labels), sets)
    return SatGadget(formula, groups, tuple(group_vars), tuple(labels), instance)
