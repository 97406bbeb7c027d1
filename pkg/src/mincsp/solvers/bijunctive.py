"""Exact deletion for bijunctive languages.

Each constraint becomes the group of binary clauses implied by its relation;
deleting the constraint removes the whole group.  Branch-and-bound works on
unsatisfiability certificates of the implication graph: a closed walk
x ~> not x ~> x.  Any repair must delete a group that contributes an edge of
the walk, so we branch over those groups, forbidding earlier candidates in
later branches.  Disjoint certificates give the lower bound.
"""

from __future__ import annotations

from collections import deque

from ..errors import PreconditionError
from ..instances.model import DcspInstance, evaluate
from ..relations import binary_decomposition
from .outcome import OPTIMAL, SolveOutcome, infeasible, over_budget


def _lit(var: int, positive: bool) -> int:
    return 2 * var + (0 if positive else 1)


def clause_groups(instance: DcspInstance):
    """Merge identical constraints; each group is (clauses, weight, hard, members)."""
    pos = {v: i for i, v in enumerate(instance.variables)}
    decomp = {}
    index = {}
    groups = []
    for j, c in enumerate(instance.constraints):
        key = (c.relation, c.scope)
        if key not in index:
            rel = instance.language[c.relation]
            if c.relation not in decomp:
                d = binary_decomposition(rel)
                if d is None:
                    raise PreconditionError(f"relation {c.relation!r} is not bijunctive")
                decomp[c.relation] = d
            clauses = set()
            for cl in decomp[c.relation]:
                lits = [_lit(pos[c.scope[t]], p) for t, p in zip(cl.coordinates, cl.polarities)]
                a, b = lits[0], lits[-1]
                if a == b ^ 1:
                    continue
                clauses.add((min(a, b), max(a, b)))
            index[key] = len(groups)
            groups.append([tuple(sorted(clauses)), 0, False, []])
        g = groups[index[key]]
        g[1] += 1
        g[2] = g[2] or c.undeletable
        g[3].append(j)
    return [tuple(g) for g in groups]


class _Graph:
    def __init__(self, n_vars, groups, active):
        self.size = 2 * n_vars
        self.adj = [[] for _ in range(self.size)]
        for g in active:
            for a, b in groups[g][0]:
                self.adj[a ^ 1].append((b, g))
                if a != b:
                    self.adj[b ^ 1].append((a, g))

    def components(self):
        """Tarjan; component ids come out in reverse topological order."""
        index = [-1] * self.size
        low = [0] * self.size
        comp = [-1] * self.size
        on_stack = [False] * self.size
        stack = []
        counter = 0
        n_comp = 0
        for root in range(self.size):
            if index[root] != -1:
                continue
            work = [(root, 0)]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack[root] = True
            while work:
                v, i = work[-1]
                if i < len(self.adj[v]):
                    work[-1] = (v, i + 1)
                    w = self.adj[v][i][0]
                    if index[w] == -1:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack[w] = True
                        work.append((w, 0))
                    elif on_stack[w]:
                        low[v] = min(low[v], index[w])
                else:
                    work.pop()
                    if work:
                        u = work[-1][0]
                        low[u] = min(low[u], low[v])
                    if low[v] == index[v]:
                        while True:
                            w = stack.pop()
                            on_stack[w] = False
                            comp[w] = n_comp
                            if w == v:
                                break
                        n_comp += 1
        return comp

    def path_groups(self, src, dst):
        prev = {src: None}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            if v == dst:
                break
            for w, g in self.adj[v]:
                if w not in prev:
                    prev[w] = (v, g)
                    queue.append(w)
        if dst not in prev:
            return None
        out = set()
        v = dst
        while prev[v] is not None:
            v, g = prev[v]
            out.add(g)
        return out


def _certificate(n_vars, groups, active, movable):
    """None if satisfiable, else (groups on one contradiction walk, assignment-free)."""
    graph = _Graph(n_vars, groups, active)
    comp = graph.components()
    bad = [v for v in range(n_vars) if comp[2 * v] == comp[2 * v + 1]]
    if not bad:
        return None, comp
    best = None
    for v in bad:
        there = graph.path_groups(2 * v, 2 * v + 1)
        back = graph.path_groups(2 * v + 1, 2 * v)
        cert = there | back
        key = (len(cert & movable), len(cert), v)
        if best is None or key < best[0]:
            best = (key, cert)
    return best[1], comp


def _lower_bound(n_vars, groups, active, movable):
    active = set(active)
    lb = 0
    while True:
        cert, _ = _certificate(n_vars, groups, active, movable)
        if cert is None:
            return lb
        cands = cert & movable & active
        if not cands:
            return None
        lb += min(groups[g][1] for g in cands)
        active -= cands


def _search(n_vars, groups, active, movable, left):
    lb = _lower_bound(n_vars, groups, active, movable)
    if lb is None or lb > left:
        return None
    cert, comp = _certificate(n_vars, groups, active, movable)
    if cert is None:
        return active, comp
    cands = sorted(g for g in cert & movable if groups[g][1] <= left)
    for i, g in enumerate(cands):
        found = _search(n_vars, groups, active - {g}, movable - set(cands[:i + 1]),
                        left - groups[g][1])
        if found is not None:
            return found
    return None


def solve_bijunctive(instance: DcspInstance, k=None) -> SolveOutcome:
    n = len(instance.variables)
    groups = clause_groups(instance)
    every = frozenset(range(len(groups)))
    hard = frozenset(g for g in every if groups[g][2])
    cert, _ = _certificate(n, groups, hard, frozenset())
    if cert is not None:
        return infeasible("undeletable clause groups are unsatisfiable")
    movable = every - hard
    total = sum(groups[g][1] for g in movable)
    limit = total if k is None else min(k, total)
    start = _lower_bound(n, groups, every, movable)
    found = None
    for budget in range(start, limit + 1):
        found = _search(n, groups, every, movable, budget)
        if found is not None:
            break
    if found is None:
        return over_budget(k, start)
    _, comp = found
    # Tarjan numbers sink components first, so x is true when its positive
    # literal's component comes earlier
    witness = {v: int(comp[2 * i] < comp[2 * i + 1]) for i, v in enumerate(instance.variables)}
    deleted = evaluate(instance, witness)
    assert not deleted & instance.undeletable
    return SolveOutcome(OPTIMAL, len(deleted), deleted, witness,
                        lower_bound=start,
                        narrative=("implication-graph certificate branch-and-bound",))
