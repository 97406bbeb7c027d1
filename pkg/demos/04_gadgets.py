"""
Odd Set gadgets
===============

Three constructions that turn other problems into Odd Set instances:
squaring an instance (which squares the optimum, roughly), guessing the
edge pattern of a dense multicolored subgraph, and encoding a 3-CNF so that
an optimum of exactly k certifies a satisfying assignment.
"""

import itertools

import numpy as np

from mincsp.instances import ColoredGraph, OddSetInstance, planted_satisfiable_cnf3, random_colored_graph
from mincsp.reductions import experiment_mkds, lift_solution, max3sat_to_oddset, oddset_self_improve
from mincsp.solvers import solve_oddset_exact

# -- squaring ---------------------------------------------------------------------

E = OddSetInstance(3, [(0, 1), (1, 2), (0,), (2,)])
opt = solve_oddset_exact(E).cost
sq = oddset_self_improve(E)
print("original:", E.n, "elements, OPT", opt)
print("squared: ", sq.target.n, "elements,", len(sq.target.sets), "sets, OPT", solve_oddset_exact(sq.target).cost)
print("1 + OPT + OPT^2 =", 1 + opt + opt * opt)

# An optimal solution lifts to the squared instance, and any solution there projects back.
T = solve_oddset_exact(E).deleted
lifted = lift_solution(E, T)
print("lifted size:", len(lifted), " projected back:", sorted(sq.pull_back(lifted)))

# The law over a small sweep.
for n, sets in [(1, [(0,)]), (2, [(0,), (1,)]), (4, [(0,), (1,), (2,), (3,)])]:
    F = OddSetInstance(n, sets)
    a = solve_oddset_exact(F).cost
    b = solve_oddset_exact(oddset_self_improve(F).target).cost
    print(f"  OPT {a} -> {b}")

# -- densest multicolored subgraph ---------------------------------------------------

# For every guess of which color pairs carry an edge, build a gadget and solve it.
triangle = ColoredGraph((("a",), ("b",), ("c",)), (("a", "b"), ("b", "c"), ("a", "c")))
result = experiment_mkds(triangle)
print("triangle:", result["edges"], "edges on", result["vertices"])

graph = random_colored_graph(3, 3, 0.4, seed=11)
result = experiment_mkds(graph)
print("random graph:", len(graph.edges), "edges; best multicolored triple has", result["edges"])
for pairs, opt, got in result["guesses"]:
    print(f"  guess {pairs!s:26s} OPT {opt!s:5s} decoded edges {got}")

# Check against brute force over all 27 triples.
counts = [graph.graph.induced_edges(pick) for pick in itertools.product(*graph.classes)]
print("exhaustive:", max(counts), " histogram:", np.bincount(counts))

# -- 3-SAT -----------------------------------------------------------------------------

f = planted_satisfiable_cnf3(5, 6, seed=4)
gadget = max3sat_to_oddset(f, 2)
print("formula:", f.clauses)
print("groups:", gadget.groups, " variables per group:", gadget.group_vars)
out = solve_oddset_exact(gadget.instance)
assignment, certified = gadget.extract(out.deleted)
print("OPT", out.cost, "certified groups", certified)
print("assignment", assignment)
ok = all(any(bool(assignment[abs(l)]) == (l > 0) for l in c) for c in f.clauses)
print("satisfies every clause:", ok)
