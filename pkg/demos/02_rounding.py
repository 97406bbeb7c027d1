"""
LP rounding for implications plus wide positive clauses
=======================================================

Languages built from units, implications and positive clauses of width at
most B admit a simple approximation: solve the covering LP exactly, then
round at a threshold. Here we compare the rounded cost, the LP value and the
exact optimum on a batch of random instances.
"""

import numpy as np

from mincsp.instances import random_dcsp
from mincsp.relations import Language, implication, or_, unit
from mincsp.solvers import approx_ihsb, brute_force_dcsp, lp_relaxation

lang = Language((or_(3), implication(), unit(1), unit(0)))
I = random_dcsp(lang, 7, 24, seed=3)
print(len(I.variables), "variables,", len(I.constraints), "constraints")

# The LP value is an exact fraction, so there is no tolerance to pick.
value, x, z, c = lp_relaxation(I, 3)
print("LP optimum:", value, " c =", c)
print("fractional deletions:", {j: str(v) for j, v in z.items() if v})
print("variable values:", [str(v) for v in x])

out = approx_ihsb(I, 3, "plus")
print("\n".join(out.narrative))
print("rounded cost", out.cost, "exact", brute_force_dcsp(I).cost)

# A batch: collect (LP, OPT, rounded) per seed.
rows = []
for seed in range(60):
    J = random_dcsp(lang, 7, 30, seed)
    opt = brute_force_dcsp(J).cost
    got = approx_ihsb(J, 3, "plus")
    rows.append((float(got.lower_bound), opt, got.cost))
table = np.array(rows)
lp, opt, rounded = table.T

print("instances:", len(table))
print("LP never above OPT:", bool(np.all(lp <= opt)))
print("worst ratio rounded/OPT:", np.max(rounded[opt > 0] / opt[opt > 0]))
print("mean ratio:", np.round(np.mean(rounded[opt > 0] / opt[opt > 0]), 3))
print("rounding was exact on", int(np.sum(rounded == opt)), "instances")

# The guarantee for this language is 4, far from what random instances need.
hist = np.bincount((rounded - opt).astype(int))
for extra, count in enumerate(hist):
    print(f"  +{extra}: {count}")
