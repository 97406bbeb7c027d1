"""
Four parity problems, one optimum
=================================

Nearest Codeword, Odd Set, and deletion CSPs over two small parity languages
are interreducible without changing the optimum. We push one random code
around the full cycle, watch the instance grow, and map an optimal answer
from the last station back to every earlier one.
"""

from mincsp.gf2 import rank
from mincsp.instances import random_nc, serialize
from mincsp.reductions import chain, optimum, parity_cycle, solution_cost
from mincsp.solvers import solve_nc_exact

nc = random_nc(6, 8, seed=8, density=0.15)
print(serialize(nc))
x, d = solve_nc_exact(nc, "both")
print("nearest codeword distance:", d, " x =", x)
print("A x + b =", (nc.A @ x) ^ nc.b)

steps = parity_cycle(nc)
stations = [nc] + [s.target for s in steps]
names = ["nearest codeword", "odd set", "parity dcsp (B2)", "parity dcsp (B3)", "nearest codeword"]


def size(obj):
    if hasattr(obj, "constraints"):
        return f"{len(obj.variables)} vars, {len(obj.constraints)} constraints"
    if hasattr(obj, "sets"):
        return f"{obj.n} elements, {len(obj.sets)} sets"
    return f"{obj.m} x {obj.n} matrix"


for name, obj in zip(names, stations):
    print(f"{name:18s} {size(obj):32s} OPT = {optimum(obj)[0]}")

for step in steps:
    print(step.kind, "-", step.note)

# One optimal vector at the end, pulled back through every suffix of the chain.
_, last = optimum(stations[-1])
for i in range(4):
    back = chain(*steps[i:]).pull_back(last)
    print(f"pulled back to {names[i]:18s} cost {solution_cost(stations[i], back)}")

# The round trip inflates the code considerably.
final = stations[-1]
print("columns:", nc.n, "->", final.n, " rows:", nc.m, "->", final.m)
print("GF(2) rank:", rank(nc.A), "->", rank(final.A))
