"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here calls into the package's solvers; relations are read through
their tuple lists and everything else is plain enumeration.
"""

import itertools


def tuple_set(relation):
    return set(relation.tuples())


def polymorphism(relation, op):
    """Direct check that ``op`` preserves the relation."""
    members = tuple_set(relation)
    ops = {
        "and2": (2, lambda a, b: a & b),
        "or2": (2, lambda a, b: a | b),
        "maj3": (3, lambda a, b, c: int(a + b + c >= 2)),
        "xor3": (3, lambda a, b, c: a ^ b ^ c),
        "not1": (1, lambda a: 1 - a),
    }
    k, f = ops[op]
    for rows in itertools.product(members, repeat=k):
        image = tuple(f(*col) for col in zip(*rows))
        if image not in members:
            return False
    return True


def dcsp_opt(instance):
    """(OPT, deleted, assignment) by enumerating assignments, or None when infeasible."""
    rels = {r.name: tuple_set(r) for r in instance.language}
    vs = instance.variables
    best = None
    for values in itertools.product((0, 1), repeat=len(vs)):
        phi = dict(zip(vs, values))
        bad = []
        broken = False
        for j, c in enumerate(instance.constraints):
            if tuple(phi[v] for v in c.scope) not in rels[c.relation]:
                if c.undeletable:
                    broken = True
                    break
                bad.append(j)
        if broken:
            continue
        if best is None or len(bad) < best[0]:
            best = (len(bad), frozenset(bad), phi)
    return best


def parity_ok(sets, parities, chosen):
    return all(len(set(s) & chosen) % 2 == p for s, p in zip(sets, parities))


def oddset_opt(instance):
    """Smallest element set meeting every parity target, or None."""
    for w in range(instance.n + 1):
        for T in itertools.combinations(range(instance.n), w):
            if parity_ok(instance.sets, instance.parities, set(T)):
                return w
    return None


def nc_opt(nc):
    A = [[int(v) for v in row] for row in nc.A.bits]
    b = [int(v) for v in nc.b]
    best = None
    for x in itertools.product((0, 1), repeat=nc.n):
        d = sum((sum(a * xi for a, xi in zip(row, x)) % 2) != bi for row, bi in zip(A, b))
        best = d if best is None else min(best, d)
    return best


def circuit_min_weight(circuit):
    inputs = circuit.inputs
    for w in range(len(inputs) + 1):
        for chosen in itertools.combinations(inputs, w):
            if circuit.evaluate(chosen):
                return w
    return None


def densest_multicolored(graph):
    edges = {frozenset(e) for e in graph.edges}
    best = 0
    for pick in itertools.product(*graph.classes):
        best = max(best, sum(1 for u, v in itertools.combinations(pick, 2) if frozenset((u, v)) in edges))
    return best


def cnf_satisfied(formula, assignment):
    return all(any(bool(assignment[abs(l)]) == (l > 0) for l in c) for c in formula.clauses)
