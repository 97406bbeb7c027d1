"""Seeded random instance generators (pure functions of their arguments)."""

from __future__ import annotations

import itertools

import numpy as np

from ..gf2 import Gf2Matrix
from ..relations import Language
from .model import (AND, INPUT, OR, ColoredGraph, Cnf3, Constraint, DcspInstance,
                    EvenOddSetInstance, Gate, Graph, MonotoneCircuit, NcInstance)

MAX_GENERATED_SIZE = 10_000


def _check(*sizes):
    for s in sizes:
        if not 0 <= s <= MAX_GENERATED_SIZE:
            raise ValueError(f"size {s} outside 0..{MAX_GENERATED_SIZE}")


def random_dcsp(language: Language, n: int, m: int, seed: int,
                undeletable_fraction: float = 0.0, prefix: str = "v") -> DcspInstance:
    """``m`` constraints with uniformly drawn relations and scopes over ``n`` variables.

    Scopes use distinct variables when the arity allows it.
    """
    _check(n, m)
    if n < 1:
        raise ValueError("need at least one variable")
    rng = np.random.default_rng(seed)
    variables = tuple(f"{prefix}{i}" for i in range(n))
    rels = language.relations
    constraints = []
    for _ in range(m):
        rel = rels[int(rng.integers(len(rels)))]
        if rel.arity <= n:
            idx = rng.choice(n, size=rel.arity, replace=False)
        else:
            idx = rng.integers(n, size=rel.arity)
        hard = bool(rng.random() < undeletable_fraction)
        constraints.append(Constraint(rel.name, tuple(variables[int(i)] for i in idx), hard))
    return DcspInstance(language, variables, tuple(constraints))


def random_oddset(n: int, m: int, max_size: int, seed: int,
                  even_fraction: float = 0.0, min_size: int = 1) -> EvenOddSetInstance:
    """Random set system; sizes uniform in ``min_size..max_size``."""
    _check(n, m)
    rng = np.random.default_rng(seed)
    sets, parities = [], []
    hi = min(max_size, n)
    for _ in range(m):
        size = int(rng.integers(min(min_size, hi), hi + 1)) if n else 0
        sets.append(tuple(sorted(int(e) for e in rng.choice(n, size=size, replace=False))) if n else ())
        parities.append(0 if rng.random() < even_fraction else 1)
    return EvenOddSetInstance(n, tuple(sets), tuple(parities))


def random_nc(m: int, n: int, seed: int, density: float = 0.5) -> NcInstance:
    _check(m, n)
    rng = np.random.default_rng(seed)
    A = (rng.random((m, n)) < density).astype(np.uint8)
    b = rng.integers(0, 2, size=m).astype(np.uint8)
    return NcInstance(Gf2Matrix(A, cols=n), b)


def random_circuit(gates: int, seed: int, n_inputs: int = None) -> MonotoneCircuit:
    """``n_inputs`` inputs followed by ``gates`` random AND/OR gates; the last is the output."""
    _check(gates)
    rng = np.random.default_rng(seed)
    if n_inputs is None:
        n_inputs = max(2, gates // 2 + 1)
    out = [Gate(f"i{j}", INPUT) for j in range(n_inputs)]
    for j in range(gates):
        a, b = rng.choice(len(out), size=2, replace=len(out) < 2)
        kind = AND if rng.random() < 0.5 else OR
        out.append(Gate(f"g{j}", kind, (out[int(a)].id, out[int(b)].id)))
    return MonotoneCircuit(tuple(out), out[-1].id)


def random_graph(n: int, p: float, seed: int) -> Graph:
    _check(n)
    rng = np.random.default_rng(seed)
    vertices = tuple(f"v{i}" for i in range(n))
    edges = tuple((vertices[i], vertices[j]) for i, j in itertools.combinations(range(n), 2)
                  if rng.random() < p)
    return Graph(vertices, edges)


def random_colored_graph(k: int, per_class: int, p: float, seed: int) -> ColoredGraph:
    """``k`` classes of ``per_class`` vertices; cross-class edges with probability ``p``."""
    _check(k * per_class)
    rng = np.random.default_rng(seed)
    classes = tuple(tuple(f"c{i}v{j}" for j in range(per_class)) for i in range(k))
    edges = []
    for i, j in itertools.combinations(range(k), 2):
        for u in classes[i]:
            for v in classes[j]:
                if rng.random() < p:
                    edges.append((u, v))
    return ColoredGraph(classes, tuple(edges))


def random_cnf3(n_vars: int, m: int, seed: int) -> Cnf3:
    """Clauses of three distinct variables (fewer if ``n_vars`` < 3) with random signs."""
    _check(n_vars, m)
    rng = np.random.default_rng(seed)
    width = min(3, n_vars)
    clauses = []
    for _ in range(m):
        vs = rng.choice(n_vars, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width) * 2 - 1
        clauses.append(tuple(int(v * s) for v, s in zip(vs, signs)))
    return Cnf3(n_vars, tuple(clauses))


def planted_satisfiable_cnf3(n_vars: int, m: int, seed: int) -> Cnf3:
    """Random 3-CNF where every clause agrees with a hidden assignment."""
    rng = np.random.default_rng(seed)
    hidden = rng.integers(0, 2, size=n_vars + 1)
    width = min(3, n_vars)
    clauses = []
    while len(clauses) < m:
        vs = rng.choice(n_vars, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width) * 2 - 1
        clause = tuple(int(v * s) for v, s in zip(vs, signs))
        if any((hidden[abs(l)] == 1) == (l > 0) for l in clause):
            clauses.append(clause)
    return Cnf3(n_vars, tuple(clauses))
