"""Exhaustive oracle over all 2^n assignments.

Variable ``i`` is bit ``n-1-i`` of the assignment code, so codes run through
assignments in lexicographic order of the variable list.
"""

from __future__ import annotations

import numpy as np

from ..errors import InstanceTooLarge, PreconditionError
from ..instances.model import DcspInstance, evaluate
from ..relations import property_vector
from .outcome import OPTIMAL, SolveOutcome, infeasible, over_budget

MAX_BRUTE_VARIABLES = 24
_CHUNK = 1 << 16


def _scope_index(instance: DcspInstance):
    pos = {v: i for i, v in enumerate(instance.variables)}
    return [np.array([pos[v] for v in c.scope], dtype=np.int64) for c in instance.constraints]


def violation_matrix(instance: DcspInstance, codes: np.ndarray, scopes=None) -> np.ndarray:
    """Boolean matrix: row per assignment code, column per violated constraint."""
    n = len(instance.variables)
    scopes = scopes if scopes is not None else _scope_index(instance)
    shifts = (n - 1 - np.arange(n, dtype=np.int64))
    bits = (codes[:, None] >> shifts) & 1
    out = np.zeros((codes.size, len(instance.constraints)), dtype=bool)
    for j, c in enumerate(instance.constraints):
        rel = instance.language[c.relation]
        idx = scopes[j]
        local = np.zeros(codes.size, dtype=np.int64)
        for t in range(rel.arity):
            local = (local << 1) | bits[:, idx[t]]
        out[:, j] = ~rel.mask[local]
    return out


def decode_assignment(instance: DcspInstance, code: int) -> dict:
    n = len(instance.variables)
    return {v: (code >> (n - 1 - i)) & 1 for i, v in enumerate(instance.variables)}


def brute_force_dcsp(instance: DcspInstance, k=None) -> SolveOutcome:
    """Minimum deletion set by full enumeration.

    Ties go to the lexicographically least sorted index list; the witness is
    the first assignment (in code order) realising that set.
    """
    n = len(instance.variables)
    if n > MAX_BRUTE_VARIABLES:
        raise InstanceTooLarge(f"{n} variables exceeds the brute-force cap of {MAX_BRUTE_VARIABLES}")
    m = len(instance.constraints)
    hard = np.array([c.undeletable for c in instance.constraints], dtype=bool)
    scopes = _scope_index(instance)
    best_key = None
    best_code = None
    for start in range(0, 1 << n, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        viol = violation_matrix(instance, codes, scopes)
        ok = ~viol[:, hard].any(axis=1) if hard.any() else np.ones(codes.size, dtype=bool)
        if not ok.any():
            continue
        cost = viol.sum(axis=1)
        cost = np.where(ok, cost, m + 1)
        c = int(cost.min())
        rows = np.flatnonzero(cost == c)
        if m:
            # sorted index lists compare like indicator vectors in reverse,
            # so take the largest packed indicator, earliest code on ties
            packed = np.packbits(viol[rows], axis=1)
            order = np.lexsort((255 - packed).T[::-1])
            r = rows[order[0]]
            key = (c, tuple(np.flatnonzero(viol[r])))
        else:
            r = rows[0]
            key = (0, ())
        if best_key is None or key < best_key:
            best_key, best_code = key, int(codes[r])
    if best_key is None:
        return infeasible("undeletable constraints cannot be satisfied together")
    cost, deleted = best_key
    if k is not None and cost > k:
        return over_budget(k)
    return SolveOutcome(OPTIMAL, cost, frozenset(int(i) for i in deleted),
                        decode_assignment(instance, best_code),
                        narrative=(f"exhaustive search over 2^{n} assignments",))


def solve_valid(instance: DcspInstance, k=None) -> SolveOutcome:
    """Constant assignment for 0-valid (preferred) or 1-valid languages."""
    props = property_vector(instance.language)
    if props.zero_valid:
        value = 0
    elif props.one_valid:
        value = 1
    else:
        raise PreconditionError("language is neither 0-valid nor 1-valid")
    witness = {v: value for v in instance.variables}
    assert not evaluate(instance, witness)
    return SolveOutcome(OPTIMAL, 0, frozenset(), witness,
                        narrative=(f"all-{value} assignment satisfies every relation",))
