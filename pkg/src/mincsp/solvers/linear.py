"""Exact minimum deletion for systems of GF(2) equations.

Affine relations are exactly solution sets of linear systems, so a DCSP
instance over an affine language is a list of equation groups: a
constraint holds iff its whole group holds.  Rows are Python ints used as
bit masks (variable ``i`` is bit ``i``).

The search raises the budget ``c`` from zero.  At budget ``c`` any group
heavier than ``c`` (or undeletable) must be kept; the remaining groups are
decided keep-first by depth-first search over an incremental echelon basis.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from ..gf2 import Gf2Matrix, orthogonal_complement
from ..instances.model import DcspInstance, NcInstance, evaluate
from .outcome import OPTIMAL, SolveOutcome, infeasible, over_budget


@lru_cache(maxsize=1024)
def affine_equations(relation) -> Optional[tuple]:
    """``((coordinates, rhs), ...)`` whose solution set is the relation, or None.

    Coordinates index the relation's columns (0 = leftmost).
    """
    a = relation.arity
    codes = relation.codes
    r0 = int(codes[0])
    shifts = a - 1 - np.arange(a)
    diffs = ((codes[:, None] ^ r0) >> shifts) & 1
    directions = Gf2Matrix(diffs.T.astype(np.uint8), cols=len(codes))
    normals = orthogonal_complement(directions)
    dim = a - normals.rows
    if (1 << dim) != len(codes):
        return None
    base = (r0 >> shifts) & 1
    out = []
    for row in normals.bits:
        coords = tuple(int(t) for t in np.flatnonzero(row))
        out.append((coords, int(row @ base) & 1))
    return tuple(out)


def is_single_equation(relation) -> bool:
    eqs = affine_equations(relation)
    return eqs is not None and len(eqs) == 1


def constraint_equations(instance: DcspInstance, index: int):
    """Equations of one constraint over variable bits; repeated variables cancel."""
    pos = {v: i for i, v in enumerate(instance.variables)}
    c = instance.constraints[index]
    eqs = affine_equations(instance.language[c.relation])
    if eqs is None:
        raise PreconditionError(f"relation {c.relation!r} is not affine")
    out = []
    for coords, rhs in eqs:
        mask = 0
        for t in coords:
            mask ^= 1 << pos[c.scope[t]]
        if mask or rhs:
            out.append((mask, rhs))
    return tuple(sorted(out))


def _insert(basis: dict, row: int, rhs: int):
    """Reduce and add one equation; None if it contradicts the basis."""
    while row:
        h = row.bit_length() - 1
        hit = basis.get(h)
        if hit is None:
            nb = dict(basis)
            nb[h] = (row, rhs)
            return nb
        row ^= hit[0]
        rhs ^= hit[1]
    return basis if rhs == 0 else None


def _insert_all(basis, eqs):
    for row, rhs in eqs:
        basis = _insert(basis, row, rhs)
        if basis is None:
            return None
    return basis


def _solution(basis: dict, n: int) -> list:
    x = 0
    for h in sorted(basis):
        row, rhs = basis[h]
        rest = row & ~(1 << h)
        if (bin(rest & x).count("1") + rhs) & 1:
            x |= 1 << h
    return [(x >> i) & 1 for i in range(n)]


def min_linear_deletion(n: int, groups, budget=None):
    """Cheapest set of groups to drop so the rest is consistent.

    ``groups`` is a list of ``(equations, weight, hard)``.  Returns
    ``(cost, dropped group indices, solution bits)``, ``None`` when the hard
    groups alone are inconsistent, or ``"over"`` when the optimum exceeds
    ``budget``.
    """
    groups = list(groups)
    hard_only = {}
    for eqs, _, hard in groups:
        if hard:
            hard_only = _insert_all(hard_only, eqs)
            if hard_only is None:
                return None
    total = sum(w for _, w, hard in groups if not hard)
    limit = total if budget is None else min(budget, total)
    for c in range(limit + 1):
        basis = {}
        soft = []
        for g, (eqs, w, hard) in enumerate(groups):
            if hard or w > c:
                basis = _insert_all(basis, eqs)
                if basis is None:
                    break
            else:
                soft.append(g)
        if basis is None:
            continue
        found = _dfs(groups, soft, 0, basis, c, ())
        if found is not None:
            dropped, final = found
            return sum(groups[g][1] for g in dropped), dropped, _solution(final, n)
    return "over"


def _dfs(groups, soft, i, basis, left, dropped):
    if i == len(soft):
        return dropped, basis
    g = soft[i]
    eqs, w, _ = groups[g]
    kept = _insert_all(basis, eqs)
    if kept is not None:
        found = _dfs(groups, soft, i + 1, kept, left, dropped)
        if found is not None:
            return found
    if w <= left:
        return _dfs(groups, soft, i + 1, basis, left - w, dropped + (g,))
    return None


def dcsp_groups(instance: DcspInstance):
    """Merge identical equation groups; returns (groups, members per group)."""
    index = {}
    groups, members = [], []
    for j, c in enumerate(instance.constraints):
        eqs = constraint_equations(instance, j)
        if eqs not in index:
            index[eqs] = len(groups)
            groups.append([eqs, 0, False])
            members.append([])
        g = index[eqs]
        groups[g][1] += 1
        groups[g][2] = groups[g][2] or c.undeletable
        members[g].append(j)
    return [tuple(g) for g in groups], members


def solve_linear_dcsp(instance: DcspInstance, k=None) -> SolveOutcome:
    """Exact optimum for any instance over an affine language (no variable cap)."""
    groups, _ = dcsp_groups(instance)
    found = min_linear_deletion(len(instance.variables), groups, k)
    if found is None:
        return infeasible("undeletable equations are inconsistent")
    if found == "over":
        return over_budget(k)
    cost, _, bits = found
    witness = {v: bits[i] for i, v in enumerate(instance.variables)}
    deleted = evaluate(instance, witness)
    assert len(deleted) == cost and not deleted & instance.undeletable
    return SolveOutcome(OPTIMAL, cost, deleted, witness,
                        narrative=("GF(2) equation-group deletion search",))


def nc_groups(nc: NcInstance):
    index = {}
    groups = []
    for row, rhs in zip(nc.A.bits, nc.b):
        mask = sum(1 << int(j) for j in np.flatnonzero(row))
        key = (((mask, int(rhs)),) if (mask or rhs) else ())
        if key not in index:
            index[key] = len(groups)
            groups.append([key, 0, False])
        groups[index[key]][1] += 1
    return [tuple(g) for g in groups]


def nc_grouped(nc: NcInstance):
    """Nearest Codeword as equation deletion; works for any number of columns."""
    cost, _, bits = min_linear_deletion(nc.n, nc_groups(nc))
    x = np.array(bits, dtype=np.uint8)
    assert nc.distance(x) == cost
    return x, cost
