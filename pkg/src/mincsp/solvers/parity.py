"""Exact solvers for parity set systems and Nearest Codeword.

Odd Set has two engines that must agree on the optimum:

* ``enumerate``: iterative deepening over chosen elements.  A set with the
  wrong parity needs one more element from it, so we branch over its
  unchosen elements, smallest violated set first, and forbid earlier
  siblings in later branches so every subset is visited once.
* ``gf2``: the parity targets form a linear system; take its minimum
  weight solution.
"""

from __future__ import annotations

import numpy as np

from ..errors import InstanceTooLarge, InternalInconsistency
from ..gf2 import MAX_FREE_VARIABLES, Gf2Matrix, min_weight_affine_solution, orthogonal_complement, rank, solve
from ..instances.model import EvenOddSetInstance, NcInstance
from .linear import nc_grouped
from .outcome import OPTIMAL, SolveOutcome, infeasible, over_budget

MAX_EXHAUSTIVE_COLUMNS = 24
_CHUNK = 1 << 16


def _consistent(instance: EvenOddSetInstance) -> bool:
    if instance.n == 0:
        return all(p == 0 for p in instance.parities)
    if not instance.sets:
        return True
    return solve(instance.incidence(), np.array(instance.parities, dtype=np.uint8)) is not None


def _enumerate(instance: EvenOddSetInstance, limit):
    masks = instance.set_masks()
    targets = instance.parities
    order = sorted(range(len(masks)), key=lambda i: (bin(masks[i]).count("1"), i))

    def violated(T):
        return [i for i in order if (bin(T & masks[i]).count("1") & 1) != targets[i]]

    def dfs(T, banned, left):
        bad = violated(T)
        if not bad:
            return T
        if left == 0:
            return None
        if left == 1:
            # one more element must fix every violated set and touch no good one
            need = -1
            for i in bad:
                need &= masks[i]
            for i in range(len(masks)):
                if i not in bad:
                    need &= ~masks[i]
            need &= ~T & ~banned
            if need:
                low = need & -need
                return T | low
            return None
        cands = masks[bad[0]] & ~T & ~banned
        local = banned
        while cands:
            low = cands & -cands
            cands ^= low
            found = dfs(T | low, local, left - 1)
            if found is not None:
                return found
            local |= low
        return None

    for depth in range(0, limit + 1):
        found = dfs(0, 0, depth)
        if found is not None:
            return found
    return None


def _used_incidence(instance: EvenOddSetInstance):
    """Incidence over the elements that occur in some set; the rest are never chosen."""
    used = sorted({e for s in instance.sets for e in s})
    col = {e: i for i, e in enumerate(used)}
    bits = np.zeros((instance.m, max(len(used), 1)), dtype=np.uint8)
    for i, s in enumerate(instance.sets):
        bits[i, [col[e] for e in s]] = 1
    return used, Gf2Matrix(bits)


def _gf2(instance: EvenOddSetInstance):
    if instance.n == 0 or not instance.sets:
        return 0
    used, A = _used_incidence(instance)
    x, _ = min_weight_affine_solution(A, np.array(instance.parities, dtype=np.uint8))
    return sum(1 << used[i] for i in np.flatnonzero(x[:len(used)]))


def free_variables(instance: EvenOddSetInstance) -> int:
    if instance.n == 0 or not instance.sets:
        return 0
    used, A = _used_incidence(instance)
    return len(used) - rank(A)


def solve_oddset_exact(instance: EvenOddSetInstance, k=None, engine="auto") -> SolveOutcome:
    """Minimum set T with the required parity on every set.

    ``engine`` is ``enumerate``, ``gf2``, ``both`` (cross-checked) or
    ``auto`` (gf2 when the coset is small enough to enumerate).
    """
    if not _consistent(instance):
        return infeasible("parity constraints are inconsistent over GF(2)")
    if engine == "auto":
        engine = "gf2" if free_variables(instance) <= MAX_FREE_VARIABLES else "enumerate"
    results = {}
    if engine in ("gf2", "both"):
        results["gf2"] = _gf2(instance)
    if engine in ("enumerate", "both"):
        limit = instance.n if k is None else min(k, instance.n)
        results["enumerate"] = _enumerate(instance, limit)
    if not results:
        raise ValueError(f"unknown engine {engine!r}")
    costs = {name: (None if T is None else bin(T).count("1")) for name, T in results.items()}
    if engine == "both" and costs["gf2"] != costs["enumerate"]:
        if not (k is not None and costs["enumerate"] is None and costs["gf2"] > k):
            raise InternalInconsistency(f"odd set engines disagree: {costs}")
    name = "gf2" if "gf2" in results else "enumerate"
    T = results[name]
    if T is None or (k is not None and costs[name] > k):
        return over_budget(k)
    chosen = frozenset(i for i in range(instance.n) if T >> i & 1)
    return SolveOutcome(OPTIMAL, len(chosen), chosen, narrative=(f"engine: {engine}",))


# -- Nearest Codeword --------------------------------------------------------

def _nc_exhaustive(nc: NcInstance):
    n = nc.n
    if n > MAX_EXHAUSTIVE_COLUMNS:
        raise InstanceTooLarge(f"{n} columns exceeds the exhaustive cap of {MAX_EXHAUSTIVE_COLUMNS}")
    At = nc.A.bits.T.astype(np.int64)
    b = nc.b.astype(np.int64)
    shifts = n - 1 - np.arange(n, dtype=np.int64)
    best = None
    for start in range(0, 1 << n, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        xs = (codes[:, None] >> shifts) & 1
        dist = (((xs @ At) & 1) ^ b).sum(axis=1)
        r = int(np.argmin(dist))
        if best is None or dist[r] < best[1]:
            best = (xs[r].astype(np.uint8), int(dist[r]))
    return best


def _nc_syndrome(nc: NcInstance):
    perp = orthogonal_complement(nc.A)
    if perp.rows == 0:
        z = np.zeros(nc.m, dtype=np.uint8)
    else:
        z, _ = min_weight_affine_solution(perp, perp @ nc.b)
    x = solve(nc.A, nc.b ^ z)
    if x is None:
        raise InternalInconsistency("syndrome solution left the column space")
    return x, int(z.sum())


_NC_ENGINES = {"exhaustive": _nc_exhaustive, "syndrome": _nc_syndrome, "grouped": nc_grouped}


def solve_nc_exact(nc: NcInstance, engine="syndrome"):
    """``(x, distance)`` minimising the distance from ``A x`` to ``b``.

    ``engine='both'`` runs exhaustive and syndrome search and insists they agree.
    """
    if engine == "both":
        a = _nc_exhaustive(nc)
        b = _nc_syndrome(nc)
        if a[1] != b[1]:
            raise InternalInconsistency(f"nearest codeword engines disagree: {a[1]} vs {b[1]}")
        return a
    x, d = _NC_ENGINES[engine](nc)
    if nc.distance(x) != d:
        raise InternalInconsistency("reported distance does not match the vector")
    return x, d


def nc_outcome(nc: NcInstance, k=None, engine="syndrome") -> SolveOutcome:
    x, d = solve_nc_exact(nc, engine)
    if k is not None and d > k:
        return over_budget(k)
    wrong = frozenset(int(i) for i in np.flatnonzero((nc.A @ x) ^ nc.b))
    return SolveOutcome(OPTIMAL, d, wrong, vector=tuple(int(v) for v in x),
                        narrative=(f"engine: {engine}",))
