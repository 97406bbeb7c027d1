"""Exact rational linear programming for covering-type LPs.

Solves  minimise c.x  subject to  G x >= h,  x >= 0  with c >= 0.
Because c is nonnegative the dual  maximise h.y  s.t.  G^T y <= c,  y >= 0
is feasible at y = 0, so a single-phase primal simplex on the dual needs no
artificial variables.  The primal optimum is read off the reduced costs of
the dual slacks.  Bland's rule guarantees termination.  Rows are stored
sparsely as dicts of Fractions.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InternalInconsistency

_ZERO = Fraction(0)


def _axpy(target: dict, factor, source: dict):
    for col, val in source.items():
        new = target.get(col, _ZERO) - factor * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def solve_covering_lp(c, rows, h):
    """``rows`` is a list of sparse dicts ``{var: coeff}`` (one per constraint).

    Returns ``(value, x)`` with exact Fractions, or None if infeasible.
    """
    n = len(c)
    m = len(rows)
    # dual: column j < m is y_j, column m + i is the slack of primal var i
    tableau = []
    rhs = []
    for i in range(n):
        tableau.append({m + i: Fraction(1)})
        rhs.append(Fraction(c[i]))
    for j, row in enumerate(rows):
        for i, coeff in row.items():
            if coeff:
                tableau[i][j] = Fraction(coeff)
    basis = [m + i for i in range(n)]
    obj = {j: -Fraction(h[j]) for j in range(m) if h[j]}
    value = _ZERO
    while True:
        entering = min((col for col, val in obj.items() if val < 0), default=None)
        if entering is None:
            break
        leave = None
        best = None
        for r in range(n):
            a = tableau[r].get(entering)
            if a is not None and a > 0:
                ratio = rhs[r] / a
                key = (ratio, basis[r])
                if best is None or key < best:
                    best, leave = key, r
        if leave is None:
            return None
        piv = tableau[leave][entering]
        prow = {col: val / piv for col, val in tableau[leave].items()}
        prhs = rhs[leave] / piv
        tableau[leave] = prow
        rhs[leave] = prhs
        for r in range(n):
            if r != leave:
                f = tableau[r].get(entering)
                if f is not None:
                    _axpy(tableau[r], f, prow)
                    rhs[r] -= f * prhs
        f = obj.get(entering)
        _axpy(obj, f, prow)
        value -= f * prhs
        basis[leave] = entering
    x = [obj.get(m + i, _ZERO) for i in range(n)]
    _certify(c, rows, h, x, value)
    return value, x


def _certify(c, rows, h, x, value):
    if any(v < 0 for v in x):
        raise InternalInconsistency("negative primal value recovered from the dual")
    for row, target in zip(rows, h):
        if sum(coeff * x[i] for i, coeff in row.items()) < target:
            raise InternalInconsistency("recovered primal point violates a row")
    if sum(ci * xi for ci, xi in zip(c, x)) != value:
        raise InternalInconsistency("primal and dual objective values differ")
