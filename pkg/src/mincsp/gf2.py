"""Dense linear algebra over GF(2).

Matrices are stored as ``uint8`` arrays holding 0/1 entries.  The exact
minimum-weight coset search enumerates every member of the solution coset,
so it is only offered up to ``MAX_FREE_VARIABLES`` free variables.
"""

from __future__ import annotations

import numpy as np

from .errors import InstanceTooLarge, ParseError

MAX_FREE_VARIABLES = 24
_CHUNK = 1 << 16


class Gf2Matrix:
    """Immutable dense matrix over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits, cols=None):
        arr = np.array(bits, dtype=np.uint8)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols if cols is not None else 0)
        if arr.ndim != 2:
            raise ValueError("GF(2) matrix needs a 2-d table of bits")
        if cols is not None and arr.shape[1] != cols:
            raise ValueError(f"expected {cols} columns, got {arr.shape[1]}")
        if arr.shape[1] < 1:
            raise ValueError("GF(2) matrix needs at least one column")
        if np.any(arr > 1):
            raise ValueError("entries must be 0 or 1")
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def rows(self) -> int:
        return self._bits.shape[0]

    @property
    def cols(self) -> int:
        return self._bits.shape[1]

    @property
    def shape(self):
        return self._bits.shape

    @property
    def T(self) -> "Gf2Matrix":
        if self.rows == 0:
            raise ValueError("cannot transpose a matrix with no rows")
        return Gf2Matrix(self._bits.T)

    def __matmul__(self, other):
        if isinstance(other, Gf2Matrix):
            prod = self._bits.astype(np.int64) @ other.bits.astype(np.int64)
            return Gf2Matrix(prod & 1, cols=other.cols)
        vec = np.asarray(other, dtype=np.int64)
        return ((self._bits.astype(np.int64) @ vec) & 1).astype(np.uint8)

    def __eq__(self, other):
        return (isinstance(other, Gf2Matrix) and self.shape == other.shape
                and bool(np.array_equal(self._bits, other.bits)))

    def __hash__(self):
        return hash((self.shape, self._bits.tobytes()))

    def __repr__(self):
        body = "; ".join("".join(map(str, row)) for row in self._bits)
        return f"Gf2Matrix({self.rows}x{self.cols}: {body})"


def as_vector(bits) -> np.ndarray:
    vec = np.array(bits, dtype=np.uint8).reshape(-1)
    if np.any(vec > 1):
        raise ValueError("vector entries must be 0 or 1")
    return vec


def parse_bits(text: str) -> np.ndarray:
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a bit-string: {text!r}")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def format_bits(vec) -> str:
    return "".join(str(int(b)) for b in vec)


def _rref(arr: np.ndarray):
    m = arr.copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, r, pivots


def row_reduce(M: Gf2Matrix):
    """Reduced row echelon form.

    Returns ``(reduced, rank, pivot_columns)``; pivots are chosen at the
    lowest available column index so the result is deterministic.
    """
    reduced, rank, pivots = _rref(M.bits)
    return Gf2Matrix(reduced, cols=M.cols), rank, tuple(pivots)


def rank(M: Gf2Matrix) -> int:
    return _rref(M.bits)[1]


def orthogonal_complement(A: Gf2Matrix) -> Gf2Matrix:
    """Rows spanning the vectors orthogonal to the column space of ``A``.

    For an m x n matrix the result is (m - rank) x m and ``w`` lies in the
    column space of ``A`` exactly when the result times ``w`` is zero.
    """
    m = A.rows
    reduced, r, pivots = _rref(A.bits.T.copy())
    free = [c for c in range(m) if c not in set(pivots)]
    basis = np.zeros((len(free), m), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = reduced[row, f]
    return Gf2Matrix(basis.reshape(len(free), m), cols=m)


def _coset(A: Gf2Matrix, s):
    """Particular solution and kernel basis of ``A x = s`` (None if inconsistent)."""
    s = as_vector(s)
    if s.size != A.rows:
        raise ValueError(f"right-hand side has length {s.size}, matrix has {A.rows} rows")
    n = A.cols
    aug = np.concatenate([A.bits, s.reshape(-1, 1)], axis=1)
    reduced, r, pivots = _rref(aug)
    if n in pivots:
        return None
    particular = np.zeros(n, dtype=np.uint8)
    for row, p in enumerate(pivots):
        particular[p] = reduced[row, n]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    kernel = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        kernel[i, f] = 1
        for row, p in enumerate(pivots):
            kernel[i, p] = reduced[row, f]
    return particular, kernel


def solve(A: Gf2Matrix, s):
    """Some solution of ``A x = s`` (free variables set to 0), or None."""
    coset = _coset(A, s)
    return None if coset is None else coset[0]


def kernel_basis(A: Gf2Matrix) -> np.ndarray:
    return _coset(A, np.zeros(A.rows, dtype=np.uint8))[1]


def _lex_first(rows: np.ndarray) -> np.ndarray:
    # lexsort's last key is primary, so feed columns right-to-left
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def min_weight_affine_solution(A: Gf2Matrix, s):
    """Minimum Hamming weight solution of ``A x = s``.

    Returns ``(x, weight)`` with ties broken towards the lexicographically
    least bit vector (coordinate 0 first), or None when the system is
    inconsistent.  Every coset member is enumerated, so more than
    ``MAX_FREE_VARIABLES`` free variables is refused.
    """
    coset = _coset(A, s)
    if coset is None:
        return None
    particular, kernel = coset
    f = kernel.shape[0]
    if f > MAX_FREE_VARIABLES:
        raise InstanceTooLarge(
            f"{f} free variables exceeds the enumeration cap of {MAX_FREE_VARIABLES}")
    if f == 0:
        return particular, int(particular.sum())
    shifts = np.arange(f, dtype=np.int64)
    kern = kernel.astype(np.int64)
    best = None
    best_w = None
    for start in range(0, 1 << f, _CHUNK):
        ids = np.arange(start, min(start + _CHUNK, 1 << f), dtype=np.int64)
        combos = (ids[:, None] >> shifts) & 1
        xs = ((combos @ kern) & 1).astype(np.uint8) ^ particular
        weights = xs.sum(axis=1)
        w = int(weights.min())
        if best_w is not None and w > best_w:
            continue
        cand = _lex_first(xs[weights == w])
        if best_w is None or w < best_w:
            best, best_w = cand, w
        else:
            best = _lex_first(np.stack([best, cand]))
    return best.copy(), best_w
