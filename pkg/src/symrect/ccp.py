"""Exact 1D chains-on-chains partitioning and the 2D -> 1D refinement step."""

from __future__ import annotations

import numpy as np

from .prefix import PrefixSum1D
from .sparse import SparseMatrix

__all__ = [
    "InfeasibleError",
    "check_cuts",
    "trivial_cuts",
    "optimal_1d_partition",
    "bottleneck",
    "refinement_weights",
    "refinement",
]


class InfeasibleError(ValueError):
    """Raised when the requested number of intervals cannot be formed."""


def check_cuts(cuts, n: int) -> np.ndarray:
    """Validate a partition vector ``0 = c_0 < c_1 < ... < c_p = n``."""
    c = np.asarray(cuts, dtype=np.int64)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("a partition vector needs at least two entries")
    if c[0] != 0 or c[-1] != n:
        raise ValueError("partition vector must start at 0 and end at n=%d" % n)
    if np.any(np.diff(c) <= 0):
        raise ValueError("partition vector must be strictly increasing")
    return c


def trivial_cuts(n: int) -> np.ndarray:
    """The single-interval vector ``{0, n}``."""
    return np.array([0, n], dtype=np.int64)


def bottleneck(prefix, cuts) -> int:
    """Largest interval sum of ``cuts`` over the prefix array."""
    v = prefix.values if isinstance(prefix, PrefixSum1D) else np.asarray(prefix)
    c = np.asarray(cuts, dtype=np.int64)
    return int(np.max(v[c[1:]] - v[c[:-1]]))


def _intervals_needed(P: np.ndarray, bound: int, limit: int) -> int:
    """Greedy interval count covering all items with sums <= bound.

    Stops counting once ``limit`` is exceeded.
    """
    n = P.size - 1
    start, count = 0, 0
    while start < n:
        end = int(np.searchsorted(P, P[start] + bound, side="right")) - 1
        if end <= start:
            return limit + 1
        count += 1
        if count > limit:
            return count
        start = end
    return count


def _right_greedy_starts(P: np.ndarray, bound: int, k: int) -> list[int]:
    """``b[j]`` = smallest start from which the suffix fits in j intervals."""
    n = P.size - 1
    b = [n]
    for _ in range(k):
        prev = b[-1]
        if prev == 0:
            b.append(0)
            continue
        start = int(np.searchsorted(P, P[prev] - bound, side="left"))
        b.append(min(start, prev - 1))
    return b


def optimal_1d_partition(prefix, p: int) -> np.ndarray:
    """Split the weights into ``p`` non-empty contiguous intervals.

    Minimises the largest interval sum; among optimal vectors the
    lexicographically smallest one is returned.

    Parameters
    ----------
    prefix : PrefixSum1D or array_like
        Prefix sums of non-negative integer weights, ``prefix[0] == 0``.
    p : int
        Number of intervals, ``1 <= p <= n``.

    Returns
    -------
    ndarray of int64, shape (p + 1,)
    """
    P = prefix if isinstance(prefix, PrefixSum1D) else PrefixSum1D(prefix)
    P = P.values
    n = P.size - 1
    if p < 1:
        raise InfeasibleError("need at least one interval")
    if p > n:
        raise InfeasibleError("cannot form %d non-empty intervals from %d items" % (p, n))

    w = np.diff(P)
    lo = max(int(w.max()), -(-int(P[-1]) // p))
    hi = int(P[-1])
    while lo < hi:
        mid = (lo + hi) // 2
        if _intervals_needed(P, mid, p) <= p:
            hi = mid
        else:
            lo = mid + 1
    best = lo

    # lexicographically smallest cuts: each cut as far left as the suffix allows
    b = _right_greedy_starts(P, best, p)
    cuts = np.empty(p + 1, dtype=np.int64)
    cuts[0], cuts[p] = 0, n
    for k in range(1, p):
        cuts[k] = max(cuts[k - 1] + 1, b[p - k])
    return cuts


def refinement_weights(A: SparseMatrix, fixed_cuts) -> np.ndarray:
    """Per-row max nonzero count over the intervals of ``fixed_cuts``.

    ``fixed_cuts`` partitions the columns of ``A``; it may contain repeated
    entries (empty intervals), as in the all-``n`` start vector.
    """
    c = np.asarray(fixed_cuts, dtype=np.int64)
    q = c.size - 1
    if A.nnz == 0:
        return np.zeros(A.n, dtype=np.int64)
    band = np.searchsorted(c, A.col_indices, side="right") - 1
    band = np.minimum(band, q - 1)
    counts = np.bincount(A.row_ids() * q + band, minlength=A.n * q)
    return counts.reshape(A.n, q).max(axis=1)


def refinement(A: SparseMatrix, fixed_cuts, p: int, direction: str = "column") -> np.ndarray:
    """Optimal 1D partition of one dimension given the other.

    With ``direction="column"`` the fixed vector partitions the columns and
    the result partitions the rows; ``"row"`` swaps the roles (runs on the
    transpose).
    """
    if direction == "row":
        A = A.transpose()
    elif direction != "column":
        raise ValueError("direction must be 'row' or 'column'")
    w = refinement_weights(A, fixed_cuts)
    return optimal_1d_partition(PrefixSum1D.from_weights(w), p)
