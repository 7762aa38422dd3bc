"""Prefix sums for counting nonzeros in index ranges.

``PrefixSum1D`` is the running total of a weight array, used by the 1D
partitioner. ``PrefixSum2D`` answers rectangle counts on a sparse matrix:
a Fenwick tree over rows where node ``k`` keeps the sorted column indices
of rows ``k - lowbit(k) .. k - 1``. A query visits O(log n) nodes and does
two binary searches in each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .sparse import SparseMatrix

__all__ = [
    "PrefixSum1D",
    "PrefixSum2D",
    "DensePrefix2D",
    "build_prefix2d",
    "count_rect",
]


@dataclass(frozen=True, eq=False)
class PrefixSum1D:
    """``values[i]`` is the sum of the first ``i`` weights."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.int64)
        if v.ndim != 1 or v.size == 0 or v[0] != 0:
            raise ValueError("prefix array must be 1-D and start at 0")
        if np.any(np.diff(v) < 0):
            raise ValueError("prefix array must be non-decreasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_weights(cls, weights) -> "PrefixSum1D":
        w = np.asarray(weights)
        if w.size and not np.issubdtype(w.dtype, np.integer):
            if not np.all(w == np.round(w)):
                raise TypeError("weights must be integers")
        w = w.astype(np.int64)
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        out = np.zeros(w.size + 1, dtype=np.int64)
        np.cumsum(w, out=out[1:])
        return cls(out)

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def total(self) -> int:
        return int(self.values[-1])

    def weights(self) -> np.ndarray:
        return np.diff(self.values)

    def interval(self, lo: int, hi: int) -> int:
        """Sum of weights ``lo .. hi - 1``."""
        return int(self.values[hi] - self.values[lo])


@dataclass(frozen=True, eq=False)
class PrefixSum2D:
    n: int
    nnz: int
    node_cols: np.ndarray
    node_ptr: np.ndarray
    _py_cache: list = field(default_factory=list, repr=False)

    @property
    def stored_indices(self) -> int:
        return int(self.node_cols.size)

    def count(self, r_lo: int, r_hi: int, c_lo: int, c_hi: int) -> int:
        """Nonzeros in rows ``[r_lo, r_hi)`` and columns ``[c_lo, c_hi)``."""
        return kernels.rect_count(self, r_lo, r_hi, c_lo, c_hi)


def build_prefix2d(A: SparseMatrix) -> PrefixSum2D:
    n = A.n
    k = np.arange(1, n + 1, dtype=np.int64)
    first_row = k - (k & -k)
    sizes = A.row_offsets[k] - A.row_offsets[first_row]
    node_ptr = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(sizes, out=node_ptr[2:])
    node_cols = kernels.build_node_cols(A.row_offsets, A.col_indices, node_ptr)
    node_cols.setflags(write=False)
    node_ptr.setflags(write=False)
    return PrefixSum2D(n, A.nnz, node_cols, node_ptr)


def count_rect(S, r_lo: int, r_hi: int, c_lo: int, c_hi: int) -> int:
    """Nonzeros in the closed rectangle ``[r_lo, r_hi] x [c_lo, c_hi]``.

    An empty range (``hi == lo - 1``) counts 0.
    """
    n = S.n
    for lo, hi in ((r_lo, r_hi), (c_lo, c_hi)):
        if lo < 0 or hi >= n or hi < lo - 1:
            raise IndexError("rectangle [%d, %d] out of range for n=%d" % (lo, hi, n))
    return S.count(r_lo, r_hi + 1, c_lo, c_hi + 1)


def space_bound(A: SparseMatrix) -> int:
    """Upper bound ``nnz * ceil(log2(n + 1))`` on stored indices."""
    return A.nnz * math.ceil(math.log2(A.n + 1)) if A.n else 0


class DensePrefix2D:
    """Dense ``(n+1) x (n+1)`` summed-area table; O(1) queries, O(n^2) memory."""

    def __init__(self, A: SparseMatrix):
        self.n = A.n
        self.nnz = A.nnz
        dense = A.to_dense()
        table = np.zeros((A.n + 1, A.n + 1), dtype=np.int64)
        table[1:, 1:] = dense.cumsum(0).cumsum(1)
        self.table = table

    def count(self, r_lo, r_hi, c_lo, c_hi):
        if r_lo >= r_hi or c_lo >= c_hi:
            return 0
        t = self.table
        return int(t[r_hi, c_hi] - t[r_lo, c_hi] - t[r_hi, c_lo] + t[r_lo, c_lo])
