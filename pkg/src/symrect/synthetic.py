"""Synthetic matrices for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .sparse import SparseMatrix


def random_matrix(n: int, density: float, seed=None, symmetric: bool = False) -> SparseMatrix:
    """Bernoulli pattern with the given fill probability."""
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < density
    if symmetric:
        mask = np.triu(mask)
        mask = mask | mask.T
    return SparseMatrix.from_dense(mask)


def block_diagonal(n: int, blocks: int) -> SparseMatrix:
    """``blocks`` equal dense diagonal blocks."""
    size = n // blocks
    d = np.zeros((n, n), dtype=bool)
    for b in range(blocks):
        d[b * size:(b + 1) * size, b * size:(b + 1) * size] = True
    return SparseMatrix.from_dense(d)


def rmat(scale: int, edge_factor: int = 16, abcd=(0.57, 0.19, 0.19, 0.05), seed=None,
         symmetrize: bool = True) -> SparseMatrix:
    """R-MAT graph with ``2**scale`` vertices and ``edge_factor * 2**scale`` edges."""
    rng = np.random.default_rng(seed)
    n = 1 << scale
    m = edge_factor * n
    a, b, c, _ = abcd
    rows = np.zeros(m, dtype=np.int64)
    cols = np.zeros(m, dtype=np.int64)
    for bit in range(scale):
        r = rng.random(m)
        down = r >= a + b
        right = ((r >= a) & (r < a + b)) | (r >= a + b + c)
        rows |= down.astype(np.int64) << bit
        cols |= right.astype(np.int64) << bit
    return SparseMatrix.from_edges(np.column_stack([rows, cols]), n=n, symmetrize=symmetrize,
                                   drop_self_loops=True)
