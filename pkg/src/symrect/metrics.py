"""Tile loads, load-imbalance metrics, the NIC/UNI baselines and an
exhaustive symmetric oracle for small matrices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .ccp import InfeasibleError, check_cuts, refinement, trivial_cuts
from .sparse import SparseMatrix

__all__ = [
    "MliConfig",
    "TileLoads",
    "tile_loads",
    "load_imbalance",
    "imbalance_fraction",
    "restricted_imbalance",
    "uni",
    "nic",
    "brute_force_symmetric",
    "lower_bound_parts",
]


@dataclass(frozen=True)
class MliConfig:
    """Iteration controls for the refinement-based heuristics."""

    tau: int = 20
    epsilon: float = 1e-4

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")


@dataclass(frozen=True, eq=False)
class TileLoads:
    """Nonzero counts of the ``p x q`` tile grid (rows x columns)."""

    loads: np.ndarray
    nnz: int

    @property
    def p(self) -> int:
        return self.loads.shape[0]

    @property
    def q(self) -> int:
        return self.loads.shape[1]

    @property
    def L_max(self) -> int:
        return int(self.loads.max())

    @property
    def L_avg(self) -> Fraction:
        return Fraction(self.nnz, self.loads.size)

    @property
    def imbalance(self) -> Fraction:
        if self.nnz == 0:
            return Fraction(0)
        return self.L_max / self.L_avg - 1

    @property
    def lam(self) -> float:
        return float(self.imbalance)


def tile_loads(A: SparseMatrix, col_cuts, row_cuts=None) -> TileLoads:
    """Count the nonzeros in every tile.

    ``loads[i, j]`` counts entries with row in row-band ``i`` and column in
    column-band ``j``. ``row_cuts`` defaults to ``col_cuts``.
    """
    cc = check_cuts(col_cuts, A.n)
    cr = cc if row_cuts is None else check_cuts(row_cuts, A.n)
    q, p = cc.size - 1, cr.size - 1
    if A.nnz == 0:
        return TileLoads(np.zeros((p, q), dtype=np.int64), 0)
    rb = np.searchsorted(cr, A.row_ids(), side="right") - 1
    cb = np.searchsorted(cc, A.col_indices, side="right") - 1
    loads = np.bincount(rb * q + cb, minlength=p * q).reshape(p, q)
    return TileLoads(loads.astype(np.int64), A.nnz)


def imbalance_fraction(A: SparseMatrix, col_cuts, row_cuts=None) -> Fraction:
    """Exact ``L_max / L_avg - 1``; 0 for an empty matrix."""
    return tile_loads(A, col_cuts, row_cuts).imbalance


def load_imbalance(A: SparseMatrix, col_cuts, row_cuts=None) -> float:
    return float(imbalance_fraction(A, col_cuts, row_cuts))


def restricted_imbalance(A: SparseMatrix, cuts, k: int, p: int | None = None,
                         prefix=None) -> Fraction:
    """Imbalance among the tiles whose bands are both among the first ``k``.

    ``cuts[0..k]`` must be set. The denominator is the global average
    ``nnz / p^2`` where ``p`` defaults to ``len(cuts) - 1``.
    """
    if k < 1 or A.nnz == 0:
        return Fraction(0)
    cuts = np.asarray(cuts, dtype=np.int64)
    if p is None:
        p = cuts.size - 1
    if prefix is None:
        from .prefix import build_prefix2d

        prefix = build_prefix2d(A)
    top = kernels.restricted_max(prefix, cuts[: k + 1], k)
    return Fraction(top * p * p, A.nnz) - 1


def uni(A_or_n, p: int) -> np.ndarray:
    """Uniform cuts ``floor(i * n / p)``."""
    n = A_or_n if isinstance(A_or_n, (int, np.integer)) else A_or_n.n
    if not 1 <= p <= n:
        raise InfeasibleError("need 1 <= p <= n (p=%d, n=%d)" % (p, n))
    return np.array([i * n // p for i in range(p + 1)], dtype=np.int64)


def nic(A: SparseMatrix, p: int, q: int | None = None, cfg: MliConfig = MliConfig()):
    """Alternating row/column refinement (non-symmetric rectilinear).

    Returns ``(col_cuts, row_cuts)`` with ``p`` column and ``q`` row
    intervals.
    """
    q = p if q is None else q
    n = A.n
    if not (1 <= p <= n and 1 <= q <= n):
        raise InfeasibleError("need 1 <= p, q <= n")
    if A.nnz == 0:
        return uni(n, p), uni(n, q)
    cc = trivial_cuts(n)
    cr = None
    for _ in range(cfg.tau):
        new_r = refinement(A, cc, q, "column")
        new_c = refinement(A, new_r, p, "row")
        if cr is not None and np.array_equal(new_r, cr) and np.array_equal(new_c, cc):
            break
        cr, cc = new_r, new_c
    return cc, cr


def brute_force_symmetric(A: SparseMatrix, p: int, max_n: int = 20, max_p: int = 5):
    """Best symmetric vector by enumerating all ``C(n-1, p-1)`` candidates.

    Ties go to the lexicographically smallest vector. Returns
    ``(cuts, imbalance)`` with the imbalance as an exact ``Fraction``.
    """
    n = A.n
    if n > max_n or p > max_p:
        raise ValueError("enumeration budget exceeded (n=%d, p=%d)" % (n, p))
    if not 1 <= p <= n:
        raise InfeasibleError("need 1 <= p <= n")
    if p == 1 or A.nnz == 0:
        return uni(n, p) if A.nnz == 0 else trivial_cuts(n), Fraction(0)
    dense = A.to_dense()
    cs = np.zeros((n + 1, n + 1), dtype=np.int64)
    cs[1:, 1:] = dense.cumsum(0).cumsum(1)
    best, best_cuts = None, None
    for inner in itertools.combinations(range(1, n), p - 1):
        c = (0,) + inner + (n,)
        top = 0
        for a in range(p):
            r0, r1 = c[a], c[a + 1]
            for b in range(p):
                c0, c1 = c[b], c[b + 1]
                t = cs[r1, c1] - cs[r0, c1] - cs[r1, c0] + cs[r0, c0]
                if t > top:
                    top = t
        if best is None or top < best:
            best, best_cuts = top, c
    return np.array(best_cuts, dtype=np.int64), Fraction(int(best) * p * p, A.nnz) - 1


def lower_bound_parts(nnz: int, Z: int) -> int:
    """``ceil(sqrt(nnz / Z))``: fewest intervals whose p^2 tiles can hold nnz."""
    if nnz == 0:
        return 1
    t = -(-nnz // Z)
    return math.isqrt(t - 1) + 1
