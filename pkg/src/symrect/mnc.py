"""Fewest symmetric intervals whose tiles all hold at most ``Z`` nonzeros."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .metrics import MliConfig, lower_bound_parts, tile_loads, uni
from .mli import pbd, pbi
from .prefix import PrefixSum2D, build_prefix2d
from .sparse import SparseMatrix

__all__ = ["MncResult", "find_upper_bound", "initial_upper_bound", "btl", "ptl"]


@dataclass(frozen=True, eq=False)
class MncResult:
    cuts: np.ndarray
    max_tile_load: int
    Z: int
    forced_steps: int = 0

    @property
    def p(self) -> int:
        return self.cuts.size - 1

    @property
    def bound_satisfied(self) -> bool:
        return self.max_tile_load <= self.Z


def _max_load(A, cuts) -> int:
    return tile_loads(A, cuts).L_max


def find_upper_bound(A: SparseMatrix, Z: int, l: int, r: int,
                     f: Callable[[SparseMatrix, int], np.ndarray], harden: int = 3,
                     cache: dict | None = None) -> int:
    """Smallest ``p`` in ``[l, r]`` for which ``f(A, p)`` keeps every tile <= Z.

    Bisection, then a short downward scan of ``harden`` values below the
    result since feasibility need not be monotone in ``p``. Returns ``r``
    when nothing in range is feasible.
    """
    if not 1 <= l <= r:
        raise ValueError("need 1 <= l <= r")
    cache = {} if cache is None else cache

    def feasible(p):
        if p not in cache:
            cache[p] = _max_load(A, f(A, p)) <= Z
        return cache[p]

    lo, hi = l, r
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    best = hi
    for cand in range(hi - 1, max(l, hi - harden) - 1, -1):
        if feasible(cand):
            best = cand
    return best


def initial_upper_bound(n: int, Z: int) -> int:
    """``ceil(n / sqrt(Z))`` clamped to ``[1, n]``."""
    if n == 0:
        return 1
    return min(max(lower_bound_parts(n * n, Z), 1), n)


def btl(A: SparseMatrix, Z: int, inner: str = "pbd", cfg: MliConfig = MliConfig()) -> MncResult:
    """Bound target load: shrink the interval count with UNI, then with
    PBD or PBI, and partition with the inner heuristic."""
    if Z < 1:
        raise ValueError("Z must be >= 1")
    algos = {"pbd": pbd, "pbi": pbi}
    try:
        heuristic = algos[inner.lower()]
    except KeyError:
        raise ValueError("inner must be 'pbd' or 'pbi'") from None

    def run(M, p):
        return heuristic(M, p, cfg)

    u = initial_upper_bound(A.n, Z)
    u = find_upper_bound(A, Z, 1, u, uni)
    u = find_upper_bound(A, Z, 1, u, run)
    cuts = run(A, u)
    return MncResult(cuts, _max_load(A, cuts), Z)


def ptl(A: SparseMatrix, Z: int, S: PrefixSum2D | None = None) -> MncResult:
    """Probe target load: place each cut as far right as the bound allows
    until the last cut reaches ``n``."""
    if Z < 1:
        raise ValueError("Z must be >= 1")
    n = A.n
    if S is None:
        S = build_prefix2d(A)
    cuts = [0]
    forced = 0
    while cuts[-1] != n:
        j, ok = kernels.beta_search(S, np.asarray(cuts, dtype=np.int64), len(cuts), Z, n)
        forced += not ok
        cuts.append(j)
    cuts = np.asarray(cuts, dtype=np.int64)
    return MncResult(cuts, _max_load(A, cuts), Z, forced)
