"""Heuristics for minimising load imbalance with a symmetric cut vector.

``pbd`` and ``pbi`` reuse the 1D refinement; ``ptc`` searches the diagonal
with a greedy 2D probe over the Fenwick prefix structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .ccp import InfeasibleError, refinement, trivial_cuts
from .metrics import MliConfig, imbalance_fraction, uni
from .prefix import PrefixSum2D, build_prefix2d
from .sparse import SparseMatrix

__all__ = [
    "MliConfig",
    "PtcResult",
    "pbd",
    "pbi",
    "probe",
    "probe_cuts",
    "beta",
    "load_threshold",
    "ptc",
    "ptc_search",
]


def _check_parts(A: SparseMatrix, p: int) -> None:
    if not 1 <= p <= A.n:
        raise InfeasibleError("need 1 <= p <= n (p=%d, n=%d)" % (p, A.n))


def _degenerate(A: SparseMatrix, p: int):
    if p == 1:
        return trivial_cuts(A.n)
    if A.nnz == 0:
        return uni(A.n, p)
    return None


def pbd(A: SparseMatrix, p: int, cfg: MliConfig = MliConfig(), trace: list | None = None):
    """Pick best direction first, then refine only in that direction.

    ``trace``, if given, receives the direction of every refinement call.
    """
    _check_parts(A, p)
    early = _degenerate(A, p)
    if early is not None:
        return early
    start = trivial_cuts(A.n)
    by_rows = refinement(A, start, p, "column")
    by_cols = refinement(A, start, p, "row")
    if trace is not None:
        trace.extend(["column", "row"])
    if imbalance_fraction(A, by_rows) < imbalance_fraction(A, by_cols):
        C, direction = by_rows, "column"
    else:
        C, direction = by_cols, "row"

    prev = None
    i = 0
    while i < cfg.tau and (prev is None or np.linalg.norm(C - prev) > cfg.epsilon):
        prev = C
        C = refinement(A, C, p, direction)
        if trace is not None:
            trace.append(direction)
        i += 1
    return C


def pbi(A: SparseMatrix, p: int, cfg: MliConfig = MliConfig(), trace: list | None = None):
    """Refine in both directions every iteration and keep the best vector.

    ``trace``, if given, receives ``(cuts, imbalance)`` for every vector
    chosen in an iteration.
    """
    _check_parts(A, p)
    early = _degenerate(A, p)
    if early is not None:
        return early
    col_cuts = trivial_cuts(A.n)
    best, best_lam = None, None
    prev_pick = None
    for _ in range(cfg.tau):
        row_cuts = refinement(A, col_cuts, p, "column")
        col_cuts = refinement(A, row_cuts, p, "row")
        lam_c = imbalance_fraction(A, col_cuts)
        lam_r = imbalance_fraction(A, row_cuts)
        if lam_c < lam_r:
            pick, lam = col_cuts, lam_c
        else:
            pick, lam = row_cuts, lam_r
        col_cuts = pick
        if trace is not None:
            trace.append((pick, lam))
        if best is None or lam < best_lam:
            best, best_lam = pick, lam
        # deterministic: a repeated pick repeats every later iteration
        if prev_pick is not None and np.array_equal(pick, prev_pick):
            break
        prev_pick = pick
    return best


def load_threshold(ell, nnz: int, p: int) -> int:
    """Largest tile load compatible with imbalance ``ell`` (``nnz / p^2`` average)."""
    if ell < -1:
        return -1
    return math.floor((Fraction(ell) + 1) * Fraction(nnz, p * p))


def beta(A: SparseMatrix, S: PrefixSum2D, C, i: int, bound, mode: str = "imbalance",
         p: int | None = None, cap: int | None = None):
    """Largest next cut keeping the newly determined tiles within ``bound``.

    ``C[0..i-1]`` must be fixed. In ``"imbalance"`` mode ``bound`` is a
    target imbalance (average ``nnz / p^2``); in ``"load"`` mode it is an
    absolute tile load. The search covers ``(C[i-1], cap]``, ``cap``
    defaulting to ``n``.

    Returns ``(cut, ok)``; ``ok`` is False when even ``C[i-1] + 1`` breaks
    the bound, in which case ``cut == C[i-1] + 1``.
    """
    C = np.asarray(C, dtype=np.int64)
    if mode == "imbalance":
        p = C.size - 1 if p is None else p
        thr = load_threshold(bound, A.nnz, p)
    elif mode == "load":
        thr = int(bound)
    else:
        raise ValueError("mode must be 'imbalance' or 'load'")
    if not 0 < i or C[i - 1] >= A.n:
        raise ValueError("no room for cut %d" % i)
    cap = A.n if cap is None else cap
    return kernels.beta_search(S, C[:i], i, thr, cap)


def probe_cuts(A: SparseMatrix, S: PrefixSum2D, p: int, ell):
    """Greedy probe for target imbalance ``ell``; returns ``(ok, cuts)``."""
    _check_parts(A, p)
    if A.nnz == 0:
        return ell >= 0, uni(A.n, p)
    return kernels.probe_load(S, p, load_threshold(ell, A.nnz, p))


def probe(A: SparseMatrix, S: PrefixSum2D, p: int, ell) -> bool:
    """True when greedy largest cuts reach imbalance ``<= ell``."""
    return bool(probe_cuts(A, S, p, ell)[0])


@dataclass
class PtcResult:
    cuts: np.ndarray
    best_bound: Fraction | None
    converged: bool
    bounds: list = field(default_factory=list)


def ptc_search(A: SparseMatrix, p: int, S: PrefixSum2D | None = None) -> PtcResult:
    """Probe target cut, returning the cuts along with search diagnostics.

    For each cut position a bisection over the candidate cut finds the
    smallest restricted imbalance the probe accepts; the final vector is
    rebuilt greedily from the smallest accepted imbalance.
    """
    _check_parts(A, p)
    early = _degenerate(A, p)
    if early is not None:
        return PtcResult(early, Fraction(0) if A.nnz == 0 else None, True)
    n, nnz = A.n, A.nnz
    if S is None:
        S = build_prefix2d(A)

    # probe outcome only depends on the integer load threshold
    seen: dict[int, bool] = {}

    def accepts(top):
        if top not in seen:
            seen[top] = kernels.probe_load(S, p, top)[0]
        return seen[top]

    C = np.zeros(p + 1, dtype=np.int64)
    C[p] = n
    tops: list[int | None] = [None] * (p - 1)
    for i in range(1, p):
        lo, hi = C[i - 1] + 1, n - (p - i)
        while lo < hi:
            mid = (lo + hi) // 2
            C[i] = mid
            top = kernels.restricted_max(S, C[: i + 1], i)
            if accepts(top):
                hi = mid
                tops[i - 1] = top
            else:
                lo = mid + 1
        C[i] = hi

    found = [t for t in tops if t is not None]
    bounds = [None if t is None else Fraction(t * p * p, nnz) - 1 for t in tops]
    if not found:
        return PtcResult(C.copy(), None, False, bounds)
    thr = min(found)
    out = np.zeros(p + 1, dtype=np.int64)
    out[p] = n
    for i in range(1, p):
        out[i], _ = kernels.beta_search(S, out[:i], i, thr, n - (p - i))
    return PtcResult(out, Fraction(thr * p * p, nnz) - 1, True, bounds)


def ptc(A: SparseMatrix, p: int, S: PrefixSum2D | None = None) -> np.ndarray:
    """Probe target cut heuristic; see :func:`ptc_search`."""
    return ptc_search(A, p, S).cuts
