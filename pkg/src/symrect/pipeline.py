"""Order -> partition -> report, shared by the CLI, benchmarks and tests."""

from __future__ import annotations

import time
from fractions import Fraction

from .metrics import MliConfig, load_imbalance, nic, uni
from .mli import pbd, pbi, ptc_search
from .mnc import btl, ptl
from .report import make_report
from .sparse import SparseMatrix, apply_ordering, make_ordering

MLI_ALGOS = ("uni", "nic", "pbd", "pbi", "ptc")
MNC_ALGOS = ("btl-pbd", "btl-pbi", "ptl")


def ordered(A: SparseMatrix, ordering: str) -> SparseMatrix:
    return apply_ordering(A, make_ordering(A, ordering))


def run_partition(A: SparseMatrix, algo: str, p: int, ordering: str = "nat",
                  cfg: MliConfig = MliConfig(), q: int | None = None,
                  input_info: dict | None = None, permuted: SparseMatrix | None = None):
    """Run one min-imbalance algorithm on ``A`` under ``ordering``.

    ``permuted`` may carry the already reordered matrix.
    """
    algo = algo.lower()
    M = ordered(A, ordering) if permuted is None else permuted
    info = dict(input_info or {"name": "matrix"})
    info.setdefault("n", M.n)
    info.setdefault("nnz", M.nnz)
    flags, extra = {}, {}
    t0 = time.perf_counter()
    if algo == "uni":
        cc = cr = uni(M, p)
    elif algo == "pbd":
        cc = cr = pbd(M, p, cfg)
    elif algo == "pbi":
        cc = cr = pbi(M, p, cfg)
    elif algo == "ptc":
        res = ptc_search(M, p)
        cc = cr = res.cuts
        flags["converged"] = res.converged
    elif algo == "nic":
        cc, cr = nic(M, p, q, cfg)
    else:
        raise ValueError("unknown algorithm %r" % algo)
    wall = (time.perf_counter() - t0) * 1e3
    if algo == "nic":
        extra["lambda_sym_row"] = load_imbalance(M, cr, cr)
        extra["lambda_sym_col"] = load_imbalance(M, cc, cc)
    return make_report(M, algo, ordering.lower(), cc, cr, input_info=info, flags=flags,
                       extra=extra, wall_ms=wall)


def resolve_max_load(nnz: int, max_load: int | None = None, frac: float | None = None) -> int:
    if max_load is not None:
        return int(max_load)
    if frac is None:
        raise ValueError("give a max load or a fraction of nnz")
    # Z = frac * nnz rounded down, at least 1
    return max(1, int(Fraction(str(frac)) * nnz))


def run_mincuts(A: SparseMatrix, algo: str, Z: int, ordering: str = "nat",
                cfg: MliConfig = MliConfig(), input_info: dict | None = None,
                permuted: SparseMatrix | None = None):
    algo = algo.lower()
    M = ordered(A, ordering) if permuted is None else permuted
    info = dict(input_info or {"name": "matrix"})
    info.setdefault("n", M.n)
    info.setdefault("nnz", M.nnz)
    t0 = time.perf_counter()
    if algo == "ptl":
        res = ptl(M, Z)
    elif algo in ("btl-pbd", "btl-pbi"):
        res = btl(M, Z, algo.split("-")[1], cfg)
    else:
        raise ValueError("unknown algorithm %r" % algo)
    wall = (time.perf_counter() - t0) * 1e3
    flags = {"bound_satisfied": res.bound_satisfied, "forced_steps": res.forced_steps}
    return make_report(M, algo, ordering.lower(), res.cuts, input_info=info, kind="mincuts",
                       flags=flags, extra={"Z": Z, "max_tile_load": res.max_tile_load},
                       wall_ms=wall)
