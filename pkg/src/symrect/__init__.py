"""Symmetric rectilinear partitioning of sparse matrices.

Load a pattern matrix, optionally reorder its vertices, and split it into a
``p x p`` grid of tiles with one cut vector shared by rows and columns.
"""

from .ccp import InfeasibleError, optimal_1d_partition, refinement
from .kernels import BACKEND
from .metrics import (
    MliConfig,
    TileLoads,
    brute_force_symmetric,
    load_imbalance,
    nic,
    restricted_imbalance,
    tile_loads,
    uni,
)
from .mli import beta, pbd, pbi, probe, ptc, ptc_search
from .mnc import MncResult, btl, find_upper_bound, ptl
from .prefix import PrefixSum1D, PrefixSum2D, build_prefix2d, count_rect
from .sparse import (
    OrderingPermutation,
    SparseMatrix,
    apply_ordering,
    degree_order,
    load_matrix,
    rcm_order,
    save_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InfeasibleError",
    "MliConfig",
    "MncResult",
    "OrderingPermutation",
    "PrefixSum1D",
    "PrefixSum2D",
    "SparseMatrix",
    "TileLoads",
    "apply_ordering",
    "beta",
    "brute_force_symmetric",
    "btl",
    "build_prefix2d",
    "count_rect",
    "degree_order",
    "find_upper_bound",
    "load_imbalance",
    "load_matrix",
    "nic",
    "optimal_1d_partition",
    "pbd",
    "pbi",
    "probe",
    "ptc",
    "ptc_search",
    "ptl",
    "rcm_order",
    "refinement",
    "restricted_imbalance",
    "save_matrix",
    "tile_loads",
    "uni",
]
