"""Binary sparse matrices in CSR form, readers/writers and vertex orderings.

The matrices handled here are adjacency patterns: values are never stored,
only the positions of the nonzeros.
"""

from __future__ import annotations

import gzip
import hashlib
import io
import os
from collections import deque
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Union

import numpy as np

__all__ = [
    "SparseMatrix",
    "OrderingPermutation",
    "MatrixParseError",
    "DimensionError",
    "load_matrix",
    "save_matrix",
    "natural_order",
    "degree_order",
    "rcm_order",
    "apply_ordering",
    "make_ordering",
    "bandwidth",
]

Source = Union[str, os.PathLike, bytes, BinaryIO]


class MatrixParseError(ValueError):
    """Raised when an input file does not follow its declared format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(ValueError):
    """Raised on non-square inputs or mismatched sizes."""


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Square binary matrix in compressed sparse row form.

    Parameters
    ----------
    n : int
        Number of rows (and columns).
    row_offsets : ndarray of int64, shape (n + 1,)
        ``row_offsets[i]:row_offsets[i + 1]`` delimits row ``i`` in
        ``col_indices``.
    col_indices : ndarray of int64, shape (nnz,)
        Column indices, strictly increasing within each row.
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    _transpose: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        ro = np.ascontiguousarray(self.row_offsets, dtype=np.int64)
        ci = np.ascontiguousarray(self.col_indices, dtype=np.int64)
        ro.setflags(write=False)
        ci.setflags(write=False)
        object.__setattr__(self, "row_offsets", ro)
        object.__setattr__(self, "col_indices", ci)
        object.__setattr__(self, "n", int(self.n))

    @property
    def nnz(self) -> int:
        return int(self.col_indices.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.n)

    def validate(self) -> None:
        """Check the CSR invariants, raising ``ValueError`` on violation."""
        ro, ci, n = self.row_offsets, self.col_indices, self.n
        if ro.shape != (n + 1,):
            raise ValueError("row_offsets must have length n + 1")
        if ro[0] != 0 or ro[-1] != ci.shape[0]:
            raise ValueError("row_offsets must start at 0 and end at nnz")
        if np.any(np.diff(ro) < 0):
            raise ValueError("row_offsets must be non-decreasing")
        if ci.size and (ci.min() < 0 or ci.max() >= n):
            raise ValueError("column index out of range")
        if ci.size > 1:
            rows = self.row_ids()
            same_row = rows[1:] == rows[:-1]
            if np.any(ci[1:][same_row] <= ci[:-1][same_row]):
                raise ValueError("column indices must be strictly increasing per row")

    def degrees(self) -> np.ndarray:
        """Number of stored entries per row."""
        return np.diff(self.row_offsets)

    def row_ids(self) -> np.ndarray:
        """Row index of every stored entry, aligned with ``col_indices``."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())

    def row(self, i: int) -> np.ndarray:
        return self.col_indices[self.row_offsets[i]:self.row_offsets[i + 1]]

    def edges(self) -> np.ndarray:
        """All entries as an ``(nnz, 2)`` array of ``(row, col)`` pairs."""
        return np.column_stack([self.row_ids(), self.col_indices])

    def transpose(self) -> "SparseMatrix":
        # cached: refinement needs A^T repeatedly
        if not self._transpose:
            rows = self.row_ids()
            self._transpose.append(
                SparseMatrix.from_coo(self.n, self.col_indices, rows, dedup=False)
            )
        return self._transpose[0]

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def to_dense(self) -> np.ndarray:
        d = np.zeros((self.n, self.n), dtype=np.int64)
        d[self.row_ids(), self.col_indices] = 1
        return d

    def to_scipy(self):
        import scipy.sparse as sp

        data = np.ones(self.nnz, dtype=np.int8)
        return sp.csr_matrix((data, self.col_indices, self.row_offsets), shape=self.shape)

    def same_pattern(self, other: "SparseMatrix") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
        )

    @classmethod
    def from_coo(cls, n: int, rows, cols, dedup: bool = True) -> "SparseMatrix":
        """Build from coordinate arrays, sorting rows and dropping duplicates."""
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        if rows.shape != cols.shape:
            raise ValueError("rows and cols must have equal length")
        if rows.size and (min(rows.min(), cols.min()) < 0 or max(rows.max(), cols.max()) >= n):
            raise ValueError("index out of range for n=%d" % n)
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        if dedup and rows.size > 1:
            keep = np.ones(rows.size, dtype=bool)
            keep[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            rows, cols = rows[keep], cols[keep]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
        return cls(n, offsets, cols)

    @classmethod
    def from_edges(cls, edges: Iterable, n: int | None = None, symmetrize: bool = False,
                   drop_self_loops: bool = False) -> "SparseMatrix":
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        return _assemble(n, arr[:, 0], arr[:, 1], symmetrize, drop_self_loops)

    @classmethod
    def from_dense(cls, dense) -> "SparseMatrix":
        d = np.asarray(dense)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise DimensionError("dense matrix must be square")
        r, c = np.nonzero(d)
        return cls.from_coo(d.shape[0], r, c)


def _assemble(n, rows, cols, symmetrize, drop_self_loops):
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if drop_self_loops:
        keep = rows != cols
        rows, cols = rows[keep], cols[keep]
    if symmetrize:
        rows, cols = np.concatenate([rows, cols]), np.concatenate([cols, rows])
    return SparseMatrix.from_coo(n, rows, cols)


# ---------------------------------------------------------------------------
# I/O


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    return data


def source_digest(source: Source) -> str:
    """SHA-256 of the (decompressed) input bytes."""
    return hashlib.sha256(_read_bytes(source)).hexdigest()


def _parse_pairs(lines, first_lineno, comment_chars, one_based):
    rows, cols = [], []
    for lineno, raw in enumerate(lines, start=first_lineno):
        line = raw.strip()
        if not line or line[0] in comment_chars:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise MatrixParseError("expected two vertex ids, got %r" % line, lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MatrixParseError("non-integer vertex id in %r" % line, lineno) from None
        if one_based:
            u -= 1
            v -= 1
        if u < 0 or v < 0:
            raise MatrixParseError("negative vertex id in %r" % line, lineno)
        rows.append(u)
        cols.append(v)
    return rows, cols


def _parse_edge_list(text: str, symmetrize, drop_self_loops, compact_ids=False):
    rows, cols = _parse_pairs(text.splitlines(), 1, "#%", one_based=False)
    if compact_ids:
        # relabel the ids that occur to 0..k-1, keeping their relative order
        ids, inv = np.unique(np.concatenate([rows, cols]).astype(np.int64), return_inverse=True)
        rows, cols = inv[: len(rows)], inv[len(rows):]
        n = ids.size
    else:
        n = max(max(rows, default=-1), max(cols, default=-1)) + 1
    return _assemble(n, rows, cols, symmetrize, drop_self_loops)


def _parse_matrix_market(text: str, symmetrize, drop_self_loops):
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise MatrixParseError("missing %%MatrixMarket banner", 1)
    banner = lines[0].lower().split()
    if len(banner) < 5 or banner[1] != "matrix" or banner[2] != "coordinate":
        raise MatrixParseError("only 'matrix coordinate' files are supported", 1)
    field_, symmetry = banner[3], banner[4]
    if field_ not in ("pattern", "integer", "real"):
        raise MatrixParseError("unsupported field %r" % field_, 1)
    if symmetry not in ("general", "symmetric"):
        raise MatrixParseError("unsupported symmetry %r" % symmetry, 1)

    idx = 1
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("%")):
        idx += 1
    if idx == len(lines):
        raise MatrixParseError("missing size line", idx)
    try:
        nrows, ncols, nent = (int(x) for x in lines[idx].split()[:3])
    except ValueError:
        raise MatrixParseError("malformed size line %r" % lines[idx], idx + 1) from None
    if nrows != ncols and not symmetrize:
        raise DimensionError("matrix is %d x %d; pass symmetrize to square it" % (nrows, ncols))
    rows, cols = _parse_pairs(lines[idx + 1:], idx + 2, "%", one_based=True)
    if len(rows) != nent:
        raise MatrixParseError("header announces %d entries, found %d" % (nent, len(rows)))
    n = max(nrows, ncols)
    if rows and (max(rows) >= nrows or max(cols) >= ncols):
        raise MatrixParseError("entry outside declared %d x %d bounds" % (nrows, ncols))
    if symmetry == "symmetric" and not symmetrize:
        r = np.asarray(rows, dtype=np.int64)
        c = np.asarray(cols, dtype=np.int64)
        rows, cols = np.concatenate([r, c]), np.concatenate([c, r])
    return _assemble(n, rows, cols, symmetrize, drop_self_loops)


def load_matrix(source: Source, format: str = "edges", symmetrize: bool = False,
                drop_self_loops: bool = False, compact_ids: bool = False) -> SparseMatrix:
    """Read a pattern matrix from a path, bytes or binary stream.

    ``format`` is ``"mtx"`` (Matrix Market coordinate, 1-based) or
    ``"edges"`` (whitespace separated ``u v`` pairs, 0-based, ``#``
    comments). Gzip-compressed input is detected automatically.
    ``compact_ids`` maps the vertex ids of an edge list that has gaps
    (as in SNAP dumps) onto ``0..k-1`` in increasing id order.
    """
    fmt = format.lower().replace("_", "-")
    text = _read_bytes(source).decode("utf-8", errors="replace")
    if fmt in ("mtx", "matrix-market", "mm"):
        return _parse_matrix_market(text, symmetrize, drop_self_loops)
    if fmt in ("edges", "edge-list", "edgelist", "txt"):
        return _parse_edge_list(text, symmetrize, drop_self_loops, compact_ids)
    raise ValueError("unknown format %r" % format)


def save_matrix(A: SparseMatrix, dest=None, format: str = "mtx"):
    """Write ``A`` as Matrix Market (general pattern) or as an edge list.

    Returns the encoded bytes when ``dest`` is None.
    """
    buf = io.StringIO()
    e = A.edges()
    if format in ("mtx", "matrix-market"):
        buf.write("%%MatrixMarket matrix coordinate pattern general\n")
        buf.write(f"{A.n} {A.n} {A.nnz}\n")
        np.savetxt(buf, e + 1, fmt="%d")
    elif format in ("edges", "edge-list"):
        buf.write(f"# n={A.n} nnz={A.nnz}\n")
        np.savetxt(buf, e, fmt="%d")
    else:
        raise ValueError("unknown format %r" % format)
    data = buf.getvalue().encode()
    if dest is None:
        return data
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "wb") as fh:
            fh.write(data)
    else:
        dest.write(data)
    return None


# ---------------------------------------------------------------------------
# Orderings

ORDERINGS = ("NAT", "DEG", "RCM")


@dataclass(frozen=True, eq=False)
class OrderingPermutation:
    """Vertex relabelling with ``perm[old_id] = new_id`` and its inverse."""

    kind: str
    perm: np.ndarray
    inv: np.ndarray

    def __post_init__(self):
        perm = np.ascontiguousarray(self.perm, dtype=np.int64)
        inv = np.ascontiguousarray(self.inv, dtype=np.int64)
        perm.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "inv", inv)

    @property
    def n(self) -> int:
        return int(self.perm.shape[0])

    @classmethod
    def from_order(cls, kind: str, order) -> "OrderingPermutation":
        """Build from ``order[new_id] = old_id``."""
        inv = np.asarray(order, dtype=np.int64)
        perm = np.empty_like(inv)
        perm[inv] = np.arange(inv.size, dtype=np.int64)
        return cls(kind, perm, inv)

    def is_bijection(self) -> bool:
        n = self.n
        return (
            np.array_equal(np.sort(self.perm), np.arange(n))
            and np.array_equal(self.inv[self.perm], np.arange(n))
        )


def natural_order(A: SparseMatrix) -> OrderingPermutation:
    ident = np.arange(A.n, dtype=np.int64)
    return OrderingPermutation("NAT", ident, ident)


def degree_order(A: SparseMatrix) -> OrderingPermutation:
    """Ascending row degree, ties kept in natural order."""
    order = np.argsort(A.degrees(), kind="stable")
    return OrderingPermutation.from_order("DEG", order)


def _undirected_adjacency(A: SparseMatrix):
    rows, cols = A.row_ids(), A.col_indices
    off = rows != cols
    sym = SparseMatrix.from_coo(
        A.n, np.concatenate([rows[off], cols[off]]), np.concatenate([cols[off], rows[off]])
    )
    return sym.row_offsets, sym.col_indices


def _bfs_levels(start, indptr, indices, seen_stamp, stamp):
    """Level structure of the component containing ``start``."""
    levels = [[start]]
    seen_stamp[start] = stamp
    while True:
        nxt = []
        for u in levels[-1]:
            for v in indices[indptr[u]:indptr[u + 1]]:
                if seen_stamp[v] != stamp:
                    seen_stamp[v] = stamp
                    nxt.append(v)
        if not nxt:
            return levels
        levels.append(nxt)


def _pseudo_peripheral(start, indptr, indices, deg, stamp_arr, stamp):
    # George-Liu: hop to a min-degree vertex of the last level while the
    # eccentricity keeps growing
    x = start
    levels = _bfs_levels(x, indptr, indices, stamp_arr, stamp)
    stamp += 1
    while True:
        last = levels[-1]
        y = min(last, key=lambda v: (deg[v], v))
        ylev = _bfs_levels(y, indptr, indices, stamp_arr, stamp)
        stamp += 1
        if len(ylev) > len(levels):
            x, levels = y, ylev
        else:
            return x, levels, stamp


def rcm_order(A: SparseMatrix) -> OrderingPermutation:
    """Reverse Cuthill-McKee on the symmetrized pattern of ``A``.

    Components are visited by increasing smallest vertex id; each one is
    numbered from a pseudo-peripheral vertex, neighbours by increasing
    degree, and the block of labels of the component is then reversed.
    Self loops are ignored.
    """
    n = A.n
    indptr, indices = _undirected_adjacency(A)
    indptr = indptr.tolist()
    indices = indices.tolist()
    deg = [indptr[i + 1] - indptr[i] for i in range(n)]
    placed = [False] * n
    stamps = [0] * n
    stamp = 1
    order: list[int] = []
    for root in range(n):
        if placed[root]:
            continue
        start, _, stamp = _pseudo_peripheral(root, indptr, indices, deg, stamps, stamp)
        comp = [start]
        placed[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            nbrs = [v for v in indices[indptr[u]:indptr[u + 1]] if not placed[v]]
            nbrs.sort(key=lambda v: (deg[v], v))
            for v in nbrs:
                placed[v] = True
                comp.append(v)
                queue.append(v)
        comp.reverse()
        order.extend(comp)
    return OrderingPermutation.from_order("RCM", order)


def make_ordering(A: SparseMatrix, kind: str) -> OrderingPermutation:
    kind = kind.upper()
    if kind == "NAT":
        return natural_order(A)
    if kind == "DEG":
        return degree_order(A)
    if kind == "RCM":
        return rcm_order(A)
    raise ValueError("unknown ordering %r (expected one of %s)" % (kind, ", ".join(ORDERINGS)))


def apply_ordering(A: SparseMatrix, order: OrderingPermutation) -> SparseMatrix:
    """Return ``P A P^T``: entry ``(u, v)`` of ``A`` moves to ``(perm[u], perm[v])``."""
    if order.n != A.n:
        raise DimensionError("ordering has size %d, matrix has %d" % (order.n, A.n))
    if order.kind == "NAT" or np.array_equal(order.perm, np.arange(A.n)):
        return A
    perm = order.perm
    return SparseMatrix.from_coo(A.n, perm[A.row_ids()], perm[A.col_indices], dedup=False)


def bandwidth(A: SparseMatrix) -> int:
    """Largest ``|row - col|`` over the stored entries (0 when empty)."""
    if A.nnz == 0:
        return 0
    return int(np.abs(A.row_ids() - A.col_indices).max())
