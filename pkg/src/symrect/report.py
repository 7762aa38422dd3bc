"""Partition reports, tile density grids and performance profiles."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .metrics import tile_loads

SCHEMA = 1

__all__ = [
    "PartitionReport",
    "ProfileError",
    "make_report",
    "density_grid",
    "density_csv",
    "density_table",
    "performance_profile",
    "profile_csv",
    "reports_csv",
]


@dataclass
class PartitionReport:
    algorithm: str
    ordering: str
    p: int
    q: int
    col_cuts: list
    row_cuts: list
    lam: float
    L_max: int
    L_avg: str
    tile_loads: list
    input: dict
    kind: str = "partition"
    flags: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    schema: int = SCHEMA

    @property
    def instance_key(self) -> str:
        return "%s|%s|p=%d" % (self.input.get("name", "?"), self.ordering, self.p)

    @property
    def symmetric(self) -> bool:
        return self.col_cuts == self.row_cuts

    def recompute_lambda(self) -> float:
        loads = np.asarray(self.tile_loads, dtype=np.int64)
        nnz = int(loads.sum())
        if nnz == 0:
            return 0.0
        return float(Fraction(int(loads.max()) * loads.size, nnz) - 1)

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("timing")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "PartitionReport":
        if d.get("schema") != SCHEMA:
            raise ValueError("unsupported report schema %r" % d.get("schema"))
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "PartitionReport":
        return cls.from_dict(json.loads(text))

    def csv_row(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "ordering": self.ordering,
            "input": self.input.get("name", ""),
            "n": self.input.get("n", ""),
            "nnz": self.input.get("nnz", ""),
            "p": self.p,
            "q": self.q,
            "lambda": "%.6f" % self.lam,
            "L_max": self.L_max,
            "L_avg": "%.6f" % float(Fraction(self.L_avg)),
            "col_cuts": " ".join(map(str, self.col_cuts)),
            "row_cuts": " ".join(map(str, self.row_cuts)),
            "wall_ms": "%.3f" % self.timing.get("wall_ms", float("nan")),
        }


def reports_csv(reports: Sequence[PartitionReport]) -> str:
    buf = io.StringIO()
    rows = [r.csv_row() for r in reports]
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def make_report(A, algorithm: str, ordering: str, col_cuts, row_cuts=None, *,
                input_info: dict, kind: str = "partition", flags: dict | None = None,
                extra: dict | None = None, wall_ms: float | None = None) -> PartitionReport:
    row_cuts = col_cuts if row_cuts is None else row_cuts
    tl = tile_loads(A, col_cuts, row_cuts)
    L_avg = tl.L_avg
    return PartitionReport(
        algorithm=algorithm,
        ordering=ordering,
        p=len(row_cuts) - 1,
        q=len(col_cuts) - 1,
        col_cuts=[int(c) for c in col_cuts],
        row_cuts=[int(c) for c in row_cuts],
        lam=tl.lam,
        L_max=tl.L_max,
        L_avg="%d/%d" % (L_avg.numerator, L_avg.denominator),
        tile_loads=tl.loads.tolist(),
        input=dict(input_info),
        kind=kind,
        flags=dict(flags or {}),
        extra=dict(extra or {}),
        timing={} if wall_ms is None else {"wall_ms": wall_ms},
    )


# ---------------------------------------------------------------------------
# density maps


def density_grid(loads) -> np.ndarray:
    """Tile loads as percentages of all nonzeros."""
    loads = np.asarray(loads, dtype=np.float64)
    total = loads.sum()
    if total == 0:
        return np.zeros_like(loads)
    return loads * (100.0 / total)


def density_csv(grid) -> str:
    """Header of column-band indices, then one line per row band."""
    grid = np.asarray(grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["band"] + list(range(grid.shape[1])))
    for i, row in enumerate(grid):
        w.writerow([i] + ["%.4f" % v for v in row])
    return buf.getvalue()


_SHADES = " .:-=+*#%@"


def density_table(grid) -> str:
    """Aligned text heat table, each cell with a shade glyph and percentage."""
    grid = np.asarray(grid, dtype=np.float64)
    top = grid.max() if grid.size else 0.0
    width = 8
    lines = ["     " + "".join(f"{j:>{width}}" for j in range(grid.shape[1]))]
    for i, row in enumerate(grid):
        cells = []
        for v in row:
            level = 0 if top <= 0 else min(int(v / top * (len(_SHADES) - 1) + 0.5), len(_SHADES) - 1)
            cells.append(f"{_SHADES[level]}{v:>{width - 1}.2f}")
        lines.append(f"{i:>4} " + "".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# performance profiles


class ProfileError(ValueError):
    pass


DEFAULT_X_GRID = (1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0)


def performance_profile(results: Iterable[tuple[str, str, float]],
                        x_grid: Sequence[float] = DEFAULT_X_GRID) -> dict:
    """Fraction of instances where each algorithm is within ``x`` of the best.

    Parameters
    ----------
    results : iterable of (instance, algorithm, value)
        Lower values are better.
    x_grid : sequence of float
        Ratios at which to evaluate the profile.

    Returns
    -------
    dict
        ``{algorithm: [(x, fraction), ...]}``
    """
    table: dict[str, dict[str, float]] = {}
    for inst, algo, val in results:
        table.setdefault(algo, {})[inst] = float(val)
    if not table:
        raise ProfileError("no results")
    instances = set().union(*(set(v) for v in table.values()))
    missing = []
    for algo in sorted(table):
        for inst in sorted(instances - set(table[algo])):
            missing.append(f"{algo}:{inst}")
    if missing:
        raise ProfileError("missing results for " + ", ".join(missing))
    best = {i: min(table[a][i] for a in table) for i in instances}
    out = {}
    for algo in sorted(table):
        pts = []
        for x in x_grid:
            hits = sum(
                1 for i in instances
                if table[algo][i] <= x * best[i] + 1e-12 * max(1.0, abs(best[i]))
            )
            pts.append((float(x), hits / len(instances)))
        out[algo] = pts
    return out


def profile_csv(profile: dict) -> str:
    algos = sorted(profile)
    xs = [x for x, _ in profile[algos[0]]]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x"] + algos)
    for k, x in enumerate(xs):
        w.writerow([_fmt(x)] + ["%.4f" % profile[a][k][1] for a in algos])
    return buf.getvalue()


def _fmt(x: float) -> str:
    return ("%g" % x) if math.isfinite(x) else str(x)
