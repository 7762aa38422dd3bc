"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --scale 12 --parts 8

Times the Fenwick build, a batch of random rectangle queries, one probe,
and a full PTC search on an R-MAT graph under each available backend, and
checks that both backends produce the same cut vectors.
"""

import argparse
import statistics
import time

import numpy as np

from symrect import kernels
from symrect.mli import pbd, ptc_search
from symrect.prefix import build_prefix2d
from symrect.synthetic import rmat


def timed(fn, repeat):
    runs = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        runs.append(time.perf_counter() - t0)
    return min(runs), statistics.median(runs), out


def bench(A, parts, queries, repeat, seed):
    rng = np.random.default_rng(seed)
    rects = np.sort(rng.integers(0, A.n + 1, size=(queries, 2, 2)), axis=2)
    rows = {}
    cuts = {}
    for name in sorted(kernels.backends()):
        kernels.set_backend(name)
        t_build, _, S = timed(lambda: build_prefix2d(A), repeat)

        def query():
            return sum(S.count(int(r[0, 0]), int(r[0, 1]), int(r[1, 0]), int(r[1, 1]))
                       for r in rects)

        t_query, _, total = timed(query, repeat)
        thr = A.nnz // (parts * parts) * 2
        t_probe, _, _ = timed(lambda: kernels.probe_load(S, parts, thr), repeat)
        t_ptc, _, res = timed(lambda: ptc_search(A, parts, S), repeat)
        rows[name] = (t_build, t_query, t_probe, t_ptc, total)
        cuts[name] = res.cuts
    kernels.set_backend("cython" if "cython" in kernels.backends() else "python")
    t_pbd, _, _ = timed(lambda: pbd(A, parts), repeat)
    return rows, cuts, t_pbd


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=int, default=12)
    ap.add_argument("--edge-factor", type=int, default=16)
    ap.add_argument("--parts", type=int, default=8)
    ap.add_argument("--queries", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    A = rmat(args.scale, args.edge_factor, seed=args.seed)
    print(f"R-MAT scale {args.scale}: n={A.n} nnz={A.nnz} p={args.parts} "
          f"(best of {args.repeat})")
    rows, cuts, t_pbd = bench(A, args.parts, args.queries, args.repeat, args.seed)
    head = f"{'backend':<8} {'build ms':>10} {'queries ms':>11} {'probe ms':>10} {'ptc ms':>10}"
    print(head)
    for name, (tb, tq, tp, tt, _) in rows.items():
        print(f"{name:<8} {tb * 1e3:>10.1f} {tq * 1e3:>11.1f} {tp * 1e3:>10.2f} {tt * 1e3:>10.1f}")
    if len(rows) == 2:
        c, p = rows["cython"], rows["python"]
        print("speedup  " + "  ".join(f"{p[k] / c[k]:>9.1f}x" for k in range(4)))
        same = np.array_equal(cuts["cython"], cuts["python"]) and c[4] == p[4]
        print("backends agree:", same)
    print(f"pbd (default backend) {t_pbd * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
