"""Pure-Python versions of the rectangle-count kernels.

Mirrors ``_ckernels`` function for function; used when the extension is
not built or ``SYMRECT_PURE_PYTHON`` is set.
"""

from bisect import bisect_left

import numpy as np


def build_node_cols(row_offsets, col_indices, node_ptr):
    """Fill the Fenwick node arrays with one segmented sort."""
    n = row_offsets.size - 1
    k = np.arange(1, n + 1, dtype=np.int64)
    first_row = k - (k & -k)
    sizes = np.diff(node_ptr[1:])
    total = int(node_ptr[-1])
    node_ids = np.repeat(k, sizes)
    within = np.arange(total, dtype=np.int64) - np.repeat(node_ptr[1:-1], sizes)
    vals = col_indices[np.repeat(row_offsets[first_row], sizes) + within]
    return vals[np.lexsort((vals, node_ids))]


def _lists(S):
    cached = S._py_cache
    if not cached:
        cached.extend([S.node_cols.tolist(), S.node_ptr.tolist()])
    return cached


def _rect(cols, ptr, r_lo, r_hi, c_lo, c_hi):
    if r_lo >= r_hi or c_lo >= c_hi:
        return 0
    total = 0
    r = r_hi
    while r > 0:
        a, b = ptr[r], ptr[r + 1]
        total += bisect_left(cols, c_hi, a, b) - bisect_left(cols, c_lo, a, b)
        r -= r & -r
    r = r_lo
    while r > 0:
        a, b = ptr[r], ptr[r + 1]
        total -= bisect_left(cols, c_hi, a, b) - bisect_left(cols, c_lo, a, b)
        r -= r & -r
    return total


def _band_max(cols, ptr, cuts, k, lo, hi):
    best = _rect(cols, ptr, lo, hi, lo, hi)
    for b in range(k):
        c0, c1 = cuts[b], cuts[b + 1]
        t = _rect(cols, ptr, lo, hi, c0, c1)
        if t > best:
            best = t
        t = _rect(cols, ptr, c0, c1, lo, hi)
        if t > best:
            best = t
    return best


def _beta(cols, ptr, cuts, i, bound, cap):
    lo = cuts[i - 1]
    if _band_max(cols, ptr, cuts, i - 1, lo, lo + 1) > bound:
        return lo + 1, False
    a, b = lo + 1, cap
    while a < b:
        mid = (a + b + 1) >> 1
        if _band_max(cols, ptr, cuts, i - 1, lo, mid) <= bound:
            a = mid
        else:
            b = mid - 1
    return a, True


def rect_count(S, r_lo, r_hi, c_lo, c_hi):
    cols, ptr = _lists(S)
    return _rect(cols, ptr, int(r_lo), int(r_hi), int(c_lo), int(c_hi))


def band_max(S, cuts, k, lo, hi):
    cols, ptr = _lists(S)
    return _band_max(cols, ptr, [int(c) for c in cuts], int(k), int(lo), int(hi))


def restricted_max(S, cuts, k):
    """Max load over tiles whose row and column bands are both among the first k."""
    cols, ptr = _lists(S)
    cuts = [int(c) for c in cuts]
    best = 0
    for a in range(int(k)):
        t = _band_max(cols, ptr, cuts, a, cuts[a], cuts[a + 1])
        if t > best:
            best = t
    return best


def beta_search(S, cuts, i, bound, cap):
    cols, ptr = _lists(S)
    if not cols:
        return int(cap), True
    return _beta(cols, ptr, [int(c) for c in cuts], int(i), int(bound), int(cap))


def probe_load(S, p, bound):
    """Greedy largest-cut probe with absolute tile bound; returns (ok, cuts)."""
    cols, ptr = _lists(S)
    n = S.n
    c = [0] * (p + 1)
    c[p] = n
    if not cols:
        return True, np.array([0] + [n - p + i for i in range(1, p)] + [n], dtype=np.int64)
    ok = True
    for i in range(1, p):
        c[i], ok = _beta(cols, ptr, c, i, bound, n - (p - i))
        if not ok:
            break
    if ok:
        ok = _band_max(cols, ptr, c, p - 1, c[p - 1], n) <= bound
    else:
        for i in range(1, p):
            if c[i] <= c[i - 1]:
                c[i] = c[i - 1] + 1
    return ok, np.array(c, dtype=np.int64)
