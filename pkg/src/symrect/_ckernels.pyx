# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rectangle-count kernels over the row-Fenwick prefix structure.

All ranges are half-open. ``node_cols[node_ptr[k]:node_ptr[k + 1]]`` holds
the sorted column indices of the rows covered by Fenwick node ``k``
(1-based, ``k = 1..n``).
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _lower(const int64_t* a, int64_t lo, int64_t hi, int64_t x) noexcept nogil:
    # number of entries of a[lo:hi] strictly below x
    cdef int64_t start = lo, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo - start


cdef inline int64_t _prefix(const int64_t* cols, const int64_t* ptr, int64_t r,
                            int64_t c_lo, int64_t c_hi) noexcept nogil:
    # entries in rows [0, r) and columns [c_lo, c_hi)
    cdef int64_t total = 0, a, b
    while r > 0:
        a = ptr[r]
        b = ptr[r + 1]
        total += _lower(cols, a, b, c_hi) - _lower(cols, a, b, c_lo)
        r -= r & (-r)
    return total


cdef inline int64_t _rect(const int64_t* cols, const int64_t* ptr, int64_t r_lo, int64_t r_hi,
                          int64_t c_lo, int64_t c_hi) noexcept nogil:
    if r_lo >= r_hi or c_lo >= c_hi:
        return 0
    return _prefix(cols, ptr, r_hi, c_lo, c_hi) - _prefix(cols, ptr, r_lo, c_lo, c_hi)


cdef int64_t _band_max(const int64_t* cols, const int64_t* ptr, const int64_t* cuts,
                       int64_t k, int64_t lo, int64_t hi) noexcept nogil:
    # max load over the tiles touching band k = [lo, hi), other bands from cuts[0..k]
    cdef int64_t best = _rect(cols, ptr, lo, hi, lo, hi), b, t
    for b in range(k):
        t = _rect(cols, ptr, lo, hi, cuts[b], cuts[b + 1])
        if t > best:
            best = t
        t = _rect(cols, ptr, cuts[b], cuts[b + 1], lo, hi)
        if t > best:
            best = t
    return best


cdef int64_t _beta(const int64_t* cols, const int64_t* ptr, const int64_t* cuts, int64_t i,
                   int64_t bound, int64_t cap, bint* ok) noexcept nogil:
    cdef int64_t lo = cuts[i - 1], a, b, mid
    if _band_max(cols, ptr, cuts, i - 1, lo, lo + 1) > bound:
        ok[0] = 0
        return lo + 1
    ok[0] = 1
    a = lo + 1
    b = cap
    while a < b:
        mid = (a + b + 1) >> 1
        if _band_max(cols, ptr, cuts, i - 1, lo, mid) <= bound:
            a = mid
        else:
            b = mid - 1
    return a


def rect_count(S, int64_t r_lo, int64_t r_hi, int64_t c_lo, int64_t c_hi):
    cdef const int64_t[::1] cols = S.node_cols
    cdef const int64_t[::1] ptr = S.node_ptr
    if cols.shape[0] == 0:
        return 0
    return _rect(&cols[0], &ptr[0], r_lo, r_hi, c_lo, c_hi)


def band_max(S, cuts, int64_t k, int64_t lo, int64_t hi):
    cdef const int64_t[::1] cols = S.node_cols
    cdef const int64_t[::1] ptr = S.node_ptr
    cdef const int64_t[::1] c = np.ascontiguousarray(cuts, dtype=np.int64)
    if cols.shape[0] == 0:
        return 0
    return _band_max(&cols[0], &ptr[0], &c[0], k, lo, hi)


def restricted_max(S, cuts, int64_t k):
    """Max load over tiles whose row and column bands are both among the first k."""
    cdef const int64_t[::1] cols = S.node_cols
    cdef const int64_t[::1] ptr = S.node_ptr
    cdef const int64_t[::1] c = np.ascontiguousarray(cuts, dtype=np.int64)
    cdef int64_t best = 0, t, a
    if cols.shape[0] == 0:
        return 0
    with nogil:
        for a in range(k):
            t = _band_max(&cols[0], &ptr[0], &c[0], a, c[a], c[a + 1])
            if t > best:
                best = t
    return best


def beta_search(S, cuts, int64_t i, int64_t bound, int64_t cap):
    cdef const int64_t[::1] cols = S.node_cols
    cdef const int64_t[::1] ptr = S.node_ptr
    cdef const int64_t[::1] c = np.ascontiguousarray(cuts, dtype=np.int64)
    cdef bint ok = 1
    cdef int64_t j
    if cols.shape[0] == 0:
        return int(cap), True
    with nogil:
        j = _beta(&cols[0], &ptr[0], &c[0], i, bound, cap, &ok)
    return int(j), bool(ok)


def probe_load(S, int64_t p, int64_t bound):
    """Greedy largest-cut probe with absolute tile bound; returns (ok, cuts)."""
    cdef const int64_t[::1] cols = S.node_cols
    cdef const int64_t[::1] ptr = S.node_ptr
    cdef int64_t n = S.n
    out = np.zeros(p + 1, dtype=np.int64)
    cdef int64_t[::1] c = out
    cdef int64_t i
    cdef bint ok = 1
    c[p] = n
    if cols.shape[0] == 0:
        for i in range(1, p):
            c[i] = n - p + i
        return True, out
    with nogil:
        for i in range(1, p):
            c[i] = _beta(&cols[0], &ptr[0], &c[0], i, bound, n - (p - i), &ok)
            if not ok:
                break
        if ok:
            ok = _band_max(&cols[0], &ptr[0], &c[0], p - 1, c[p - 1], n) <= bound
    if not ok:
        for i in range(1, p):
            if c[i] <= c[i - 1]:
                c[i] = c[i - 1] + 1
    return bool(ok), out


cdef void _merge(const int64_t* a, int64_t na, const int64_t* b, int64_t nb,
                 int64_t* out) noexcept nogil:
    cdef int64_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] <= b[j]:
            out[k] = a[i]
            i += 1
        else:
            out[k] = b[j]
            j += 1
        k += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1


def build_node_cols(row_offsets, col_indices, node_ptr):
    """Fill the Fenwick node arrays; node k = row k-1 merged with nodes
    k-1, k-2, k-4, ..., k-lowbit(k)/2."""
    cdef const int64_t[::1] ro = row_offsets
    cdef const int64_t[::1] ci = col_indices
    cdef const int64_t[::1] ptr = node_ptr
    cdef int64_t n = ro.shape[0] - 1
    out_arr = np.empty(ptr[n + 1] if n >= 0 else 0, dtype=np.int64)
    if out_arr.shape[0] == 0:
        return out_arr
    cdef int64_t[::1] out = out_arr
    tmp_arr = np.empty(out_arr.shape[0], dtype=np.int64)
    cdef int64_t[::1] tmp = tmp_arr
    cdef int64_t k, low, step, child, size, csize, r0, r1
    cdef int64_t* dst
    cdef int64_t* src
    cdef int64_t* swap
    with nogil:
        for k in range(1, n + 1):
            size = ptr[k + 1] - ptr[k]
            if size == 0:
                continue
            r0 = ro[k - 1]
            r1 = ro[k]
            # accumulate in tmp/out alternately so the last write lands in out
            low = k & (-k)
            step = 1
            csize = r1 - r0
            src = &tmp[ptr[k]]
            dst = &out[ptr[k]]
            # count merges to decide the starting buffer
            child = 0
            while step < low:
                if ptr[k - step + 1] > ptr[k - step]:
                    child += 1
                step <<= 1
            if child % 2 == 1:
                swap = src
                src = dst
                dst = swap
            for r1 in range(csize):
                dst[r1] = ci[r0 + r1]
            step = 1
            while step < low:
                child = k - step
                if ptr[child + 1] > ptr[child]:
                    _merge(dst, csize, &out[ptr[child]], ptr[child + 1] - ptr[child], src)
                    csize += ptr[child + 1] - ptr[child]
                    swap = src
                    src = dst
                    dst = swap
                step <<= 1
    return out_arr
