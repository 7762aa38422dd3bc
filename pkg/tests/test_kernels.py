import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrect import kernels
from symrect.prefix import DensePrefix2D, build_prefix2d
from symrect.synthetic import random_matrix

IMPLS = kernels.backends()
needs_both = pytest.mark.skipif(len(IMPLS) < 2, reason="compiled kernels not built")


def test_backend_name():
    assert kernels.BACKEND in IMPLS


def _setup(seed, n, density):
    A = random_matrix(n, density, seed=seed)
    return A, build_prefix2d(A)


@needs_both
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(1, 24), density=st.floats(0, 0.6))
def test_rect_count_parity(seed, n, density):
    A, S = _setup(seed, n, density)
    D = DensePrefix2D(A)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        r0, r1 = sorted(rng.integers(0, n + 1, 2))
        c0, c1 = sorted(rng.integers(0, n + 1, 2))
        want = D.count(r0, r1, c0, c1)
        for impl in IMPLS.values():
            assert impl.rect_count(S, int(r0), int(r1), int(c0), int(c1)) == want


@needs_both
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(2, 24), density=st.floats(0.02, 0.6),
       p=st.integers(1, 6), thr=st.integers(0, 30))
def test_probe_and_beta_parity(seed, n, density, p, thr):
    A, S = _setup(seed, n, density)
    p = min(p, n)
    results = [impl.probe_load(S, p, thr) for impl in IMPLS.values()]
    assert results[0][0] == results[1][0]
    assert np.array_equal(results[0][1], results[1][1])
    cuts = results[0][1]
    for i in range(1, p + 1):
        got = {name: impl.beta_search(S, cuts[:i].copy(), i, thr, n)
               for name, impl in IMPLS.items()}
        assert got["python"] == got["cython"]
        got = {name: impl.restricted_max(S, cuts, i) for name, impl in IMPLS.items()}
        assert got["python"] == got["cython"]


@needs_both
@pytest.mark.parametrize("seed", range(5))
def test_build_parity(seed):
    A = random_matrix(50, 0.08, seed=seed)
    S = build_prefix2d(A)
    for impl in IMPLS.values():
        assert np.array_equal(impl.build_node_cols(A.row_offsets, A.col_indices, S.node_ptr),
                              S.node_cols)


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_probe_empty_matrix(name):
    A, S = _setup(0, 6, 0.0)
    ok, cuts = IMPLS[name].probe_load(S, 3, 0)
    assert ok and cuts.tolist() == [0, 4, 5, 6]


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_band_max_matches_dense(name):
    A, S = _setup(3, 14, 0.3)
    D = DensePrefix2D(A)
    cuts = np.array([0, 3, 7, 10, 14], dtype=np.int64)
    k = 3
    want = max(max(D.count(cuts[a], cuts[a + 1], cuts[k - 1], cuts[k]),
                   D.count(cuts[k - 1], cuts[k], cuts[a], cuts[a + 1])) for a in range(k))
    assert IMPLS[name].band_max(S, cuts, k, int(cuts[k - 1]), int(cuts[k])) == want
