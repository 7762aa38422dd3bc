import numpy as np
import pytest

from symrect.metrics import brute_force_symmetric, lower_bound_parts, tile_loads, uni
from symrect.mli import pbd
from symrect.mnc import btl, find_upper_bound, initial_upper_bound, ptl
from symrect.sparse import SparseMatrix
from symrect.synthetic import random_matrix

EYE8 = SparseMatrix.from_dense(np.eye(8, dtype=int))
MNC = [lambda A, Z: btl(A, Z, "pbd"), lambda A, Z: btl(A, Z, "pbi"), ptl]
IDS = ["btl-pbd", "btl-pbi", "ptl"]


def oracle_min_parts(A, Z, max_p=5):
    """Fewest symmetric intervals reaching max tile load <= Z, by enumeration."""
    for p in range(1, max_p + 1):
        cuts, _ = brute_force_symmetric(A, p)
        if tile_loads(A, cuts).L_max <= Z:
            return p
    return max_p + 1


def test_find_upper_bound_identity():
    assert find_upper_bound(EYE8, 2, 1, 8, uni) == 4


def test_find_upper_bound_loose():
    A = random_matrix(10, 0.3, seed=1)
    assert find_upper_bound(A, A.nnz, 1, 10, uni) == 1


@pytest.mark.parametrize("seed", range(6))
def test_find_upper_bound_vs_linear_scan(seed):
    A = random_matrix(32, 0.1, seed=seed)
    Z = int(np.random.default_rng(seed).integers(3, 15))
    got = find_upper_bound(A, Z, 1, 32, uni)
    feasible = [p for p in range(1, 33) if tile_loads(A, uni(A, p)).L_max <= Z]
    assert got in feasible
    # the bisection plus short scan stops at the smallest feasible p
    # whenever feasibility is monotone from there up
    first = feasible[0]
    if all(p in feasible for p in range(first, 33)):
        assert got == first


def test_find_upper_bound_cache_and_range():
    calls = []

    def f(A, p):
        calls.append(p)
        return uni(A, p)

    cache = {}
    find_upper_bound(EYE8, 2, 1, 8, f, cache=cache)
    assert len(calls) == len(set(calls)) == len(cache)
    with pytest.raises(ValueError):
        find_upper_bound(EYE8, 2, 3, 2, uni)


def test_initial_upper_bound():
    assert initial_upper_bound(8, 2) == 6  # ceil(8 / 1.414)
    assert initial_upper_bound(8, 64) == 1
    assert initial_upper_bound(8, 1) == 8
    assert initial_upper_bound(0, 3) == 1


@pytest.mark.parametrize("algo", MNC, ids=IDS)
def test_identity_z2(algo):
    res = algo(EYE8, 2)
    assert res.p == 4 and res.bound_satisfied
    assert res.cuts.tolist() == [0, 2, 4, 6, 8]


@pytest.mark.parametrize("algo", MNC, ids=IDS)
def test_z_at_least_nnz(algo):
    A = random_matrix(12, 0.3, seed=2)
    for Z in (A.nnz, A.nnz + 5):
        res = algo(A, Z)
        assert res.p == 1 and res.cuts.tolist() == [0, 12]


def test_ptl_empty_matrix():
    res = ptl(SparseMatrix.from_coo(5, [], []), 1)
    assert res.cuts.tolist() == [0, 5] and res.bound_satisfied


@pytest.mark.parametrize("algo", MNC, ids=IDS)
def test_bad_z(algo):
    with pytest.raises(ValueError):
        algo(EYE8, 0)


def test_btl_bad_inner():
    with pytest.raises(ValueError):
        btl(EYE8, 2, "ptc")


def test_ptl_unit_steps():
    A = SparseMatrix.from_dense(np.ones((4, 4), dtype=int))
    res = ptl(A, 1)
    assert res.cuts.tolist() == [0, 1, 2, 3, 4] and res.forced_steps == 0


def test_ptl_forced_step_reports_flag():
    # the first band greedily swallows rows 0..2, leaving their column-3
    # entries in one tile that no later cut can split
    A = SparseMatrix.from_coo(4, [0, 1, 2], [3, 3, 3])
    res = ptl(A, 2)
    assert res.cuts.tolist() == [0, 3, 4]
    assert res.forced_steps == 1
    assert res.max_tile_load == 3 and not res.bound_satisfied
    # a non-greedy vector does fit, so this is the heuristic, not the input
    assert tile_loads(A, [0, 2, 4]).L_max <= 2


def _suite():
    out = []
    for seed in range(15):
        A = random_matrix(int(8 + seed % 9), 0.2 + 0.02 * seed, seed=seed)
        if A.nnz:
            for frac in (4, 8):
                out.append((A, max(1, A.nnz // frac)))
    return out


@pytest.mark.parametrize("algo", MNC, ids=IDS)
def test_lower_bound_and_tile_scan(algo):
    for A, Z in _suite():
        res = algo(A, Z)
        assert res.p >= lower_bound_parts(A.nnz, Z)
        assert np.all(np.diff(res.cuts) > 0) and res.cuts[-1] == A.n
        dense = A.to_dense()
        c = res.cuts
        scan = max(int(dense[c[a]:c[a + 1], c[b]:c[b + 1]].sum())
                   for a in range(res.p) for b in range(res.p))
        assert scan == res.max_tile_load
        if res.bound_satisfied:
            assert scan <= Z


@pytest.mark.parametrize("algo", MNC, ids=IDS)
@pytest.mark.parametrize("seed", range(4))
def test_not_below_oracle(algo, seed):
    A = random_matrix(16, 0.2, seed=seed)
    cuts, _ = brute_force_symmetric(A, 3)
    Z = tile_loads(A, cuts).L_max
    res = algo(A, Z)
    if res.bound_satisfied:
        assert res.p >= oracle_min_parts(A, Z)


@pytest.mark.parametrize("seed", range(5))
def test_ptl_greedy_steps_are_maximal(seed):
    A = random_matrix(20, 0.2, seed=seed)
    Z = max(1, A.nnz // 6)
    res = ptl(A, Z)
    dense = A.to_dense()
    c = res.cuts.tolist()

    def band_ok(prefix, j):
        cuts = prefix + [j]
        i = len(prefix)
        return all(int(dense[cuts[a]:cuts[a + 1], cuts[i - 1]:j].sum()) <= Z and
                   int(dense[cuts[i - 1]:j, cuts[a]:cuts[a + 1]].sum()) <= Z
                   for a in range(i))

    for i in range(1, len(c) - 1):
        assert not band_ok(c[:i], c[i] + 1)


@pytest.mark.parametrize("seed", range(4))
def test_ptl_monotone_in_z_on_fixture(seed):
    A = random_matrix(24, 0.2, seed=seed)
    ps = [ptl(A, Z).p for Z in range(2, A.nnz + 1, max(1, A.nnz // 10))]
    # looser bounds never need more intervals on these fixtures
    assert ps == sorted(ps, reverse=True)


def test_btl_uses_inner_heuristic():
    A = random_matrix(16, 0.3, seed=9)
    Z = A.nnz // 6
    res = btl(A, Z, "pbd")
    assert np.array_equal(res.cuts, pbd(A, res.p))
