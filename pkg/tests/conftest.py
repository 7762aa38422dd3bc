import numpy as np
import pytest

from symrect import kernels
from symrect.sparse import SparseMatrix
from symrect.synthetic import random_matrix


def random_fixture(seed, n_range=(8, 16), density_range=(0.05, 0.4)):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    density = float(rng.uniform(*density_range))
    return random_matrix(n, density, seed=rng.integers(1 << 31))


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Run a test once per available kernel backend."""
    prev = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(prev)


@pytest.fixture
def identity8():
    return SparseMatrix.from_dense(np.eye(8, dtype=int))


@pytest.fixture(scope="session")
def small_suite():
    """Random matrices with n in [8, 16], nonempty."""
    out = []
    seed = 0
    while len(out) < 20:
        A = random_fixture(seed)
        seed += 1
        if A.nnz:
            out.append(A)
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
