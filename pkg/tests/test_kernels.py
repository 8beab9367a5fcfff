import math

import numpy as np
import pytest

from capbif import _kernels
from capbif._backend import ACTIVE_BACKEND, HAS_NUMBA


def _shoot_args(n, m, lam, gamma):
    from capbif.spectrum import (
        MAX_STEPS,
        ODE_ATOL,
        ODE_RTOL,
        RENORM_LIMIT,
        SERIES_EPS,
        RadialProblem,
        _series_start,
    )

    problem = RadialProblem(n, m, gamma)
    T0, P0 = _series_start(problem, lam)
    max_step = min(0.05, 1.0 / math.sqrt(max(lam, 1.0)))
    return (
        float(n - 1),
        float(problem.beta),
        float(lam),
        SERIES_EPS,
        float(gamma),
        T0,
        P0,
        ODE_RTOL,
        ODE_ATOL,
        RENORM_LIMIT,
        max_step,
        MAX_STEPS,
    )


CASES = [
    (2, 0, 11.5, math.pi / 2),
    (2, 1, 6.0, math.pi / 2),
    (3, 2, 25.0, math.pi / 4),
    (4, 0, 3.7, 2.0),
    (5, 3, 55.0, 1.1),
]


@pytest.mark.skipif(not HAS_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("n,m,lam,gamma", CASES)
def test_shoot_backend_parity(n, m, lam, gamma):
    args = _shoot_args(n, m, lam, gamma)
    T1, P1, c1, r1, s1, t1 = _kernels.shoot_rk45_py(*args)
    T2, P2, c2, r2, s2, t2 = _kernels.shoot_rk45_nb(*args)
    assert (c1, s1) == (c2, s2)
    assert r1 == r2
    assert T2 == pytest.approx(T1, rel=1e-9, abs=1e-12)
    assert P2 == pytest.approx(P1, rel=1e-9, abs=1e-12)
    assert t1 == t2 == gamma


def test_shoot_statuses_ok():
    for case in CASES:
        *_, status, _ = _kernels.shoot_rk45_py(*_shoot_args(*case))
        assert status == _kernels.SHOOT_OK


def test_shoot_step_budget_exhaustion():
    args = list(_shoot_args(2, 0, 11.5, math.pi / 2))
    args[-1] = 10  # max_steps far too small
    *_, status, t = _kernels.shoot_rk45_py(*args)
    assert status == _kernels.SHOOT_STEP_BUDGET
    assert t < math.pi / 2


def _random_matrix(rng, K, W):
    return rng.integers(-5, 6, size=(K, W), dtype=np.int64)


def test_subset_flags_loop_vs_matmul():
    rng = np.random.default_rng(7)
    for K, W in [(1, 1), (3, 2), (8, 5), (12, 7), (16, 9)]:
        mat = _random_matrix(rng, K, W)
        loop = np.asarray(_kernels.subset_zero_flags_loop_py(mat)).astype(bool)
        mm = np.asarray(_kernels.subset_zero_flags_matmul(mat)).astype(bool)
        assert loop.shape == mm.shape == (1 << K,)
        assert (loop == mm).all()


@pytest.mark.skipif(not HAS_NUMBA, reason="numba unavailable")
def test_subset_flags_numba_matches():
    rng = np.random.default_rng(11)
    mat = _random_matrix(rng, 14, 6)
    nb = np.asarray(_kernels.subset_zero_flags_nb(mat)).astype(bool)
    mm = np.asarray(_kernels.subset_zero_flags_matmul(mat)).astype(bool)
    assert (nb == mm).all()


def test_subset_flags_known_cancellation():
    # rows 0 and 1 cancel exactly; nothing else does
    mat = np.array([[2, -1], [-2, 1], [5, 5]], dtype=np.int64)
    flags = np.asarray(_kernels.subset_zero_flags_matmul(mat)).astype(bool)
    expect = np.zeros(8, dtype=bool)
    expect[0b000] = True
    expect[0b011] = True
    assert (flags == expect).all()


def test_subset_sums_explicit_masks():
    mat = np.array([[1, 0, 2], [0, -1, 1], [3, 3, 3]], dtype=np.int64)
    masks = np.array([0b000, 0b101, 0b111], dtype=np.int64)
    sums = _kernels.subset_sums(mat, masks)
    assert (sums[0] == [0, 0, 0]).all()
    assert (sums[1] == [4, 3, 5]).all()
    assert (sums[2] == [4, 2, 6]).all()


def test_active_backend_consistency():
    if ACTIVE_BACKEND == "numba":
        assert _kernels.shoot_rk45 is _kernels.shoot_rk45_nb
    else:
        assert _kernels.shoot_rk45 is _kernels.shoot_rk45_py
        assert _kernels.subset_zero_flags is _kernels.subset_zero_flags_matmul
