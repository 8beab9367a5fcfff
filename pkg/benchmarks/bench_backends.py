"""Timing comparison of the compiled and plain kernel paths.

Run as `python3 benchmarks/bench_backends.py`.  The compiled rows need
numba; without it only the plain rows print.  Numbers are medians over
`--repeat` timed batches after a warmup call (which also absorbs the
one-time compilation).
"""

import argparse
import math
import statistics
import time

import numpy as np

from capbif import _kernels
from capbif._backend import HAS_NUMBA
from capbif.spectrum import (
    MAX_STEPS,
    ODE_ATOL,
    ODE_RTOL,
    RENORM_LIMIT,
    SERIES_EPS,
    RadialProblem,
    _series_start,
)


def shoot_args(n, m, lam, gamma):
    problem = RadialProblem(n, m, gamma)
    T0, P0 = _series_start(problem, lam)
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
        min(0.05, 1.0 / math.sqrt(max(lam, 1.0))),
        MAX_STEPS,
    )


def bench(fn, args_list, repeat):
    fn(*args_list[0])  # warmup / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_single(fn, arg, repeat):
    fn(arg)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--shots", type=int, default=120)
    parser.add_argument("--subset-bits", type=int, default=18)
    args = parser.parse_args()

    rng = np.random.default_rng(3)
    lams = rng.uniform(1.0, 60.0, size=args.shots)
    shot_args = [shoot_args(3, int(i % 4), lam, 1.2) for i, lam in enumerate(lams)]

    print(f"radial shooting, {args.shots} integrations per batch:")
    t_py = bench(_kernels.shoot_rk45_py, shot_args, args.repeat)
    print(f"  plain python   {t_py * 1e3:9.1f} ms")
    if HAS_NUMBA:
        t_nb = bench(_kernels.shoot_rk45_nb, shot_args, args.repeat)
        print(f"  numba compiled {t_nb * 1e3:9.1f} ms   ({t_py / t_nb:5.1f}x)")

    K = args.subset_bits
    mat = rng.integers(-4, 5, size=(K, 10)).astype(np.int64)
    print(f"subset zero scan over 2^{K} masks:")
    t_loop = bench_single(_kernels.subset_zero_flags_loop_py, mat, args.repeat)
    print(f"  plain loop     {t_loop * 1e3:9.1f} ms")
    t_mm = bench_single(_kernels.subset_zero_flags_matmul, mat, args.repeat)
    print(f"  numpy matmul   {t_mm * 1e3:9.1f} ms   ({t_loop / t_mm:5.1f}x)")
    if HAS_NUMBA:
        t_nb = bench_single(_kernels.subset_zero_flags_nb, mat, args.repeat)
        print(f"  numba loop     {t_nb * 1e3:9.1f} ms   ({t_loop / t_nb:5.1f}x)")


if __name__ == "__main__":
    main()
