"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call (compilation) is excluded from the timings.
"""
import argparse
import timeit

import numpy as np

from entangled_gup import kernels
from entangled_gup._accel import HAVE_NUMBA


def cases(rng):
    n = 512
    rho = rng.random((n, n))
    axis = np.linspace(-32.0, 32.0, n, endpoint=False)
    momenta = rng.uniform(-1.0, 1.0, size=(100_000, 8))
    weights = rng.dirichlet(np.ones(8), size=100_000)
    values = rng.normal(size=1_000_000)
    return {
        "grid_moments 512x512": (
            lambda: kernels._grid_moments_numba(rho, axis, axis),
            lambda: kernels._grid_moments_numpy(rho, axis, axis),
        ),
        "factor_averages 1e5x8 exp": (
            lambda: kernels._factor_averages_numba(momenta, weights, kernels.EXP, 0.5),
            lambda: kernels._factor_averages_numpy(momenta, weights, kernels.EXP, 0.5),
        ),
        "pairwise_sum 1e6": (
            lambda: kernels._pairwise_sum_numba(values),
            lambda: kernels._pairwise_sum_numpy(values),
        ),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        print("numba not importable: the *_numba kernels are plain python, timings are not meaningful")
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, (fast, slow) in cases(rng).items():
        fast()  # compile
        t_fast = min(timeit.repeat(fast, number=1, repeat=args.repeat)) * 1e3
        t_slow = min(timeit.repeat(slow, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:28s} {t_fast:10.2f} {t_slow:10.2f} {t_slow / t_fast:8.1f}")


if __name__ == "__main__":
    main()
