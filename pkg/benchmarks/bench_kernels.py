"""Head-to-head timing of the compiled kernels against the numpy fallback.

Covers the two hot loops: the pairwise-complete correlation distance scan
(dominates offline precompute when cells are missing) and the 2-opt sweep
(runs on every slider interaction). The complete-data BLAS path is timed
as a reference since it bypasses both backends.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from dimscope.kernels import _numpy
from dimscope.metrics import _complete_case_rho

try:
    from dimscope.kernels import _native
except ImportError:
    _native = None


def timed(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_pairwise(m, n, missing_frac, rng):
    values = rng.standard_normal((m, n))
    values[rng.random((m, n)) < missing_frac] = np.nan
    print(f"\npairwise_complete_spearman: {m} items x {n} dims, "
          f"{missing_frac:.0%} missing ({n * (n - 1) // 2} pairs)")

    t_py, rho_py = timed(_numpy.pairwise_complete_spearman, values, repeats=1)
    print(f"  python backend: {t_py:8.3f}s")
    if _native is not None:
        t_nat, rho_nat = timed(_native.pairwise_complete_spearman, values)
        agree = np.allclose(rho_py, rho_nat, atol=1e-12, equal_nan=True)
        print(f"  native backend: {t_nat:8.3f}s   speedup x{t_py / t_nat:.1f}   agree={agree}")

    if missing_frac == 0.0:
        t_blas, _ = timed(_complete_case_rho, values)
        print(f"  complete-data BLAS path: {t_blas:8.3f}s (used automatically when nothing is missing)")


def bench_two_opt(n, rng):
    pts = rng.random((n, 2))
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    print(f"\ntwo_opt_pass to local optimum: {n} axes")

    def run(backend):
        order = np.arange(n, dtype=np.int64)
        passes = 0
        t0 = time.perf_counter()
        while backend.two_opt_pass(order, d, False, False) > 0.0:
            passes += 1
        return time.perf_counter() - t0, passes, order

    t_py, p_py, o_py = run(_numpy)
    print(f"  python backend: {t_py:8.3f}s ({p_py} passes)")
    if _native is not None:
        t_nat, p_nat, o_nat = run(_native)
        print(f"  native backend: {t_nat:8.3f}s ({p_nat} passes)   "
              f"speedup x{t_py / t_nat:.1f}   same-order={o_py.tolist() == o_nat.tolist()}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller instances")
    args = parser.parse_args()

    if _native is None:
        print("native kernels not built; showing the python backend only")

    rng = np.random.default_rng(7)
    if args.quick:
        bench_pairwise(300, 120, 0.05, rng)
        bench_pairwise(300, 120, 0.0, rng)
        bench_two_opt(60, rng)
    else:
        bench_pairwise(933, 400, 0.05, rng)
        bench_pairwise(933, 400, 0.0, rng)
        bench_two_opt(120, rng)


if __name__ == "__main__":
    main()
