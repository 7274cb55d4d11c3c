"""Benchmark the compiled kernels against the pure-Python fallback.

Both backends produce bit-identical results (the test suite enforces
this); the benchmark quantifies what the extension buys on the three hot
paths: all-pairs minimum chain sums, the regularity triple scan, and the
brute-force chain enumeration.

Usage:
    python benchmarks/bench_kernels.py [--sizes 8,16,32] [--repeats 5]
"""

import argparse
import time

import numpy as np

from fmetric import _pykernels

try:
    from fmetric import _ckernels
except ImportError:
    _ckernels = None


def random_matrix(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.random((n, n))
    m = m + m.T
    np.fill_diagonal(m, 0.0)
    return m


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(name, py_fn, c_fn, repeats):
    t_py = best_of(py_fn, repeats)
    if c_fn is None:
        print(f"{name:<44} {t_py * 1e3:>10.3f} ms {'n/a':>12} {'n/a':>9}")
        return
    t_c = best_of(c_fn, repeats)
    print(f"{name:<44} {t_py * 1e3:>10.3f} ms {t_c * 1e3:>9.3f} ms "
          f"{t_py / t_c:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="8,16,32,64",
                        help="comma-separated matrix sizes for the FW/scan cases")
    parser.add_argument("--bf-size", type=int, default=7,
                        help="points for the brute-force case (chains grow fast)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="repeats per case; the best time is reported")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _ckernels is None:
        print("compiled kernels unavailable; timing the fallback only\n")
    print(f"{'case':<44} {'python':>13} {'compiled':>12} {'speedup':>9}")

    for n in sizes:
        m = random_matrix(n, seed=n)
        bench_case(f"floyd_warshall          n={n:<4}",
                   lambda m=m: _pykernels.floyd_warshall(m),
                   (lambda m=m: _ckernels.floyd_warshall(m)) if _ckernels else None,
                   args.repeats)

    for n in sizes:
        m = random_matrix(n, seed=n)
        phi, eps = 0.9, 1.2  # premises mostly fire, so the scan does real work
        bench_case(f"regularity_violations   n={n:<4}",
                   lambda m=m: _pykernels.regularity_violations(m, phi, eps),
                   (lambda m=m: _ckernels.regularity_violations(m, phi, eps))
                   if _ckernels else None,
                   args.repeats)

    n = args.bf_size
    m = random_matrix(n, seed=n)
    bench_case(f"d3_bruteforce_scan      n={n}, max_len={n}",
               lambda: _pykernels.d3_bruteforce_scan(m, 0, 0.5, n, 10**8),
               (lambda: _ckernels.d3_bruteforce_scan(m, 0, 0.5, n, 10**8))
               if _ckernels else None,
               args.repeats)


if __name__ == "__main__":
    main()
