"""Timing comparison between the compiled kernels and the numpy fallback.

Run from the repository root:

    python benchmarks/bench_core.py            # full sizes
    python benchmarks/bench_core.py --quick    # smaller sizes, faster

Both implementations produce identical results (bit-identical for the Jacobi
path, exactly equal for the integer kernels); the table shows what the
extension buys on the hot loops.
"""

import argparse
import time

import numpy as np

from ramwalk import _core_py
from ramwalk._kernels import HAVE_EXTENSION
from ramwalk.generate import gen_random_regular

if HAVE_EXTENSION:
    from ramwalk import _core
else:
    _core = None


def timeit(fn, repeats=1):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(n, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    a0 = (m + m.T) / 2.0
    eps = 1e-12 * n * 3

    def run(impl):
        a = a0.copy()
        impl.jacobi_sweeps(a, np.empty((1, 1)), False, eps, 100)

    return run


def bench_walk(n, t_max, seed=0):
    g = gen_random_regular(n, 3, seed)

    def run(impl):
        for src in range(g.n):
            impl.nb_walk_table(g.nbrs, 2, src, t_max)

    return run


def bench_bfs(n, seed=0):
    g = gen_random_regular(n, 3, seed)

    def run(impl):
        for src in range(g.n):
            impl.bfs_distances(g.nbrs, src)

    return run


def bench_girth(n, seed=0):
    g = gen_random_regular(n, 3, seed)

    def run(impl):
        impl.girth_scan(g.nbrs)

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = parser.parse_args()

    if args.quick:
        cases = [
            ("jacobi n=120", bench_jacobi(120), 2),
            ("walk rows n=200 t<=10", bench_walk(200, 10), 2),
            ("all-pairs bfs n=400", bench_bfs(400), 2),
            ("girth n=400", bench_girth(400), 2),
        ]
    else:
        cases = [
            ("jacobi n=300", bench_jacobi(300), 1),
            ("walk rows n=660 t<=12", bench_walk(660, 12), 2),
            ("all-pairs bfs n=2000", bench_bfs(2000), 2),
            ("girth n=2000", bench_girth(2000), 2),
        ]

    if not HAVE_EXTENSION:
        print("extension not built: timing the fallback only\n")
    print(f"{'kernel':<24} {'compiled':>10} {'fallback':>10} {'speedup':>8}")
    for name, runner, repeats in cases:
        t_py = timeit(lambda: runner(_core_py), repeats)
        if HAVE_EXTENSION:
            t_c = timeit(lambda: runner(_core), repeats)
            print(f"{name:<24} {t_c:>9.3f}s {t_py:>9.3f}s {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<24} {'-':>10} {t_py:>9.3f}s {'-':>8}")


if __name__ == "__main__":
    main()
