"""Benchmark the compiled kernel against the pure-Python fallback.

Times the three hot routines (LU inversion, power-iteration dominant
eigenpair, Jacobi minimum singular value) on the matrix sizes the
simulator actually uses (M = 1..5) and prints a per-routine speedup
table.  The compiled path is exercised through the public kernel API;
the fallback is called directly so both run in one process.

Usage:
    python3 benchmarks/bench_kernel.py [--reps 2000] [--sizes 2 3 4 5]
"""

import argparse
import time

import numpy as np

from kwayrelay import kernel
from kwayrelay.kernel import _pykernel


def timeit(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def bench_size(n, reps, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    al = a.tolist()
    rows = []
    for name, fast, slow in [
        ("invert", lambda: kernel.invert(a),
         lambda: _pykernel.lu_invert(al)),
        ("dominant_eigenpair", lambda: kernel.dominant_eigenpair(a),
         lambda: _pykernel.dominant_eigenpair(al)),
        ("min_singular", lambda: kernel.min_singular(a),
         lambda: _pykernel.min_singular(al)),
    ]:
        tf = timeit(fast, reps)
        ts = timeit(slow, reps)
        rows.append((name, n, tf * 1e6, ts * 1e6, ts / tf))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=2000)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("active backend: %s" % kernel.BACKEND)
    if kernel.BACKEND != "compiled":
        print("warning: compiled extension not available; comparing the "
              "fallback against itself")
    rng = np.random.default_rng(args.seed)
    print("%-20s %4s %12s %12s %8s" %
          ("routine", "n", "compiled_us", "pure_us", "speedup"))
    for n in args.sizes:
        for name, dim, tf, ts, sp in bench_size(n, args.reps, rng):
            print("%-20s %4d %12.2f %12.2f %7.1fx" % (name, dim, tf, ts, sp))


if __name__ == "__main__":
    main()
