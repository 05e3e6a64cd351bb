"""Benchmark the exact row reduction backend.

Compares reduced row echelon form over Gaussian rationals with the gmpy2
rational backend against the stdlib Fraction fallback, on random dense and
structured sparse matrices.  Run directly:

    python3 benchmarks/bench_rref.py [--sizes 20,40,80] [--repeat 3]
"""

from __future__ import annotations

import argparse
import importlib
import random
import sys
import time


def random_matrix(linalg, scalar, rng, n, m, density=1.0, span=20):
    mat = linalg.zeros(n, m)
    for i in range(n):
        for j in range(m):
            if rng.random() <= density:
                mat[i][j] = scalar.QQi.parse(
                    (rng.randint(-span, span), rng.randint(1, span),
                     rng.randint(-span, span), rng.randint(1, span)))
    return mat


def bench_backend(backend, sizes, repeat, seed):
    """Reload the scalar stack with the chosen rational backend and time
    rref on each size; returns {label: seconds}."""
    import dgnet._ratback as ratback

    saved = ratback.Rat
    if backend == "fraction":
        from fractions import Fraction

        ratback.Rat = Fraction
    modules = [importlib.reload(importlib.import_module(name))
               for name in ("dgnet.scalar", "dgnet.linalg")]
    scalar, linalg = modules
    timings = {}
    try:
        for n in sizes:
            rng = random.Random(seed)
            cases = [
                ("dense %dx%d" % (n, n),
                 random_matrix(linalg, scalar, rng, n, n)),
                ("sparse %dx%d" % (n, 2 * n),
                 random_matrix(linalg, scalar, rng, n, 2 * n, density=0.2)),
            ]
            for label, mat in cases:
                best = min(
                    _time_once(linalg, [row[:] for row in mat])
                    for _ in range(repeat))
                timings[label] = best
    finally:
        ratback.Rat = saved
        for name in ("dgnet.scalar", "dgnet.linalg"):
            importlib.reload(importlib.import_module(name))
    return timings


def _time_once(linalg, mat):
    t0 = time.perf_counter()
    linalg.rref(mat)
    return time.perf_counter() - t0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,40,80",
                        help="comma-separated matrix sizes")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = ["fraction"]
    try:
        import gmpy2  # noqa: F401

        backends.insert(0, "gmpy2")
    except ImportError:
        print("gmpy2 not available; timing the Fraction backend only")

    results = {b: bench_backend(b, sizes, args.repeat, args.seed)
               for b in backends}
    labels = list(next(iter(results.values())))
    width = max(len(l) for l in labels)
    header = "%-*s" % (width, "case")
    for b in backends:
        header += "  %12s" % b
    if len(backends) == 2:
        header += "  %8s" % "speedup"
    print(header)
    for label in labels:
        row = "%-*s" % (width, label)
        for b in backends:
            row += "  %10.4fs" % results[b][label]
        if len(backends) == 2:
            row += "  %7.2fx" % (results["fraction"][label]
                                 / results["gmpy2"][label])
        print(row)


if __name__ == "__main__":
    sys.exit(main())
