"""Compare the compiled enumeration kernels against the pure Python twins.

Both implementations are shipped; the package picks the compiled one at
import when available.  This script times vertex solution enumeration
and the exhaustive bounded search on every bundled triangulation with
each kernel forced in turn, and prints one table per operation.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N] [--bound B]
"""

import argparse
import os
import sys
import time

from nsurf import _kernels
from nsurf.coordinates import ALMOST_NORMAL, NORMAL
from nsurf.enumeration import brute_force_solutions, vertex_solutions
from nsurf.triangulation import parse_triangulation

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                    "..", "data")
BUNDLES = ["s3_1tet.tri", "lens41_1tet.tri", "rp3_2tet.tri",
           "solidtorus_1tet.tri"]


def load(name):
    with open(os.path.join(DATA, name)) as handle:
        return parse_triangulation(handle.read())


def best_of(repeat, fn, *args):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def run_table(title, repeat, fn, *extra):
    compiled = _kernels._fast
    if compiled is None:
        print("compiled extension not built; timing pure kernels only")
    rows = []
    for name in BUNDLES:
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            _kernels._fast = compiled
            t_fast, r_fast = best_of(repeat, fn, tri, system, *extra)
            _kernels._fast = None
            t_pure, r_pure = best_of(repeat, fn, tri, system, *extra)
            _kernels._fast = compiled
            if list(r_fast) != list(r_pure):
                raise AssertionError("kernel mismatch on %s %s"
                                     % (name, system))
            rows.append((name, system, len(list(r_fast)), t_fast, t_pure))
    print()
    print(title)
    print("%-22s %-14s %6s %12s %12s %9s" % (
        "triangulation", "system", "count", "compiled", "pure", "speedup"))
    for name, system, count, t_fast, t_pure in rows:
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print("%-22s %-14s %6d %10.3fms %10.3fms %8.1fx" % (
            name, system, count, t_fast * 1e3, t_pure * 1e3, ratio))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best taken (default 5)")
    parser.add_argument("--bound", type=int, default=6,
                        help="coordinate bound for the exhaustive search")
    args = parser.parse_args(argv)
    print("kernel implementation selected at import: %s"
          % _kernels.IMPLEMENTATION)
    run_table("vertex solution enumeration (double description)",
              args.repeat, vertex_solutions)
    run_table("exhaustive bounded search (bound %d)" % args.bound,
              args.repeat, brute_force_solutions, args.bound)
    return 0


if __name__ == "__main__":
    sys.exit(main())
