#!/usr/bin/env python3
"""Benchmark the exhaustive bent search: compiled kernel vs numpy fallback.

The workload is a Klein-four G-set made of 2-point orbits whose stabilizers
cycle through the three order-2 subgroups (components stay nonempty, so the
search space is not trivially empty). Both backends must return identical
exponent lists.

Usage: python benchmarks/bench_search.py [--orbits 8] [--q 2] [--repeat 3]
"""

import argparse
import sys
import time

from gsetfourier import FiniteAbelianGroup, GSet
from gsetfourier.search import _core, search_bent


def orbit_chain_gset(orbits):
    """Klein-four G-set of ``orbits`` 2-point orbits, stabilizers cycling a, b, ab."""
    G = FiniteAbelianGroup([2, 2])
    n = 2 * orbits
    e1, e2 = [], []
    for k in range(orbits):
        swap, keep = [2 * k + 1, 2 * k], [2 * k, 2 * k + 1]
        stab = k % 3  # 0: fixes e1, 1: fixes e2, 2: fixes e1*e2
        e1 += keep if stab == 0 else swap
        e2 += keep if stab == 1 else swap
    return GSet.from_generators(G, n, [e1, e2])


def run(X, q, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = search_bent(X, q, criterion="derivatives", backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--orbits", type=int, default=8, help="number of 2-point orbits")
    parser.add_argument("--q", type=int, default=2, help="root-of-unity order")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    args = parser.parse_args()

    X = orbit_chain_gset(args.orbits)
    total = args.q ** X.n
    print(f"G-set: Klein four group on {X.n} points; {total} candidates at q={args.q}")

    t_py, found_py = run(X, args.q, "python", args.repeat)
    print(f"python  backend: {t_py:8.3f} s   ({len(found_py)} bent functions)")

    if _core is None:
        print("compiled backend: extension not built (pip install -e . --no-build-isolation)")
        return 0

    t_c, found_c = run(X, args.q, "compiled", args.repeat)
    print(f"compiled backend: {t_c:8.3f} s   ({len(found_c)} bent functions)")
    if found_py != found_c:
        print("MISMATCH between backends", file=sys.stderr)
        return 1
    print(f"identical results; speedup {t_py / t_c:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
