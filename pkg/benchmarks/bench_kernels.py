#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [--quick]

Covers the three hot paths: proper-coloring enumeration, Kempe-neighbor
generation (the oracle inner loop), and full class partition, plus one
end-to-end transform.  The same work is executed through both backends; the
compiled path is skipped when the extension is unavailable.
"""
from __future__ import annotations

import argparse
import sys
import time

from kempe_edge import _kernels_py
from kempe_edge.fixtures_gen import (
    octahedron,
    random_proper_coloring,
    random_regular4_class1,
)

try:
    from kempe_edge import _speedups
except ImportError:
    _speedups = None


def _time(fn, repeat=1):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_backend(backend, name, quick):
    g = octahedron()
    ga = g.arrays()
    results = {}

    t = _time(lambda: backend.enumerate_proper(ga, 5, 10**7))
    states, _ = backend.enumerate_proper(ga, 5, 10**7)
    results[f"enumerate octahedron t=5 ({len(states)} states)"] = t

    sample = states[:: max(1, len(states) // (300 if quick else 3000))]

    def neighbors():
        for s in sample:
            backend.kempe_neighbors(ga, s, 5)

    results[f"kempe neighbors x{len(sample)}"] = _time(neighbors)

    def classes():
        # union-find over the full space, neighbor generation dominating
        index = {s: i for i, s in enumerate(states)}
        parent = list(range(len(states)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        subset = states if not quick else states[:20000]
        for i, s in enumerate(subset):
            for nxt in backend.kempe_neighbors(ga, s, 5):
                j = index[nxt]
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    results["class partition sweep"] = _time(classes)
    return results


def bench_transform():
    from kempe_edge.kempe_engine import apply_transcript
    from kempe_edge.regular4_core import theorem_4_1_transform

    def run():
        for n in (8, 12):
            for seed in range(4):
                g, h = random_regular4_class1(n, seed)
                f = random_proper_coloring(g, 5, seed)
                tr = theorem_4_1_transform(g, f, h)
                apply_transcript(g, f, tr, check=True)

    return _time(run)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    rows = []
    py = bench_backend(_kernels_py, "python", args.quick)
    if _speedups is not None:
        cy = bench_backend(_speedups, "cython", args.quick)
    else:
        cy = None
        print("compiled extension unavailable; benchmarking fallback only")

    width = max(len(k) for k in py)
    print(f"{'kernel benchmark':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for key, tpy in py.items():
        if cy:
            tcy = cy[key]
            print(f"{key:<{width}}  {tpy:>9.3f}s  {tcy:>9.3f}s  {tpy / tcy:>7.1f}x")
        else:
            print(f"{key:<{width}}  {tpy:>9.3f}s")

    print()
    t = bench_transform()
    print(f"end-to-end transforms (current backend): {t:.3f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
