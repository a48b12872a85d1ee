#!/usr/bin/env python3
"""Benchmark the compiled term kernel against the pure-Python fallback.

Micro-benchmarks call both kernel modules directly on identical term
dicts; the end-to-end section times the truncated path-matrix build (the
dominant workload of the series oracle) in a subprocess per backend.
"""

from __future__ import annotations

import argparse
import json
import random
import subprocess
import sys
import time

from pathminor import _kernel_py

try:
    from pathminor import _speedups
except ImportError:
    _speedups = None


def random_terms(rng: random.Random, n_terms: int, n_vars: int, max_exp=2):
    terms = {}
    names = [f"e{i:02d}" for i in range(n_vars)]
    while len(terms) < n_terms:
        width = rng.randint(0, min(5, n_vars))
        mono = tuple(
            sorted((v, rng.randint(1, max_exp)) for v in rng.sample(names, width))
        )
        terms[mono] = rng.randint(-9, 9) or 1
    return terms


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def micro(repeats: int):
    rng = random.Random(7)
    sizes = [(30, 2), (100, 4), (300, 8)]
    rows = []
    for n_terms, n_small in sizes:
        a = random_terms(rng, n_terms, 10)
        b = random_terms(rng, n_small, 10)
        cases = {
            f"mul {n_terms}x{n_small}": lambda k, a=a, b=b: k.mul_terms(a, b),
            f"mul {n_terms}x{n_small} deg<=10": lambda k, a=a, b=b: k.mul_terms(
                a, b, 10
            ),
            f"add {n_terms}+{n_terms}": lambda k, a=a: k.add_terms(a, a),
        }
        for label, call in cases.items():
            py = best_of(lambda: call(_kernel_py), repeats)
            if _speedups is None:
                rows.append((label, py, None))
            else:
                cy = best_of(lambda: call(_speedups), repeats)
                rows.append((label, py, cy))
    print(f"{'workload':28} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for label, py, cy in rows:
        if cy is None:
            print(f"{label:28} {py * 1e6:>10.1f}us {'-':>12} {'-':>8}")
        else:
            print(
                f"{label:28} {py * 1e6:>10.1f}us {cy * 1e6:>10.1f}us "
                f"{py / cy:>7.1f}x"
            )


END_TO_END = r"""
import json, random, sys, time
from pathminor import KERNEL_BACKEND
from pathminor.graph import Edge, Graph
from pathminor.oracles import truncated_path_matrix

rng = random.Random(99)
graphs = []
for _ in range(20):
    vertices = [f"v{i}" for i in range(1, 7)]
    edges = [Edge(f"e{i:02d}", rng.choice(vertices), rng.choice(vertices))
             for i in range(10)]
    graphs.append(Graph(vertices, edges))
t0 = time.perf_counter()
for g in graphs:
    truncated_path_matrix(g, 12)
print(json.dumps({"backend": KERNEL_BACKEND,
                  "seconds": time.perf_counter() - t0}))
"""


def end_to_end():
    results = []
    for env_extra in ({}, {"PATHMINOR_PURE_PYTHON": "1"}):
        import os

        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", END_TO_END],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        results.append(json.loads(out.stdout))
    print("\ntruncated path matrix, 20 graphs (6 vertices, 10 edges), order 12:")
    for item in results:
        print(f"  {item['backend']:>8}: {item['seconds']:.2f}s")
    if len({item["backend"] for item in results}) == 1:
        print("  (compiled extension not built; both runs used the fallback)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    parser.add_argument(
        "--skip-end-to-end", action="store_true", help="micro-benchmarks only"
    )
    args = parser.parse_args()
    if _speedups is None:
        print("compiled kernel not available; showing fallback timings only")
    micro(args.repeats)
    if not args.skip_end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
