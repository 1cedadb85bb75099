"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Both backends are loaded side by side and fed identical inputs; the script
also checks that they agree before reporting timings.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from apxcert import kernels
from apxcert.harness import CorpusSpec, generate
from apxcert.oracles import sat_masks, scaled_edge_weights


def workloads():
    phi = generate(CorpusSpec("cnf", n=20, m=60, k=3, count=1, seed=1))[0]
    pos, neg = sat_masks(phi)
    g = generate(CorpusSpec("graph", n=18, m=60, k=3, count=1, seed=2))[0]
    ws, _ = scaled_edge_weights(g)
    us, vs = [e.u for e in g.edges], [e.v for e in g.edges]
    metric = generate(CorpusSpec("metric", n=12, count=1, seed=3))[0]
    odd = [list(r[:12]) for r in metric.dist]
    return {
        "sat_best (20 vars, 60 clauses)": lambda k: k.sat_best(pos, neg, phi.num_vars, False),
        "cut_best (18 vertices, 60 edges)": lambda k: k.cut_best(us, vs, ws, g.num_vertices),
        "vc_best (18 vertices)": lambda k: k.vc_best(us, vs, g.num_vertices),
        "held_karp (12 points)": lambda k: k.held_karp(metric.dist),
        "min_matching (12 points)": lambda k: k.min_matching(odd),
    }


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, float):
        return abs(a - b) <= 1e-9 * max(1.0, abs(a))
    return list(a) == list(b) if isinstance(a, list) else a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    fast, slow = kernels.compiled_backend, kernels.python_backend
    if fast is None:
        print("compiled backend not built; only the Python fallback is available")
        return 1
    print(f"{'kernel':36s} {'compiled s':>11s} {'python s':>11s} {'speedup':>8s}")
    for name, fn in workloads().items():
        if not _same(fn(fast), fn(slow)):
            raise SystemExit(f"backends disagree on {name}")
        tf = min(timeit.repeat(lambda: fn(fast), number=1, repeat=args.repeat))
        ts = min(timeit.repeat(lambda: fn(slow), number=1, repeat=args.repeat))
        print(f"{name:36s} {tf:11.4f} {ts:11.4f} {ts / tf:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
