#!/usr/bin/env python3
"""Compare the compiled and pure-Python search kernels on the hot workloads.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from linhyp._kernels import get_backend
from linhyp._kernels.prep import johnson_conflicts, prepare


def _time(fn, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return value, best


def workloads():
    t7 = prepare(7, "triples")
    t8 = prepare(8, "triples")
    l7 = prepare(7, "lines")
    j73 = johnson_conflicts(7, 3)
    return [
        ("count all, 8 pts", lambda be: be.count_systems(t8, be.MODE_ALL)[0]),
        ("count six-cap (rs), 8 pts", lambda be: be.count_systems(t8, be.MODE_CAP)[0]),
        ("count induced-free pair, 7 pts",
         lambda be: be.count_systems(t7, be.MODE_INDWF)[0]),
        ("count paving lines, 7 pts", lambda be: be.count_systems(l7, be.MODE_ALL)[0]),
        ("count restriction-free paving, 7 pts",
         lambda be: be.count_systems(l7, be.MODE_CAP)[0]),
        ("stable sets J(7,3)", lambda be: be.count_stable_sets(j73)[0]),
        ("max six-cap, 8 pts", lambda be: be.max_systems(t8, be.MAX_CAP)[0]),
        ("max fan-free, 8 pts", lambda be: be.max_systems(t8, be.MAX_FANFREE)[0]),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = {}
    backends["py"] = get_backend("py")
    try:
        backends["c"] = get_backend("c")
    except ImportError:
        print("compiled backend not built; benchmarking pure Python only")

    rows = []
    for label, fn in workloads():
        timings = {}
        values = set()
        for name, be in backends.items():
            value, secs = _time(lambda: fn(be), args.repeat)
            timings[name] = secs
            values.add(value)
        assert len(values) == 1, f"backend disagreement on {label}: {values}"
        rows.append((label, values.pop(), timings))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}} {'result':>10} " + " ".join(
        f"{name:>10}" for name in backends
    )
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, value, timings in rows:
        line = f"{label:<{width}} {value:>10}"
        for name in backends:
            line += f" {timings[name] * 1e3:>8.2f}ms"
        if len(backends) == 2:
            line += f" {timings['py'] / timings['c']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
