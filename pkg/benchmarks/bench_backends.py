"""Throughput of the compiled core against the pure-Python fallback.

    python3 benchmarks/bench_backends.py [--evals 20000] [--repeat 3]

Both backends run the same seeded configurations (their results are asserted
identical) and the Walsh transform is timed separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from balancedga import _backend
from balancedga.boolfn import walsh_transform
from balancedga.engine import GAConfig, Problem, run_ga

CASES = [
    ("balnl-6", "moo"),
    ("balnl-8", "moo"),
    ("balnl-8", "op"),
    ("bent-8", "cb-s"),
    ("oa-16-8-2-4", "moo"),
]


def best_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_runs(evals: int, repeat: int, python_evals: int) -> None:
    print(f"{'problem':<14}{'op':<7}{'compiled ev/s':>15}{'python ev/s':>14}{'speedup':>9}")
    for code, op in CASES:
        problem = Problem.parse(code)
        cfg = GAConfig(problem, op, max_evaluations=evals, seed=1)
        small = GAConfig(problem, op, max_evaluations=python_evals, seed=1)
        assert run_ga(small, "compiled") == run_ga(small, "python")
        tc = best_time(lambda: run_ga(cfg, "compiled"), repeat)
        tp = best_time(lambda: run_ga(small, "python"), 1)
        c_rate, p_rate = evals / tc, python_evals / tp
        print(f"{code:<14}{op:<7}{c_rate:>15,.0f}{p_rate:>14,.0f}{c_rate / p_rate:>8.0f}x")


def bench_walsh(repeat: int) -> None:
    rng = np.random.default_rng(0)
    print(f"\n{'n':<4}{'numpy us':>10}{'compiled us':>13}")
    for n in (6, 8, 10, 12):
        tables = rng.integers(0, 2, size=(200, 1 << n), dtype=np.uint8)
        tn = best_time(lambda: [walsh_transform(t) for t in tables], repeat) / len(tables)
        tc = best_time(lambda: [_backend.core.walsh_spectrum(t) for t in tables],
                       repeat) / len(tables)
        print(f"{n:<4}{tn * 1e6:>10.1f}{tc * 1e6:>13.1f}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--evals", type=int, default=20_000,
                        help="evaluations per compiled run")
    parser.add_argument("--python-evals", type=int, default=2_000,
                        help="evaluations per pure-Python run")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if _backend.core is None:
        print("compiled core not built; nothing to compare")
        return 1
    bench_runs(args.evals, args.repeat, args.python_evals)
    bench_walsh(args.repeat)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
