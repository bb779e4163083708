#!/usr/bin/env python3
"""Benchmark the mod-p matrix kernels: jitted backend vs pure-numpy fallback.

Times rref_mod, matmul_mod and spin_mod on seeded random inputs across a
range of sizes, cross-checking that both backends return identical arrays
before trusting the numbers.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 16 32 64 128] [-p 5] [--iterations 25]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from dgforge import _fp_numpy

try:
    from dgforge import _fp_numba

    HAVE_NUMBA = True
except ImportError:
    _fp_numba = None
    HAVE_NUMBA = False


def time_function(func, *args, iterations: int = 25, warmup: int = 3) -> float:
    """Median wall time in microseconds over `iterations` calls."""
    for _ in range(warmup):
        func(*args)
    times = []
    for _ in range(iterations):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return statistics.median(times) * 1e6


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def check_agreement(name: str, got, want) -> None:
    got = got if isinstance(got, tuple) else (got,)
    want = want if isinstance(want, tuple) else (want,)
    for g, w in zip(got, want):
        if not np.array_equal(np.asarray(g), np.asarray(w)):
            raise AssertionError(f"{name}: backends disagree")


def bench_case(name, numba_fn, numpy_fn, args, iterations):
    if HAVE_NUMBA:
        check_agreement(name, numba_fn(*args), numpy_fn(*args))
        t_jit = time_function(numba_fn, *args, iterations=iterations)
    else:
        t_jit = float("nan")
    t_np = time_function(numpy_fn, *args, iterations=iterations)
    speedup = t_np / t_jit if HAVE_NUMBA and t_jit > 0 else float("nan")
    print(f"  {name:<28} numba {t_jit:10.1f}us   numpy {t_np:10.1f}us   speedup {speedup:6.2f}x")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    parser.add_argument("-p", type=int, default=5, help="prime modulus (default 5)")
    parser.add_argument("--iterations", type=int, default=25)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    p = args.p
    if not HAVE_NUMBA:
        print("jitted backend unavailable; timing the numpy fallback only")
    print(f"modulus p={p}, median of {args.iterations} runs\n")

    for n in args.sizes:
        print(f"n = {n}")
        a = random_matrix(rng, n, n, p)
        b = random_matrix(rng, n, n, p)
        seeds = random_matrix(rng, 2, n, p)
        ops = np.stack([random_matrix(rng, n, n, p) for _ in range(3)])
        cases = [
            ("rref_mod", (a, p)),
            ("matmul_mod", (a, b, p)),
            ("spin_mod", (seeds, ops, p)),
        ]
        for name, case_args in cases:
            numba_fn = getattr(_fp_numba, name) if HAVE_NUMBA else None
            bench_case(name, numba_fn, getattr(_fp_numpy, name), case_args, args.iterations)
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
