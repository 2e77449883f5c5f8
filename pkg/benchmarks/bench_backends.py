#!/usr/bin/env python3
"""Benchmark the compiled backend against the pure-Python fallback.

Times the three hot kernels (gamma, the Mittag-Leffler series, Horner
series evaluation over quadrature node batches) and one end-to-end
operator evaluation under each backend.

Usage:  python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from anafrac import _backend
from anafrac.kernels import FractionalOrder, Interval, make_prabhakar_kernel
from anafrac.operators import frac_integral_direct


def timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_gamma(n: int = 20_000):
    xs = np.random.default_rng(0).uniform(0.1, 50.0, n)

    def run():
        g = _backend.gammafn
        for x in xs:
            g(x)

    return run


def bench_ml3(n: int = 2_000):
    xs = np.random.default_rng(1).uniform(0.0, 2.0, n)

    def run():
        ml3 = _backend.ml3
        for x in xs:
            ml3(1.2, 0.8, 1.0, x, 1e-12, 10_000)

    return run


def bench_series(n: int = 5_000):
    coeffs = 1.0 / np.cumprod(np.concatenate([[1.0], np.arange(1.0, 48.0)]))
    u = np.linspace(0.0, 0.9, 30)
    out = np.empty_like(u)

    def run():
        s = _backend.series_sum_many
        for _ in range(n):
            s(coeffs, u, out)

    return run


def bench_operator(n: int = 60):
    order = FractionalOrder(1.1, 0.7)
    kernel = make_prabhakar_kernel(1.2, 0.6, order)
    iv = Interval(0.5, 2.0, 2.0)
    f = lambda t: np.sin(t) + 2.0  # noqa: E731

    def run():
        for _ in range(n):
            frac_integral_direct(kernel, order, f, iv)

    return run


BENCHES = {
    "gamma x20k": bench_gamma,
    "mittag-leffler x2k": bench_ml3,
    "horner 48x30 x5k": bench_series,
    "direct operator x60": bench_operator,
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; timing pure backend only")

    results: dict[str, dict[str, float]] = {name: {} for name in BENCHES}
    for backend in backends:
        _backend.use_backend(backend)
        for name, make in BENCHES.items():
            run = make()
            run()  # warm up
            results[name][backend] = timeit(run, args.repeat)

    width = max(len(n) for n in BENCHES)
    header = f"{'benchmark':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, times in results.items():
        line = f"{name:<{width}}  " + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
