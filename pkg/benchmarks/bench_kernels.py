#!/usr/bin/env python3
"""Benchmark the compiled float-product kernel against the numpy fallback.

Runs the scalar product and the batched product for a range of algebra
dimensions and prints one table row per (m, path).  The same inputs are fed
to both implementations and the outputs are compared before timing, so a
speedup claim is never made for a kernel that disagrees.

Usage:
    python benchmarks/bench_kernels.py [--dims 2,3,5,8] [--batch 4096]
                                       [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from axialmono.kernels import BACKEND, gp_floats_reference, tables
from axialmono import kernels


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_dim(m: int, batch: int, repeats: int, rng: np.random.Generator) -> list[dict]:
    tab = tables(m)
    n = 1 << m
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    X = rng.standard_normal((batch, n))
    Y = rng.standard_normal((batch, n))

    np.testing.assert_allclose(
        kernels.gp_floats(x, y, tab), gp_floats_reference(x, y, tab),
        rtol=1e-12, atol=1e-12,
    )

    loops = max(1, 200_000 // n)
    rows = []

    def scalar_active():
        for _ in range(loops):
            kernels.gp_floats(x, y, tab)

    def scalar_fallback():
        for _ in range(loops):
            gp_floats_reference(x, y, tab)

    t_active = _best_of(scalar_active, repeats) / loops
    t_fallback = _best_of(scalar_fallback, repeats) / loops
    rows.append({"m": m, "op": "gp", "active": t_active, "fallback": t_fallback})

    def batch_active():
        kernels.gp_floats_batch(X, Y, tab)

    def batch_fallback():
        from axialmono import _product_py
        _product_py.gp_batch(X, Y, tab.idxl, tab.signl)

    t_active = _best_of(batch_active, repeats) / batch
    t_fallback = _best_of(batch_fallback, repeats) / batch
    rows.append({"m": m, "op": f"gp_batch[{batch}]", "active": t_active,
                 "fallback": t_fallback})
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="2,3,5,8",
                        help="comma-separated algebra dimensions")
    parser.add_argument("--batch", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    dims = [int(s) for s in args.dims.split(",") if s]
    rng = np.random.default_rng(0)

    print(f"active backend: {BACKEND}")
    print(f"{'m':>3} {'op':<16} {'active (us)':>12} {'fallback (us)':>14} {'speedup':>8}")
    for m in dims:
        for row in bench_dim(m, args.batch, args.repeats, rng):
            speed = row["fallback"] / row["active"] if row["active"] else float("inf")
            print(f"{row['m']:>3} {row['op']:<16} {row['active'] * 1e6:>12.3f} "
                  f"{row['fallback'] * 1e6:>14.3f} {speed:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
