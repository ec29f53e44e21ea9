#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times the four hot kernels on representative workloads and checks that the
two backends return identical results while doing so.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from apxpat._kernels import _fallback  # noqa: E402

try:
    from apxpat._kernels import _core
except ImportError:
    _core = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _core is None:
        print("compiled core not built; run `python setup.py build_ext --inplace` first")
        return 1

    workloads = []

    # dart throwing: 1-D acceptance-scale and a dense 2-D instance
    workloads.append((
        "dart_throw 1-D n=5249 L=13122",
        lambda m: m.dart_throw(1, 13122.0, 1.0, 5249, 7, 10**9),
    ))
    workloads.append((
        "dart_throw 2-D n=2000 L=60",
        lambda m: m.dart_throw(2, 60.0, 1.0, 2000, 7, 10**9),
    ))

    flat2, _ = _fallback.dart_throw(2, 60.0, 1.0, 2000, 7, 10**9)
    flat1, _ = _fallback.dart_throw(1, 13122.0, 1.0, 5249, 7, 10**9)

    workloads.append((
        "has_close_pair 2-D n=2000",
        lambda m: m.has_close_pair(flat2, 2, 1.0 - 1e-9),
    ))
    workloads.append((
        "bin_cells 1-D n=5249 ks=9",
        lambda m: m.bin_cells(flat1, 1, (0.0,), 13122.0 / 9, 9),
    ))
    workloads.append((
        "min_pairwise_sq 2-D n=2000",
        lambda m: m.min_pairwise_sq(flat2, 2),
    ))

    print(f"{'kernel':38s} {'pure (ms)':>12s} {'compiled (ms)':>14s} {'speedup':>9s}")
    for name, fn in workloads:
        t_py, out_py = timed(fn, _fallback, repeat=args.repeat)
        t_c, out_c = timed(fn, _core, repeat=args.repeat)
        assert out_py == out_c, f"backend results differ for {name}"
        print(f"{name:38s} {t_py * 1e3:12.2f} {t_c * 1e3:14.2f} {t_py / t_c:8.1f}x")
    print("results identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
