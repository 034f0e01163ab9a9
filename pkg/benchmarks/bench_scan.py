#!/usr/bin/env python3
"""Benchmark the discriminant-scan kernel: numba @njit vs numpy fallback.

The scan counts reduced primitive forms for every valid discriminant up
to a bound -- the one hot integer loop in the package (class-number
batch queries, candidate-list generation, congruence sweeps).  Both
paths must produce identical results; this script times them and checks
that.

Run:  python benchmarks/bench_scan.py [--bound 20000] [--repeat 3]

The env flag SINGPROD_NO_NUMBA=1 switches the library itself to the
numpy path; here both are invoked explicitly.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from singprod import _scan
from singprod.qforms import valid_discriminants


def _time(fn, arr, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(arr)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    arr = np.array(valid_discriminants(args.bound), dtype=np.int64)
    print(f"scanning {arr.size} discriminants up to |D| = {args.bound}")

    if not _scan._HAVE_NUMBA:
        print("numba not available; benchmarking the numpy path only")
        t_np, _ = _time(_scan._form_counts_numpy, arr, args.repeat)
        print(f"numpy fallback : {t_np * 1e3:9.1f} ms")
        return 0

    _scan._form_counts_njit(arr[:8])  # trigger compilation outside the timing
    t_nb, out_nb = _time(_scan._form_counts_njit, arr, args.repeat)
    t_np, out_np = _time(_scan._form_counts_numpy, arr, args.repeat)

    if not np.array_equal(out_nb, out_np):
        print("MISMATCH between numba and numpy results")
        return 1

    print(f"numba @njit    : {t_nb * 1e3:9.1f} ms")
    print(f"numpy fallback : {t_np * 1e3:9.1f} ms")
    print(f"speedup        : {t_np / t_nb:9.1f}x")
    print("results identical")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
