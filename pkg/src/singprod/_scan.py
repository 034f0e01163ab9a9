"""Batch kernels for counting reduced primitive forms over many discriminants.

This is the one hot integer loop in the package: scanning every valid
discriminant up to |D| = 10^4 (or beyond) and counting the reduced
primitive triples (a, b, c), both in total (the class number) and for
a = 1 and a = 2 separately.  The default path is a numba @njit kernel;
setting the environment variable SINGPROD_NO_NUMBA=1 (or running without
numba installed) selects a vectorized pure-numpy fallback.  Both paths
produce identical int64 results; ``benchmarks/bench_scan.py`` compares
them.

Inputs must be negative discriminants (D ≡ 0 or 1 mod 4) with |D| small
enough that b*b - D fits comfortably in int64; the public wrapper
enforces |D| <= 2^40.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    _HAVE_NUMBA = False

_ENV_FLAG = "SINGPROD_NO_NUMBA"
_MAX_ABS = 1 << 40


def numba_enabled() -> bool:
    return _HAVE_NUMBA and os.environ.get(_ENV_FLAG, "").strip() not in ("1", "true", "yes")


def _form_counts_py(deltas):
    """Reference loop shared by both backends (njit-compiled when available)."""
    m = deltas.shape[0]
    out = np.zeros((m, 3), dtype=np.int64)
    for i in range(m):
        dabs = -deltas[i]
        h = 0
        n1 = 0
        n2 = 0
        a = 1
        while 3 * a * a <= dabs:
            four_a = 4 * a
            for b in range(-a + 1, a + 1):
                t = b * b + dabs
                if t % four_a:
                    continue
                c = t // four_a
                if c < a:
                    continue
                if c == a and b < 0:
                    continue
                # gcd(a, |b|, c) == 1
                g = a
                x = b if b >= 0 else -b
                while x:
                    g, x = x, g % x
                x = c
                while x:
                    g, x = x, g % x
                if g != 1:
                    continue
                h += 1
                if a == 1:
                    n1 += 1
                elif a == 2:
                    n2 += 1
            a += 1
        out[i, 0] = h
        out[i, 1] = n1
        out[i, 2] = n2
    return out


if _HAVE_NUMBA:
    _form_counts_njit = njit(cache=True)(_form_counts_py)


def _form_counts_numpy(deltas):
    """Vectorized fallback: loop over (a, b), vectorize over discriminants."""
    dabs = -deltas
    out = np.zeros((deltas.shape[0], 3), dtype=np.int64)
    a = 1
    while 3 * a * a <= int(dabs.max()):
        active = 3 * a * a <= dabs
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            t = b * b + dabs
            c = t // four_a
            ok = active & (t % four_a == 0) & ((c > a) | ((c == a) & (b >= 0)))
            g = np.gcd(np.gcd(a, abs(b)), c)
            ok &= g == 1
            out[ok, 0] += 1
            if a == 1:
                out[ok, 1] += 1
            elif a == 2:
                out[ok, 2] += 1
        a += 1
    return out


def form_count_batch(deltas) -> np.ndarray:
    """Per-discriminant counts (h, #forms with a=1, #forms with a=2).

    `deltas` is any sequence of negative discriminants; returns an
    int64 array of shape (len(deltas), 3).
    """
    arr = np.asarray(deltas, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d sequence of discriminants")
    if arr.size == 0:
        return np.zeros((0, 3), dtype=np.int64)
    if arr.max() >= 0:
        raise ValueError("discriminants must be negative")
    if (-arr.min()) > _MAX_ABS:
        raise ValueError(f"|D| > {_MAX_ABS} is outside the int64-safe scan range")
    mod = np.mod(arr, 4)
    if not np.all((mod == 0) | (mod == 1)):
        raise ValueError("discriminants must be 0 or 1 mod 4")
    if numba_enabled():
        return _form_counts_njit(arr)
    return _form_counts_numpy(arr)
