"""Backend selection and sharding for the exhaustive scan kernels.

The compiled extension is used when it imports; ``JORDEXT_PURE=1`` forces
the numpy fallback.  Ranges are split into contiguous shards that run on a
thread pool (the compiled loops release the GIL); the reported hit is the
one with the smallest index, so results match a sequential scan.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

_compiled = None
if os.environ.get("JORDEXT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"
_SHARD_MIN = 1 << 12
_threads = None


def set_threads(n: int | None):
    """Cap the worker count (None restores the default)."""
    global _threads
    _threads = n if n is None else max(1, int(n))


def default_threads() -> int:
    if _threads is not None:
        return _threads
    return max(1, min(8, os.cpu_count() or 1))


def _impl(name, backend):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return getattr(_compiled, name)
    if backend == "numpy":
        return getattr(_kernels_py, name)
    raise ValueError(f"unknown backend {backend!r}")


def _run(name, args, total, backend, threads):
    fn = _impl(name, backend)
    threads = threads or default_threads()
    if threads <= 1 or total < 2 * _SHARD_MIN:
        return fn(*args, 0, total)
    # shard count is a multiple of the worker count so early shards finish first
    nshards = min(threads * 4, max(1, total // _SHARD_MIN))
    bounds = [total * i // nshards for i in range(nshards + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [pool.submit(fn, *args, bounds[i], bounds[i + 1]) for i in range(nshards)]
        for f in futs:  # in index order: the first hit is the minimum
            r = f.result()
            if r is not None:
                for g in futs:
                    g.cancel()
                return r
    return None


def _prep(T, p):
    return np.ascontiguousarray(T, dtype=np.int64) % p


def jordan_scan(T, p, backend=None, threads=None):
    """First ``a`` (as a base-p index) with ``b -> (a^2 b) a - a^2 (b a)`` nonzero.

    Returns ``(index, j)`` where ``e_j`` is the first failing ``b``, or None.
    """
    T = _prep(T, p)
    n = T.shape[0]
    if n == 0:
        return None
    return _run("jordan_scan", (T, int(p)), int(p) ** n, backend, threads)


def polarization_scan(T, p, backend=None, threads=None):
    """First ``x`` with a nonzero polarization ``P(x, e_j, e_l)``: ``(index, j, l)``."""
    T = _prep(T, p)
    n = T.shape[0]
    if n == 0:
        return None
    return _run("polarization_scan", (T, int(p)), int(p) ** n, backend, threads)


def missing_scan(T, Ab, Vb, p, backend=None, threads=None):
    """First ``(a, x)`` (joint index over A- then V-coordinates) whose
    missing-relation operator is nonzero: ``(index, column)``.

    ``column < len(Ab)`` means the failing inner pair is ``(b, y) = (Ab[c], 0)``,
    otherwise ``(0, Vb[c - len(Ab)])``.
    """
    T = _prep(T, p)
    n = T.shape[0]
    if n == 0:
        return None
    Ab = np.ascontiguousarray(np.asarray(Ab, dtype=np.int64).reshape(-1, n)) % p
    Vb = np.ascontiguousarray(np.asarray(Vb, dtype=np.int64).reshape(-1, n)) % p
    r = Ab.shape[0] + Vb.shape[0]
    if r == 0:
        return None
    return _run("missing_scan", (T, Ab, Vb, int(p)), int(p) ** r, backend, threads)


def decode_index(idx: int, p: int, m: int):
    out = [0] * m
    for c in range(m - 1, -1, -1):
        out[c] = idx % p
        idx //= p
    return tuple(out)
