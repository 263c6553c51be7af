import random

import numpy as np
import pytest

from jordext import kernels
from jordext.algebra import Algebra, check_jordan
from jordext.identities import Mode
from jordext.scalars import GF
from jordext import zoo

needs_compiled = pytest.mark.skipif(kernels._compiled is None, reason="extension not built")


def tables(p, count, seed):
    rng = random.Random(seed)
    F = GF(p)
    out = [A.table.array() for _, A in zoo.corpus(F, 3)]
    while len(out) < count:
        n = rng.randint(1, 3)
        coef = {}
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if rng.random() < 0.3:
                        coef[(i, j, k)] = coef[(j, i, k)] = rng.randrange(1, p)
        out.append(Algebra(F, n, coef).table.array())
    return out


@needs_compiled
@pytest.mark.parametrize("p", [3, 5])
def test_backends_agree(p):
    for T in tables(p, 60, p):
        for name in ("jordan_scan", "polarization_scan"):
            fn = getattr(kernels, name)
            assert fn(T, p, backend="cython") == fn(T, p, backend="numpy")
        n = T.shape[0]
        Ab, Vb = np.eye(n, dtype=np.int64)[:1], np.eye(n, dtype=np.int64)[1:]
        assert kernels.missing_scan(T, Ab, Vb, p, backend="cython") == \
            kernels.missing_scan(T, Ab, Vb, p, backend="numpy")


@pytest.mark.parametrize("threads", [1, 4])
def test_sharding_is_deterministic(threads):
    # large enough to shard; the first hit must not depend on the worker count
    A = Algebra.from_upper(GF(7), 6, {(0, 1, 0): 1})
    T = A.table.array()
    assert kernels.jordan_scan(T, 7, threads=threads) == kernels.jordan_scan(T, 7, threads=1)


def test_kernel_witness_matches_generic_engine():
    A = Algebra.from_upper(GF(5), 2, {(0, 1, 0): 1})
    w1 = check_jordan(A, Mode.exhaustive())["jordan"].witness
    hit = kernels.jordan_scan(A.table.array(), 5, backend="numpy")
    assert kernels.decode_index(hit[0], 5, 2) == w1[0]


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.jordan_scan(np.zeros((1, 1, 1), dtype=np.int64), 3, backend="fortran")


def test_set_threads():
    kernels.set_threads(2)
    try:
        assert kernels.default_threads() == 2
    finally:
        kernels.set_threads(None)


def test_pure_fallback_selected_at_import():
    import os
    import subprocess
    import sys
    env = dict(os.environ, JORDEXT_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import jordext.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
