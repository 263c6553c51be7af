"""Compare the compiled and numpy scan kernels on full (hit-free) scans.

    python benchmarks/bench_kernels.py [--repeat N] [--threads T]
"""
import argparse
import time

import numpy as np

from jordext import kernels
from jordext.scalars import GF
from jordext import zoo


def cases():
    F7, F5 = GF(7), GF(5)
    m2 = zoo.matrix_plus(F5, 2)
    spin5 = zoo.spin(F7, zoo.form_from_diagonal(F7, [1, 1, 1, 1]))
    spin6 = zoo.spin(F5, zoo.form_from_diagonal(F5, [1] * 5))
    for name, A in (("M2+ GF(5)", m2), ("spin4 GF(7)", spin5), ("spin5 GF(5)", spin6)):
        p = A.field.p
        T = A.table.array()
        n = A.dim
        eye = np.eye(n, dtype=np.int64)
        yield name, "jordan", (T, p)
        yield name, "polarization", (T, p)
        yield name, "missing", (T, eye[:1], eye[1:], p)


def timed(fn, args, backend, threads, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        hit = fn(*args, backend=backend, threads=threads)
        best = min(best, time.perf_counter() - t)
    return best, hit


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    if kernels._compiled is None:
        print("compiled kernels not built; nothing to compare")
        return
    fns = {"jordan": kernels.jordan_scan, "polarization": kernels.polarization_scan,
           "missing": kernels.missing_scan}
    print(f"{'algebra':14s} {'kernel':13s} {'cython s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, kind, call in cases():
        tc, hc = timed(fns[kind], call, "cython", args.threads, args.repeat)
        tn, hn = timed(fns[kind], call, "numpy", args.threads, args.repeat)
        assert hc == hn, (name, kind, hc, hn)
        print(f"{name:14s} {kind:13s} {tc:10.4f} {tn:10.4f} {tn / tc:8.1f}x")


if __name__ == "__main__":
    main()
