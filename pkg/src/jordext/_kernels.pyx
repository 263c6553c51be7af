# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive scan kernels (same contract as ``_kernels_py``)."""
import numpy as np
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 md(i64 v, i64 p) nogil:
    v %= p
    return v + p if v < 0 else v


cdef void left(const i64[:, :, ::1] T, i64 *u, i64 *L, int n, i64 p) noexcept nogil:
    # L[j*n + k] = (u * e_j)_k
    cdef int i, j, k
    cdef i64 s
    for j in range(n):
        for k in range(n):
            s = 0
            for i in range(n):
                if u[i]:
                    s += u[i] * T[i, j, k]
            L[j * n + k] = s % p


cdef void apply(i64 *L, i64 *v, i64 *out, int n, i64 p) noexcept nogil:
    cdef int j, k
    cdef i64 s
    for k in range(n):
        s = 0
        for j in range(n):
            if v[j]:
                s += v[j] * L[j * n + k]
        out[k] = s % p


cdef void matmul(i64 *X, i64 *Y, i64 *out, int r, int n, i64 p) noexcept nogil:
    # out (r x n) = X (r x n) @ Y (n x n)
    cdef int a, b, c
    cdef i64 s
    for a in range(r):
        for c in range(n):
            s = 0
            for b in range(n):
                s += X[a * n + b] * Y[b * n + c]
            out[a * n + c] = s % p


cdef void decode(i64 idx, i64 p, int m, i64 *out) noexcept nogil:
    cdef int c
    for c in range(m - 1, -1, -1):
        out[c] = idx % p
        idx //= p


def jordan_scan(const i64[:, :, ::1] T, i64 p, i64 start, i64 stop):
    cdef int n = T.shape[0]
    cdef i64 *buf = <i64 *> malloc(sizeof(i64) * (2 * n + 4 * n * n + 1))
    cdef i64 *a = buf
    cdef i64 *a2 = buf + n
    cdef i64 *La = buf + 2 * n
    cdef i64 *La2 = La + n * n
    cdef i64 *X = La2 + n * n
    cdef i64 *Y = X + n * n
    cdef i64 idx, found = -1
    cdef int j, k, col = -1
    try:
        with nogil:
            idx = start
            while idx < stop:
                decode(idx, p, n, a)
                left(T, a, La, n, p)
                apply(La, a, a2, n, p)
                left(T, a2, La2, n, p)
                matmul(La2, La, X, n, n, p)
                matmul(La, La2, Y, n, n, p)
                for j in range(n - 1, -1, -1):
                    for k in range(n):
                        if X[j * n + k] != Y[j * n + k]:
                            col = j
                            break
                    if col >= 0:
                        break
                if col >= 0:
                    found = idx
                    break
                idx += 1
    finally:
        free(buf)
    if found < 0:
        return None
    return int(found), int(col)


def polarization_scan(const i64[:, :, ::1] T, i64 p, i64 start, i64 stop):
    cdef int n = T.shape[0]
    cdef i64 *buf = <i64 *> malloc(sizeof(i64) * (6 * n + 3 * n * n + 1))
    cdef i64 *x = buf
    cdef i64 *x2 = buf + n
    cdef i64 *u = buf + 2 * n
    cdef i64 *v = buf + 3 * n
    cdef i64 *w = buf + 4 * n
    cdef i64 *z = buf + 5 * n
    cdef i64 *Lx = buf + 6 * n
    cdef i64 *Lx2 = Lx + n * n
    cdef i64 *Lu = Lx2 + n * n
    cdef i64 idx, found = -1, s, s2, val
    cdef int i, j, l, k, m, q, fj = -1, fl = -1
    try:
        with nogil:
            idx = start
            while idx < stop:
                decode(idx, p, n, x)
                left(T, x, Lx, n, p)
                apply(Lx, x, x2, n, p)
                left(T, x2, Lx2, n, p)
                j = n - 1
                while j >= 0 and fj < 0:
                    l = n - 1
                    while l >= 0:
                        # u = (x e_l) e_j ; Lu row l = x e_l
                        for k in range(n):
                            s = 0
                            for i in range(n):
                                s += Lx[l * n + i] * T[i, j, k]
                            u[k] = s % p
                        # w = e_j x
                        for k in range(n):
                            w[k] = Lx[j * n + k]
                        for k in range(n):
                            # t1 - t2
                            s = 0
                            for i in range(n):
                                s += Lx2[j * n + i] * T[i, l, k]
                            s2 = 0
                            for m in range(n):
                                s2 += T[j, l, m] * Lx2[m * n + k]
                            val = (s % p) - (s2 % p)
                            # t3 = u . x
                            s = 0
                            for m in range(n):
                                s += u[m] * Lx[m * n + k]
                            # t4 = (x e_l) . (e_j x)
                            s2 = 0
                            for i in range(n):
                                if Lx[l * n + i]:
                                    for q in range(n):
                                        s2 += (Lx[l * n + i] * w[q]) % p * T[i, q, k]
                            val += 2 * ((s % p) - (s2 % p))
                            if md(val, p) != 0:
                                fj = j
                                fl = l
                                break
                        if fj >= 0:
                            break
                        l -= 1
                    j -= 1
                if fj >= 0:
                    found = idx
                    break
                idx += 1
    finally:
        free(buf)
    if found < 0:
        return None
    return int(found), int(fj), int(fl)


cdef void assoc_rows(i64 *Wm, int r, i64 *Lu, i64 *Lz, i64 *t1, i64 *t2,
                     i64 *acc, i64 coef, int n, i64 p) noexcept nogil:
    # acc += coef * [u, w_row, z] for each row of Wm
    cdef int a, k
    matmul(Wm, Lu, t1, r, n, p)   # u w
    matmul(t1, Lz, t2, r, n, p)   # (u w) z
    for a in range(r * n):
        acc[a] += coef * t2[a]
    matmul(Wm, Lz, t1, r, n, p)   # w z
    matmul(t1, Lu, t2, r, n, p)   # u (w z)
    for a in range(r * n):
        acc[a] = md(acc[a] - coef * t2[a], p)


def missing_scan(const i64[:, :, ::1] T, const i64[:, ::1] Ab, const i64[:, ::1] Vb,
                 i64 p, i64 start, i64 stop):
    cdef int n = T.shape[0]
    cdef int dA = Ab.shape[0]
    cdef int dV = Vb.shape[0]
    cdef int r = dA + dV
    cdef i64 *buf = <i64 *> malloc(sizeof(i64) * (r + 5 * n + 5 * n * n + 4 * r * n + 1))
    cdef i64 *dig = buf
    cdef i64 *a = buf + r
    cdef i64 *x = a + n
    cdef i64 *a2 = x + n
    cdef i64 *x2 = a2 + n
    cdef i64 *ax = x2 + n
    cdef i64 *La = ax + n
    cdef i64 *Lx = La + n * n
    cdef i64 *La2 = Lx + n * n
    cdef i64 *Lx2 = La2 + n * n
    cdef i64 *Lax = Lx2 + n * n
    cdef i64 *Wm = Lax + n * n
    cdef i64 *t1 = Wm + r * n
    cdef i64 *t2 = t1 + r * n
    cdef i64 *G = t2 + r * n
    cdef i64 idx, found = -1, s
    cdef int i, k, c, col = -1
    for i in range(dA):
        for k in range(n):
            Wm[i * n + k] = Ab[i, k]
    for i in range(dV):
        for k in range(n):
            Wm[(dA + i) * n + k] = Vb[i, k]
    try:
        with nogil:
            idx = start
            while idx < stop:
                decode(idx, p, r, dig)
                for k in range(n):
                    s = 0
                    for i in range(dA):
                        s += dig[i] * Ab[i, k]
                    a[k] = s % p
                    s = 0
                    for i in range(dV):
                        s += dig[dA + i] * Vb[i, k]
                    x[k] = s % p
                left(T, a, La, n, p)
                left(T, x, Lx, n, p)
                apply(La, a, a2, n, p)
                apply(Lx, x, x2, n, p)
                apply(La, x, ax, n, p)
                left(T, a2, La2, n, p)
                left(T, x2, Lx2, n, p)
                left(T, ax, Lax, n, p)
                for c in range(r * n):
                    G[c] = 0
                assoc_rows(Wm, r, La2, Lx, t1, t2, G, 1, n, p)
                assoc_rows(Wm, r, Lax, La, t1, t2, G, 2, n, p)
                assoc_rows(Wm, r, Lx2, La, t1, t2, G, 1, n, p)
                assoc_rows(Wm, r, Lax, Lx, t1, t2, G, 2, n, p)
                for c in range(r - 1, -1, -1):
                    for k in range(n):
                        if G[c * n + k] != 0:
                            col = c
                            break
                    if col >= 0:
                        break
                if col >= 0:
                    found = idx
                    break
                idx += 1
    finally:
        free(buf)
    if found < 0:
        return None
    return int(found), int(col)
