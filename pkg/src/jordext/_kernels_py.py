"""Pure numpy implementation of the exhaustive scan kernels.

Each scan walks outer-argument indices ``start <= idx < stop`` (base-p digits,
most significant first), builds the operator that is linear in the remaining
arguments and reports the first index whose operator is nonzero, together
with the basis positions of the lexicographically first failing inner tuple.
The algebra is assumed commutative, so ``u*v`` is read off the left
multiplication matrix of either factor.
"""
import numpy as np

CHUNK = 4096


def _digits(start, stop, p, m):
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), m), dtype=np.int64)
    for c in range(m - 1, -1, -1):
        out[:, c] = idx % p
        idx //= p
    return out


def _left(T, u, p):
    # L[n, j, k] = (u * e_j)_k
    return np.einsum("ni,ijk->njk", u, T) % p


def _apply(L, v, p):
    return np.einsum("nj,njk->nk", v, L) % p


def _mm(X, Y, p):
    return np.matmul(X, Y) % p


def jordan_scan(T, p, start, stop):
    n = T.shape[0]
    for s in range(start, stop, CHUNK):
        e = min(stop, s + CHUNK)
        a = _digits(s, e, p, n)
        La = _left(T, a, p)
        a2 = _apply(La, a, p)
        La2 = _left(T, a2, p)
        M = (_mm(La2, La, p) - _mm(La, La2, p)) % p
        bad = np.any(M != 0, axis=2)
        rows = np.flatnonzero(bad.any(axis=1))
        if rows.size:
            r = rows[0]
            return s + int(r), int(np.flatnonzero(bad[r])[-1])
    return None


def polarization_scan(T, p, start, stop):
    n = T.shape[0]
    for s in range(start, stop, max(1, CHUNK // max(1, n * n))):
        e = min(stop, s + max(1, CHUNK // max(1, n * n)))
        x = _digits(s, e, p, n)
        Lx = _left(T, x, p)
        x2 = _apply(Lx, x, p)
        Lx2 = _left(T, x2, p)
        # [x^2, e_j, e_l] and [x e_l, e_j, x], indexed [n, j, l, k]
        t1 = np.einsum("nji,ilk->njlk", Lx2, T) % p
        t2 = np.einsum("jlm,nmk->njlk", T, Lx2) % p
        q = np.einsum("nli,ijm->njlm", Lx, T) % p
        t3 = np.einsum("njlm,nmk->njlk", q, Lx) % p
        u = np.einsum("nli,iqk->nlqk", Lx, T) % p
        t4 = np.einsum("nlqk,njq->njlk", u, Lx) % p
        P = (t1 - t2 + 2 * (t3 - t4)) % p
        bad = np.any(P != 0, axis=3)
        rows = np.flatnonzero(bad.reshape(len(x), -1).any(axis=1))
        if rows.size:
            r = rows[0]
            j = int(np.flatnonzero(bad[r].any(axis=1))[-1])
            l = int(np.flatnonzero(bad[r, j])[-1])
            return s + int(r), j, l
    return None


def _assoc_rows(Wm, Lu, Lz, p):
    # [u, w_r, z] for every row w_r of Wm: (u w) z - u (w z)
    uw = np.einsum("rj,njk->nrk", Wm, Lu) % p
    wz = np.einsum("rj,njk->nrk", Wm, Lz) % p
    return (_mm(uw, Lz, p) - _mm(wz, Lu, p)) % p


def missing_scan(T, Ab, Vb, p, start, stop):
    dA, dV = Ab.shape[0], Vb.shape[0]
    Wm = np.concatenate([Ab, Vb], axis=0)
    for s in range(start, stop, CHUNK):
        e = min(stop, s + CHUNK)
        dig = _digits(s, e, p, dA + dV)
        a = (dig[:, :dA] @ Ab) % p
        x = (dig[:, dA:] @ Vb) % p
        La = _left(T, a, p)
        Lx = _left(T, x, p)
        a2 = _apply(La, a, p)
        x2 = _apply(Lx, x, p)
        ax = _apply(La, x, p)
        La2, Lx2, Lax = _left(T, a2, p), _left(T, x2, p), _left(T, ax, p)
        G = (_assoc_rows(Wm, La2, Lx, p) + 2 * _assoc_rows(Wm, Lax, La, p)
             + _assoc_rows(Wm, Lx2, La, p) + 2 * _assoc_rows(Wm, Lax, Lx, p)) % p
        bad = np.any(G != 0, axis=2)
        rows = np.flatnonzero(bad.any(axis=1))
        if rows.size:
            r = rows[0]
            return s + int(r), int(np.flatnonzero(bad[r])[-1])
    return None
