"""Bilinear maps ``F^d1 x F^d2 -> F^d3`` stored as sparse coefficient tensors.

``B[i, j, k]`` is the ``k``-th coordinate of ``B(e_i, e_j)``.  Values are
immutable; every "modified" map is a new object.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import DimensionError
from .scalars import Field


class Bilinear:
    __slots__ = ("field", "shape", "coef", "_arr", "_obj", "_key")

    def __init__(self, field: Field, shape, coef=None):
        d1, d2, d3 = (int(s) for s in shape)
        self.field = field
        self.shape = (d1, d2, d3)
        clean = {}
        for (i, j, k), s in (coef or {}).items():
            if not (0 <= i < d1 and 0 <= j < d2 and 0 <= k < d3):
                raise DimensionError(f"index ({i},{j},{k}) outside shape {self.shape}")
            s = field.elem(s)
            if s != 0:
                clean[(i, j, k)] = s
        self.coef = clean
        self._arr = None
        self._obj = None
        self._key = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, field, shape):
        return cls(field, shape)

    @classmethod
    def from_dense(cls, field, dense):
        dense = np.asarray(dense, dtype=object)
        if dense.ndim != 3:
            raise DimensionError("dense tensor must have rank 3")
        coef = {idx: dense[idx] for idx in itertools.product(*map(range, dense.shape))
                if dense[idx] != 0}
        return cls(field, dense.shape, coef)

    @classmethod
    def from_function(cls, field, shape, fn):
        """Build from ``fn(i, j) -> vector`` giving ``B(e_i, e_j)``."""
        d1, d2, d3 = shape
        coef = {}
        for i in range(d1):
            for j in range(d2):
                v = fn(i, j)
                if len(v) != d3:
                    raise DimensionError(f"fn({i},{j}) has length {len(v)}, expected {d3}")
                for k, s in enumerate(v):
                    if s != 0:
                        coef[(i, j, k)] = s
        return cls(field, shape, coef)

    @classmethod
    def from_flat(cls, field, shape, values):
        """Inverse of :meth:`flat` (row-major over (i, j, k))."""
        d1, d2, d3 = shape
        values = list(values)
        if len(values) != d1 * d2 * d3:
            raise DimensionError("wrong number of coefficients")
        coef = {}
        for n, idx in enumerate(itertools.product(range(d1), range(d2), range(d3))):
            if values[n] != 0:
                coef[idx] = values[n]
        return cls(field, shape, coef)

    # -- access ----------------------------------------------------------------
    def __getitem__(self, idx):
        return self.coef.get(tuple(idx), self.field.zero)

    def entries(self):
        return sorted(self.coef.items())

    def flat(self):
        d1, d2, d3 = self.shape
        z = self.field.zero
        return tuple(self.coef.get(idx, z)
                     for idx in itertools.product(range(d1), range(d2), range(d3)))

    def key(self):
        """Serialized coefficient tuple; lexicographic order on keys is canonical."""
        if self._key is None:
            self._key = self.flat()
        return self._key

    def dense(self):
        d1, d2, d3 = self.shape
        out = [[[self.field.zero] * d3 for _ in range(d2)] for _ in range(d1)]
        for (i, j, k), s in self.coef.items():
            out[i][j][k] = s
        return out

    def array(self):
        """Dense int64 array (finite fields only), cached."""
        if self._arr is None:
            if self.field.p is None:
                raise ValueError("array() needs a finite field")
            a = np.zeros(self.shape, dtype=np.int64)
            for idx, s in self.coef.items():
                a[idx] = s
            self._arr = a
        return self._arr

    def obj(self):
        if self._obj is None:
            a = np.empty(self.shape, dtype=object)
            a[...] = self.field.zero
            for idx, s in self.coef.items():
                a[idx] = s
            self._obj = a
        return self._obj

    # -- evaluation ------------------------------------------------------------
    def __call__(self, u, v):
        d1, d2, d3 = self.shape
        if len(u) != d1 or len(v) != d2:
            raise DimensionError(
                f"arguments of lengths ({len(u)}, {len(v)}) for shape {self.shape}")
        F = self.field
        out = [F.zero] * d3
        for (i, j, k), s in self.coef.items():
            ui, vj = u[i], v[j]
            if ui != 0 and vj != 0:
                out[k] = F.add(out[k], F.mul(s, F.mul(ui, vj)))
        return tuple(out)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coef

    def is_symmetric(self) -> bool:
        if self.shape[0] != self.shape[1]:
            return False
        return all(self.coef.get((j, i, k), 0) == s for (i, j, k), s in self.coef.items())

    def asymmetry_witness(self):
        """First (i, j) in lexicographic order with B(e_i,e_j) != B(e_j,e_i)."""
        d = self.shape[0]
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(self.shape[2]):
                    if self[i, j, k] != self[j, i, k]:
                        return (i, j)
        return None

    def transpose(self) -> Bilinear:
        d1, d2, d3 = self.shape
        return Bilinear(self.field, (d2, d1, d3), {(j, i, k): s for (i, j, k), s in self.coef.items()})

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        F = self.field
        coef = dict(self.coef)
        for idx, s in other.coef.items():
            coef[idx] = F.add(coef.get(idx, F.zero), s)
        return Bilinear(F, self.shape, coef)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> Bilinear:
        F = self.field
        c = F.elem(c)
        return Bilinear(F, self.shape, {idx: F.mul(c, s) for idx, s in self.coef.items()})

    def __eq__(self, other):
        return (isinstance(other, Bilinear) and self.field == other.field
                and self.shape == other.shape and self.coef == other.coef)

    def __hash__(self):
        return hash((self.field, self.shape, frozenset(self.coef.items())))

    def __repr__(self):
        return f"Bilinear({self.field.name}, {self.shape}, {len(self.coef)} nonzero)"
