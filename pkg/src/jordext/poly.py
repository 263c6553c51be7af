"""Sparse multivariate polynomials over a :class:`~jordext.scalars.Field`.

Only what formal identity checking needs: ring operations, evaluation and a
zero test.  Terms are stored as ``{exponent tuple: nonzero coefficient}``.
"""
from __future__ import annotations

from .scalars import Field


class Poly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    @classmethod
    def const(cls, field, nvars, c):
        c = field.elem(c)
        return cls(field, nvars, {(0,) * nvars: c} if c != 0 else None)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.field, self.nvars, other)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Poly):
            c = F.elem(other)
            if c == 0:
                return Poly(F, self.nvars)
            return Poly(F, self.nvars, {e: F.mul(v, c) for e, v in self.terms.items()})
        if not self.terms or not other.terms:
            return Poly(F, self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return Poly(F, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.field, self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.terms == other.terms
        try:
            return (self - other).is_zero()
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __call__(self, point):
        """Evaluate at a sequence of raw field values."""
        F = self.field
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = F.mul(t, x ** k if F.p is None else pow(x, k, F.p))
            total = F.add(total, t)
        return total

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"t{i}" if k == 1 else f"t{i}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"{self.field.fmt(c)}*{mono}" if mono else self.field.fmt(c))
        return " + ".join(parts)


def poly_eval_zero(p) -> bool:
    """True iff ``p`` has no nonzero coefficient (plain zeros count too)."""
    if isinstance(p, Poly):
        return p.is_zero()
    return p == 0
