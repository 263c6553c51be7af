"""Exact scalar fields: the rationals and prime fields GF(p), p odd.

Elements are kept as raw Python values (``Fraction`` for Q, canonical ``int``
residues for GF(p)); :class:`Field` carries the arithmetic.  :class:`Scalar`
is a tagged wrapper for callers who want operator syntax.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import CharacteristicError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p is None``, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if self.p == 2:
            raise CharacteristicError("characteristic 2 is not allowed")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")

    @classmethod
    def rationals(cls) -> Field:
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> Field:
        return cls(int(p))

    # -- descriptors --------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __repr__(self):
        return f"Field({self.name})"

    # -- elements -----------------------------------------------------------
    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def elem(self, x):
        """Coerce an int, Fraction, numeric string or Scalar into this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise ValueError(f"scalar over {x.field.name} used in {self.name}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self):
        if self.p is None:
            raise ValueError("Q has no finite element listing")
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        s = s.strip()
        if self.p is None:
            return Fraction(s)
        if "/" in s:
            num, den = s.split("/")
            return (int(num) * pow(int(den), -1, self.p)) % self.p
        return int(s) % self.p


@total_ordering
class Scalar:
    """A field element tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = field.elem(value)

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.value
        return self.field.elem(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.elem(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Scalar({self.field.name}, {self.field.fmt(self.value)})"

    def __str__(self):
        return self.field.fmt(self.value)


Q = Field.rationals()


def GF(p: int) -> Field:
    return Field.gf(p)
