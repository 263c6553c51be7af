"""Generic polynomial-identity checking in three modes.

An identity is a function ``fn(ev, *args)`` returning a batch array of shape
``(N, d)`` that must vanish.  ``ev`` is an evaluator providing batched
bilinear evaluation (``ev.bil``), matrix application (``ev.lin``) and vector
arithmetic.  The same function body therefore runs:

* formally, on indeterminate coordinates (a :class:`~jordext.poly.Poly` per
  coordinate of every nonlinear argument),
* exhaustively, over every tuple in lexicographic order (first argument and
  first coordinate most significant),
* on seeded random samples.

Trailing arguments declared *linear* (``nlin``) only need basis vectors:
a multilinear map vanishes iff it vanishes on basis tuples, and the first
lexicographic counterexample is always a basis tuple, namely the
lexicographically largest failing index tuple.  Witnesses are thus identical
to the ones a full enumeration would produce.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import BoundExceeded, ModeError
from .poly import Poly
from .scalars import Field

DEFAULT_BOUND = 10**6
DEFAULT_SAMPLES = 200
CHUNK = 1 << 14
# int64 einsum stays exact while d * p^2 < 2^63
MODP_LIMIT = 1 << 26


def default_bound() -> int:
    env = os.environ.get("JORD_BOUND")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise ModeError(f"JORD_BOUND={env!r} is not a number") from None
    return DEFAULT_BOUND


@dataclass(frozen=True)
class Mode:
    kind: str  # "formal" | "exhaustive" | "sampled"
    bound: int | None = None
    seed: int = 0
    count: int = DEFAULT_SAMPLES

    @classmethod
    def formal(cls):
        return cls("formal")

    @classmethod
    def exhaustive(cls, bound=None):
        return cls("exhaustive", bound=bound)

    @classmethod
    def sampled(cls, seed=0, count=DEFAULT_SAMPLES):
        return cls("sampled", seed=seed, count=count)

    @classmethod
    def parse(cls, s, bound=None, seed=0, count=DEFAULT_SAMPLES):
        if s is None or s == "auto":
            return None
        if s not in ("formal", "exhaustive", "sampled"):
            raise ModeError(f"unknown mode {s!r}")
        return cls(s, bound=bound, seed=seed, count=count)

    def limit(self) -> int:
        return self.bound if self.bound is not None else default_bound()

    @property
    def label(self) -> str:
        if self.kind == "sampled":
            return f"sampled(seed={self.seed},count={self.count})"
        return self.kind


def resolve_mode(field: Field, mode: Mode | None, exponent: int) -> Mode:
    """Pick the default mode and enforce feasibility.

    ``exponent`` is the number of scalar coordinates an exhaustive run must
    enumerate, so the run visits ``p**exponent`` points.
    """
    if mode is None:
        if field.p is None:
            return Mode.formal()
        bound = default_bound()
        if field.p**exponent <= bound:
            return Mode.exhaustive(bound)
        return Mode.sampled()
    if mode.kind == "exhaustive":
        if field.p is None:
            raise ModeError("exhaustive mode needs a finite field")
        if field.p**exponent > mode.limit():
            raise BoundExceeded(
                f"exhaustive check needs {field.p}^{exponent} points, bound is {mode.limit()}")
    return mode


# -- reports -----------------------------------------------------------------
@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    mode: str
    witness: tuple | None = None
    note: str = ""

    def to_dict(self, field: Field | None = None):
        d = {"axiom": self.axiom, "passed": self.passed, "mode": self.mode}
        if self.witness is not None:
            fmt = field.fmt if field is not None else str
            d["witness"] = [[fmt(x) for x in v] for v in self.witness]
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ValidationReport:
    entries: list = dc_field(default_factory=list)
    field: Field | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self):
        return self.passed

    @property
    def failures(self):
        return [e for e in self.entries if not e.passed]

    def first_failure(self):
        return next((e for e in self.entries if not e.passed), None)

    def __getitem__(self, axiom):
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def __contains__(self, axiom):
        return any(e.axiom == axiom for e in self.entries)

    def add(self, entry: AxiomResult):
        self.entries.append(entry)
        return self

    def extend(self, other: ValidationReport):
        self.entries.extend(other.entries)
        if self.seed is None:
            self.seed = other.seed
        return self

    @property
    def modes(self):
        return sorted({e.mode for e in self.entries})

    def to_dict(self):
        d = {"passed": self.passed, "mode": ",".join(self.modes),
             "verdicts": [e.to_dict(self.field) for e in self.entries]}
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    def summary(self) -> str:
        lines = []
        for e in self.entries:
            line = f"{e.axiom}: {'pass' if e.passed else 'FAIL'} [{e.mode}]"
            if e.witness is not None:
                fmt = self.field.fmt if self.field is not None else str
                line += " witness " + " ".join(
                    "(" + ",".join(fmt(x) for x in v) + ")" for v in e.witness)
            if e.note:
                line += f" ({e.note})"
            lines.append(line)
        return "\n".join(lines)


# -- evaluators --------------------------------------------------------------
class _ModP:
    """int64 batches with entries reduced mod p."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p

    def zeros(self, n, d):
        return np.zeros((n, d), dtype=np.int64)

    def bil(self, B, u, v):
        t = np.einsum("ni,ijk->njk", u, B.array()) % self.p
        return np.einsum("nj,njk->nk", v, t) % self.p

    def lin(self, M, u):
        return (u @ M.array().T) % self.p

    def add(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = out + x
        return out % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def scale(self, c, x):
        return (self.field.elem(c) * x) % self.p

    def smul(self, s, x):
        """Row-wise scalar times vector: s has shape (N, 1)."""
        return (s * x) % self.p

    def const(self, v, n):
        return np.tile(np.array(v, dtype=np.int64).reshape(1, -1), (n, 1))

    def cat(self, *xs):
        return np.concatenate(xs, axis=1)

    def nonzero_rows(self, x):
        return np.any(x != 0, axis=1)

    def to_vec(self, row):
        return tuple(int(t) for t in row)


class _Obj:
    """Object batches holding Fractions, Python ints (reduced lazily) or Polys."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p

    def zeros(self, n, d):
        a = np.empty((n, d), dtype=object)
        a[...] = self.field.zero
        return a

    def _red(self, x):
        if self.p is not None:
            return x % self.p
        return x

    def bil(self, B, u, v):
        out = self.zeros(u.shape[0], B.shape[2])
        for (i, j, k), s in B.coef.items():
            out[:, k] = out[:, k] + s * (u[:, i] * v[:, j])
        return self._red(out)

    def lin(self, M, u):
        out = self.zeros(u.shape[0], M.nrows)
        for r, row in enumerate(M.rows):
            for c, s in enumerate(row):
                if s != 0:
                    out[:, r] = out[:, r] + s * u[:, c]
        return self._red(out)

    def add(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = out + x
        return self._red(out)

    def sub(self, x, y):
        return self._red(x - y)

    def neg(self, x):
        return self._red(-x)

    def scale(self, c, x):
        return self._red(self.field.elem(c) * x)

    def smul(self, s, x):
        return self._red(s * x)

    def const(self, v, n):
        a = self.zeros(n, len(v))
        for j, t in enumerate(v):
            a[:, j] = t
        return a

    def cat(self, *xs):
        return np.concatenate(xs, axis=1)

    def nonzero_rows(self, x):
        if x.shape[1] == 0:
            return np.zeros(x.shape[0], dtype=bool)
        f = np.vectorize(_nonzero, otypes=[bool])
        return np.any(f(x), axis=1)

    def to_vec(self, row):
        return tuple(self.field.elem(t) for t in row)


class _Sym(_Obj):
    """Poly batches: coefficients are already reduced."""

    def _red(self, x):
        return x


def _nonzero(x):
    if isinstance(x, Poly):
        return not x.is_zero()
    return x != 0


def evaluator(field: Field):
    if field.p is not None and field.p < MODP_LIMIT:
        return _ModP(field)
    return _Obj(field)


# -- the engine --------------------------------------------------------------
def _basis_combos(dims):
    """All basis-index tuples for the linear slots, lexicographic."""
    return list(itertools.product(*(range(d) for d in dims)))


def _basis_batch(ev, d, idx, rows_per, reps):
    """Rows of unit vectors e_idx[c], each combo repeated per outer row."""
    n = len(idx)
    if isinstance(ev, _ModP):
        a = np.zeros((n, d), dtype=np.int64)
        a[np.arange(n), idx] = 1
    else:
        a = ev.zeros(n, d)
        for r, c in enumerate(idx):
            a[r, c] = ev.field.one
    return np.tile(a, (reps, 1))


def _decode(idx, p, m):
    """Digits (most significant first) of integer indices in base p."""
    out = np.empty((len(idx), m), dtype=np.int64)
    rem = idx.copy()
    for c in range(m - 1, -1, -1):
        out[:, c] = rem % p
        rem //= p
    return out


def check_identity(field: Field, axiom: str, dims, fn, mode: Mode | None = None,
                   nlin: int = 0, witness_map=None) -> AxiomResult:
    """Check that ``fn(ev, *args)`` vanishes for all arguments in ``F^dims``.

    The last ``nlin`` arguments must enter ``fn`` linearly.  ``witness_map``
    rewrites a failing argument tuple into the reported witness.
    """
    dims = [int(d) for d in dims]
    outer = dims[: len(dims) - nlin]
    inner = dims[len(dims) - nlin:]
    mode = resolve_mode(field, mode, sum(outer))
    wmap = witness_map or (lambda args: args)
    if any(d == 0 for d in inner) and nlin:
        return AxiomResult(axiom, True, mode.label, note="vacuous")

    if mode.kind == "exhaustive":
        w = _exhaustive(field, dims, outer, inner, fn)
        if w is None:
            return AxiomResult(axiom, True, mode.label)
        return AxiomResult(axiom, False, mode.label, wmap(w))
    if mode.kind == "sampled":
        w = _sampled(field, dims, fn, mode.seed, mode.count)
        if w is None:
            return AxiomResult(axiom, True, mode.label)
        return AxiomResult(axiom, False, mode.label, wmap(w))
    if mode.kind == "formal":
        if _formal_zero(field, outer, inner, fn):
            return AxiomResult(axiom, True, mode.label)
        w = _pointwise_search(field, dims, outer, inner, fn)
        if w is None:
            return AxiomResult(axiom, False, mode.label,
                               note="nonzero as a polynomial; no pointwise counterexample found")
        return AxiomResult(axiom, False, mode.label, wmap(w))
    raise ModeError(f"unknown mode {mode.kind!r}")


def _exhaustive(field, dims, outer, inner, fn, limit_outer=None):
    ev = evaluator(field)
    p = field.p
    m = sum(outer)
    total = p**m if limit_outer is None else min(p**m, limit_outer)
    combos = _basis_combos(inner)
    L = len(combos)
    step = max(1, CHUNK // L)
    for start in range(0, total, step):
        stop = min(total, start + step)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = _decode(idx, p, m)
        if not isinstance(ev, _ModP):
            digits = digits.astype(object)
        C = stop - start
        args = []
        off = 0
        for d in outer:
            args.append(np.repeat(digits[:, off:off + d], L, axis=0))
            off += d
        for s, d in enumerate(inner):
            args.append(_basis_batch(ev, d, [c[s] for c in combos], L, C))
        bad = ev.nonzero_rows(fn(ev, *args)).reshape(C, L)
        rows = np.flatnonzero(bad.any(axis=1))
        if rows.size:
            r = rows[0]
            c = np.flatnonzero(bad[r])[-1]
            return tuple(ev.to_vec(a[r * L + c]) for a in args)
    return None


def _sampled(field, dims, fn, seed, count):
    rng = np.random.default_rng(seed)
    ev = evaluator(field)
    if field.p is None:
        raw = rng.integers(-9, 10, size=(count, sum(dims)))
        batch = np.empty(raw.shape, dtype=object)
        for idx, v in np.ndenumerate(raw):
            batch[idx] = Fraction(int(v))
    elif isinstance(ev, _ModP):
        batch = rng.integers(0, field.p, size=(count, sum(dims)), dtype=np.int64)
    else:
        batch = np.empty((count, sum(dims)), dtype=object)
        for idx in np.ndindex(batch.shape):
            batch[idx] = int(rng.integers(0, field.p))
    args, off = [], 0
    for d in dims:
        args.append(batch[:, off:off + d])
        off += d
    bad = np.flatnonzero(ev.nonzero_rows(fn(ev, *args)))
    if bad.size:
        r = bad[0]
        return tuple(ev.to_vec(a[r]) for a in args)
    return None


def _formal_zero(field, outer, inner, fn) -> bool:
    ev = _Sym(field)
    nv = sum(outer)
    combos = _basis_combos(inner)
    L = len(combos)
    args, off = [], 0
    for d in outer:
        a = np.empty((L, d), dtype=object)
        for c in range(d):
            v = Poly.var(field, nv, off + c)
            for r in range(L):
                a[r, c] = v
        args.append(a)
        off += d
    for s, d in enumerate(inner):
        b = ev.zeros(L, d)
        for r, c in enumerate(combos):
            b[r, c[s]] = Poly.const(field, nv, 1)
        args.append(b)
    out = fn(ev, *args)
    return not ev.nonzero_rows(out).any()


def _pointwise_search(field, dims, outer, inner, fn):
    """After a formal failure, look for a concrete counterexample."""
    if field.p is not None:
        bound = default_bound()
        if field.p ** sum(outer) <= bound:
            return _exhaustive(field, dims, outer, inner, fn)
        return _sampled(field, dims, fn, 0, 2000)
    # Q: a nonzero polynomial has a nonzero value at some small integer point
    for seed in range(5):
        w = _sampled(field, dims, fn, seed, 500)
        if w is not None:
            return w
    return None


def batch_from_vectors(field: Field, vectors):
    """Stack raw vectors into an evaluator batch."""
    ev = evaluator(field)
    if isinstance(ev, _ModP):
        return ev, np.array(vectors, dtype=np.int64).reshape(len(vectors), -1)
    a = np.empty((len(vectors), len(vectors[0]) if vectors else 0), dtype=object)
    for i, v in enumerate(vectors):
        for j, x in enumerate(v):
            a[i, j] = x
    return ev, a


def exhaustive_size(field: Field, dims) -> int:
    return field.p ** sum(dims)
