"""Commutative algebras given by structure constants, and the Jordan checks.

``A.table[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.
Algebras are immutable apart from their verification status, which only
ever moves upwards (unchecked -> commutative -> Jordan).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import kernels
from .errors import BoundExceeded, DimensionError, UnverifiedError
from .identities import (AxiomResult, Mode, ValidationReport, MODP_LIMIT, check_identity,
                         default_bound, resolve_mode)
from .linalg import (Matrix, all_vectors, coordinates, gl_order, independent, is_zero_vec,
                     span_rref, vcomb, vunit, vzero)
from .scalars import Field
from .tensors import Bilinear


class Status(IntEnum):
    UNCHECKED = 0
    COMMUTATIVE = 1
    JORDAN = 2


class Algebra:
    __slots__ = ("field", "dim", "table", "status", "verified_mode")

    def __init__(self, field: Field, dim: int, table=None, status=Status.UNCHECKED,
                 verified_mode=None):
        if dim < 0:
            raise DimensionError("negative dimension")
        if table is None:
            table = Bilinear(field, (dim, dim, dim))
        elif not isinstance(table, Bilinear):
            table = Bilinear(field, (dim, dim, dim), table)
        if table.shape != (dim, dim, dim):
            raise DimensionError(f"table shape {table.shape} for dim {dim}")
        if table.field != field:
            raise ValueError("table over a different field")
        self.field = field
        self.dim = dim
        self.table = table
        self.status = Status(status)
        self.verified_mode = verified_mode

    @classmethod
    def from_upper(cls, field, dim, entries):
        """Symmetric table from entries ``{(i, j, k): s}`` with ``i <= j``."""
        coef = {}
        for (i, j, k), s in entries.items():
            if i > j:
                raise DimensionError(f"entry ({i},{j},{k}) has i > j")
            coef[(i, j, k)] = s
            coef[(j, i, k)] = s
        return cls(field, dim, coef)

    # -- status ---------------------------------------------------------------
    def _upgrade(self, status, mode=None):
        if status > self.status:
            self.status = status
            if status == Status.JORDAN:
                self.verified_mode = mode

    @property
    def is_jordan(self) -> bool:
        return self.status >= Status.JORDAN

    def require_jordan(self, what="algebra"):
        if not self.is_jordan:
            raise UnverifiedError(f"{what} is not Jordan-verified")

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.dim, self.table))

    def __repr__(self):
        return f"Algebra({self.field.name}, dim={self.dim}, {self.status.name.lower()})"

    # -- arithmetic -----------------------------------------------------------
    def vec(self, v):
        v = tuple(self.field.elem(x) for x in v)
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in an algebra of dim {self.dim}")
        return v

    def e(self, i):
        return vunit(self.field, self.dim, i)

    def zero(self):
        return vzero(self.field, self.dim)

    def mul(self, x, y):
        return self.table(self.vec(x), self.vec(y))

    def square(self, x):
        return self.mul(x, x)

    def associator(self, x, y, z):
        F = self.field
        lhs = self.mul(self.mul(x, y), z)
        rhs = self.mul(x, self.mul(y, z))
        return tuple(F.sub(a, b) for a, b in zip(lhs, rhs))

    def polarization(self, x, y, z):
        """P(x, y, z) = [x^2, y, z] + 2 [x z, y, x]."""
        F = self.field
        t1 = self.associator(self.square(x), y, z)
        t2 = self.associator(self.mul(x, z), y, x)
        return tuple(F.add(a, F.mul(2, b)) for a, b in zip(t1, t2))

    def left_matrix(self, x) -> Matrix:
        """Matrix of y -> x * y."""
        cols = [self.mul(x, self.e(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim) if self.dim else \
            Matrix.zeros(self.field, 0, 0)

    def is_abelian(self) -> bool:
        return self.table.is_zero()


# -- constructors ---------------------------------------------------------------
def abelian(field: Field, n: int) -> Algebra:
    return Algebra(field, n, status=Status.JORDAN, verified_mode="exact")


def unit_field(field: Field) -> Algebra:
    """The 1-dimensional algebra k with e * e = e."""
    return Algebra(field, 1, {(0, 0, 0): 1}, status=Status.JORDAN, verified_mode="exact")


def direct_product(A: Algebra, B: Algebra) -> Algebra:
    if A.field != B.field:
        raise ValueError("fields differ")
    n, m = A.dim, B.dim
    coef = dict(A.table.coef)
    for (i, j, k), s in B.table.coef.items():
        coef[(n + i, n + j, n + k)] = s
    status = min(A.status, B.status)
    return Algebra(A.field, n + m, coef, status=status,
                   verified_mode="product" if status == Status.JORDAN else None)


def transport(A: Algebra, psi: Matrix) -> Algebra:
    """The algebra B on the same space making ``psi: A -> B`` an isomorphism."""
    if psi.shape != (A.dim, A.dim):
        raise DimensionError("transport needs a square matrix of size dim A")
    inv = psi.inverse()
    F = A.field
    cols = [inv.columns()[i] for i in range(A.dim)]

    def prod(i, j):
        return psi.apply(A.table(cols[i], cols[j]))

    table = Bilinear.from_function(F, (A.dim,) * 3, prod)
    return Algebra(F, A.dim, table, status=A.status, verified_mode=A.verified_mode)


def subalgebra(A: Algebra, basis) -> Algebra:
    """Algebra structure on ``span(basis)`` in the given basis coordinates."""
    if not is_subalgebra(A, basis):
        raise DimensionError("basis does not span a subalgebra")
    F = A.field
    m = len(basis)

    def prod(i, j):
        return coordinates(F, list(basis), A.mul(basis[i], basis[j]))

    table = Bilinear.from_function(F, (m, m, m), prod)
    return Algebra(F, m, table, status=A.status, verified_mode=A.verified_mode)


def from_associative_plus(field: Field, dim: int, assoc) -> Algebra:
    """A^+ with x * y = (xy + yx)/2 for an associative table ``assoc``."""
    if not isinstance(assoc, Bilinear):
        assoc = Bilinear(field, (dim, dim, dim), assoc)
    F = field
    basis = [vunit(F, dim, i) for i in range(dim)]
    # basis triples suffice: the associator is trilinear
    for i, j, k in itertools.product(range(dim), repeat=3):
        lhs = assoc(assoc(basis[i], basis[j]), basis[k])
        rhs = assoc(basis[i], assoc(basis[j], basis[k]))
        if lhs != rhs:
            raise ValueError(f"input is not associative at (e{i}, e{j}, e{k})")
    half = F.inv(F.elem(2))
    coef = {}
    for (i, j, k), s in assoc.coef.items():
        for key in ((i, j, k), (j, i, k)):
            coef[key] = F.add(coef.get(key, F.zero), F.mul(half, s))
    A = Algebra(F, dim, coef)
    check_jordan(A)
    return A


# -- identity functions (evaluated by the generic engine) ---------------------
def jordan_identity(T):
    def fn(ev, a, b):
        a2 = ev.bil(T, a, a)
        return ev.sub(ev.bil(T, ev.bil(T, a2, b), a), ev.bil(T, a2, ev.bil(T, b, a)))
    return fn


def _assoc(ev, T, u, v, w):
    return ev.sub(ev.bil(T, ev.bil(T, u, v), w), ev.bil(T, u, ev.bil(T, v, w)))


def polarization_expr(ev, T, x, y, z):
    return ev.add(_assoc(ev, T, ev.bil(T, x, x), y, z),
                  ev.scale(2, _assoc(ev, T, ev.bil(T, x, z), y, x)))


def polarization_identity(T):
    def fn(ev, x, y, z):
        return polarization_expr(ev, T, x, y, z)
    return fn


# -- checks -----------------------------------------------------------------
def _kernel_ok(field: Field) -> bool:
    return field.p is not None and field.p < MODP_LIMIT


def check_commutative(A: Algebra, mode: Mode | None = None) -> ValidationReport:
    """Exact: the table is symmetric in its first two slots."""
    rep = ValidationReport(field=A.field)
    w = A.table.asymmetry_witness()
    if w is None:
        rep.add(AxiomResult("commutative", True, "exact"))
        A._upgrade(Status.COMMUTATIVE)
    else:
        i, j = w
        rep.add(AxiomResult("commutative", False, "exact", (A.e(i), A.e(j))))
    return rep


def check_jordan(A: Algebra, mode: Mode | None = None, backend=None) -> ValidationReport:
    """Commutativity plus the Jordan identity (a^2 b) a = a^2 (b a)."""
    rep = check_commutative(A)
    commutative = rep.passed
    m = resolve_mode(A.field, mode, A.dim)
    if A.dim == 0:
        res = AxiomResult("jordan", True, m.label, note="vacuous")
    elif m.kind == "exhaustive" and commutative and _kernel_ok(A.field):
        p = A.field.p
        hit = kernels.jordan_scan(A.table.array(), p, backend=backend)
        if hit is None:
            res = AxiomResult("jordan", True, m.label)
        else:
            a = kernels.decode_index(hit[0], p, A.dim)
            res = AxiomResult("jordan", False, m.label, (a, A.e(hit[1])))
    else:
        res = check_identity(A.field, "jordan", [A.dim, A.dim], jordan_identity(A.table),
                             m, nlin=1)
    rep.add(res)
    if m.kind == "sampled":
        rep.seed = m.seed
    if rep.passed:
        A._upgrade(Status.JORDAN, m.label)
    return rep


def check_jordan_basis(A: Algebra) -> ValidationReport:
    """The Jordan identity on basis pairs (e_i, e_j) only; a weak necessary test."""
    rep = ValidationReport(field=A.field)
    for i in range(A.dim):
        a = A.e(i)
        a2 = A.square(a)
        for j in range(A.dim):
            b = A.e(j)
            if A.mul(A.mul(a2, b), a) != A.mul(a2, A.mul(b, a)):
                return rep.add(AxiomResult("jordan-basis", False, "basis", (a, b)))
    return rep.add(AxiomResult("jordan-basis", True, "basis"))


def check_polarization_relation(A: Algebra, mode: Mode | None = None,
                                backend=None) -> ValidationReport:
    rep = ValidationReport(field=A.field)
    m = resolve_mode(A.field, mode, A.dim)
    if m.kind == "sampled":
        rep.seed = m.seed
    if A.dim == 0:
        return rep.add(AxiomResult("polarization", True, m.label, note="vacuous"))
    if m.kind == "exhaustive" and _kernel_ok(A.field) and A.table.is_symmetric():
        p = A.field.p
        hit = kernels.polarization_scan(A.table.array(), p, backend=backend)
        if hit is None:
            return rep.add(AxiomResult("polarization", True, m.label))
        x = kernels.decode_index(hit[0], p, A.dim)
        return rep.add(AxiomResult("polarization", False, m.label, (x, A.e(hit[1]), A.e(hit[2]))))
    return rep.add(check_identity(A.field, "polarization", [A.dim] * 3,
                                  polarization_identity(A.table), m, nlin=2))


def missing_relation_check(W: Algebra, A_basis, V_basis, mode: Mode | None = None,
                           axiom="missing", backend=None) -> ValidationReport:
    """P(a,b,x) + P(x,b,a) + P(a,y,x) + P(x,y,a) = 0 for a, b in span(A_basis)
    and x, y in span(V_basis).  Witnesses are reported as (a, b, x, y)."""
    F = W.field
    A_basis = [W.vec(v) for v in A_basis]
    V_basis = [W.vec(v) for v in V_basis]
    dA, dV = len(A_basis), len(V_basis)
    if dA + dV != W.dim or not independent(F, A_basis + V_basis, W.dim):
        raise DimensionError("A_basis and V_basis must together form a basis of W")
    rep = ValidationReport(field=F)
    m = resolve_mode(F, mode, dA + dV)
    if m.kind == "sampled":
        rep.seed = m.seed
    if dA == 0 or dV == 0:
        # with one side zero the relation reduces to P(a, b, 0) = 0
        return rep.add(AxiomResult(axiom, True, m.label, note="vacuous"))
    zeroW = W.zero()
    if m.kind == "exhaustive" and _kernel_ok(F) and W.table.is_symmetric():
        p = F.p
        hit = kernels.missing_scan(W.table.array(), A_basis, V_basis, p, backend=backend)
        if hit is None:
            return rep.add(AxiomResult(axiom, True, m.label))
        digits = kernels.decode_index(hit[0], p, dA + dV)
        a = vcomb(F, digits[:dA], A_basis, W.dim)
        x = vcomb(F, digits[dA:], V_basis, W.dim)
        c = hit[1]
        b, y = (A_basis[c], zeroW) if c < dA else (zeroW, V_basis[c - dA])
        return rep.add(AxiomResult(axiom, False, m.label, (a, b, x, y)))

    T = W.table
    Ab = Matrix.from_columns(F, A_basis, W.dim)
    Vb = Matrix.from_columns(F, V_basis, W.dim)
    Wb = Matrix.from_columns(F, A_basis + V_basis, W.dim)

    def fn(ev, al, xi, w):
        a, x, u = ev.lin(Ab, al), ev.lin(Vb, xi), ev.lin(Wb, w)
        return ev.add(polarization_expr(ev, T, a, u, x), polarization_expr(ev, T, x, u, a))

    def wmap(args):
        al, xi, w = args
        b = vcomb(F, w[:dA], A_basis, W.dim)
        y = vcomb(F, w[dA:], V_basis, W.dim)
        return (vcomb(F, al, A_basis, W.dim), b, vcomb(F, xi, V_basis, W.dim), y)

    return rep.add(check_identity(F, axiom, [dA, dV, dA + dV], fn, m, nlin=1, witness_map=wmap))


# -- subspaces, morphisms ---------------------------------------------------------
def _check_basis(A: Algebra, basis):
    basis = [A.vec(v) for v in basis]
    if not independent(A.field, basis, A.dim):
        raise DimensionError("basis vectors are linearly dependent")
    return basis


def is_subalgebra(A: Algebra, basis) -> bool:
    basis = _check_basis(A, basis)
    rb = span_rref(A.field, basis, A.dim)
    return all(_in_rref_span(A.field, rb, A.mul(u, v))
               for u, v in itertools.combinations_with_replacement(basis, 2))


def is_ideal(A: Algebra, basis) -> bool:
    basis = _check_basis(A, basis)
    rb = span_rref(A.field, basis, A.dim)
    return all(_in_rref_span(A.field, rb, A.mul(A.e(i), u))
               for i in range(A.dim) for u in basis)


def _in_rref_span(F, rb, v) -> bool:
    if is_zero_vec(v):
        return True
    if not rb:
        return False
    return coordinates(F, list(rb), v) is not None


def check_algebra_morphism(phi: Matrix, A: Algebra, B: Algebra, mode: Mode | None = None) -> bool:
    """phi(x y) = phi(x) phi(y).  Bilinearity makes the basis-pair test exact,
    so the result is the same in every mode."""
    if phi.shape != (B.dim, A.dim):
        raise DimensionError(f"map of shape {phi.shape} between dims {A.dim} -> {B.dim}")
    cols = phi.columns()
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = phi.apply(A.table(A.e(i), A.e(j)))
            if lhs != B.table(cols[i], cols[j]):
                return False
            if i != j and phi.apply(A.table(A.e(j), A.e(i))) != B.table(cols[j], cols[i]):
                return False
    return True


def check_jacobson_representation(A: Algebra, rho: Bilinear, mode: Mode | None = None,
                                  right: bool = False) -> bool:
    """rho(a) rho(a^2) = rho(a^2) rho(a) on V.

    ``rho`` has shape (dim A, dim V, dim V) with rho(a, v) = rho(a)(v); with
    ``right=True`` it has shape (dim V, dim A, dim V) and reads v <| a.
    """
    F = A.field
    R = rho.transpose() if right else rho
    if R.shape[0] != A.dim or R.shape[1] != R.shape[2]:
        raise DimensionError(f"representation of shape {rho.shape} for dim A = {A.dim}")
    T = A.table

    def fn(ev, a, v):
        a2 = ev.bil(T, a, a)
        return ev.sub(ev.bil(R, a, ev.bil(R, a2, v)), ev.bil(R, a2, ev.bil(R, a, v)))

    return check_identity(F, "jacobson", [A.dim, R.shape[1]], fn, mode, nlin=1).passed


def canonical_dual_action(A: Algebra) -> Bilinear:
    """(a |> f)(b) = f(a b) on the dual space, shape (n, n, n)."""
    n = A.dim
    return Bilinear(A.field, (n, n, n),
                    {(i, l, j): s for (i, j, l), s in A.table.coef.items()})


# -- batched morphism tests (finite fields) ----------------------------------------
def _morphism_mask(psis, TA, TB, p):
    """Which of the stacked maps ``psis`` (N, m, n) are morphisms A -> B."""
    lhs = np.einsum("Nkl,ijl->Nijk", psis, TA) % p
    t = np.einsum("Nai,abk->Nibk", psis, TB) % p
    rhs = np.einsum("Nbj,Nibk->Nijk", psis, t) % p
    return np.all((lhs == rhs).reshape(len(psis), -1), axis=1)


def all_invertible(field: Field, n: int, bound=None):
    """GL_n(F) as an (N, n, n) int64 array in lexicographic row order."""
    p = field.p
    if p is None:
        raise ValueError("needs a finite field")
    total = p ** (n * n)
    if total > (bound or default_bound()):
        raise BoundExceeded(f"{p}^{n * n} matrices exceeds bound")
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, n * n), dtype=np.int64)
    for c in range(n * n - 1, -1, -1):
        digits[:, c] = idx % p
        idx //= p
    M = digits.reshape(total, n, n)
    return M[_det_mod_p(M, p) != 0]


def _det_mod_p(M, p):
    """Determinants mod p of stacked small matrices via batched elimination."""
    M = M.copy() % p
    N, n, _ = M.shape
    det = np.ones(N, dtype=np.int64)
    for c in range(n):
        col = M[:, c:, c]
        has = col != 0
        piv = np.where(has.any(axis=1), has.argmax(axis=1) + c, -1)
        alive = piv >= 0
        det[~alive] = 0
        rows = np.arange(N)
        pv = np.where(alive, piv, c)
        swap = alive & (pv != c)
        det[swap] = (-det[swap]) % p
        tmp = M[rows, c].copy()
        M[rows, c] = M[rows, pv]
        M[rows, pv] = tmp
        d = M[:, c, c]
        det = (det * d) % p
        inv = np.array([pow(int(x), -1, p) if x else 0 for x in d], dtype=np.int64)
        for r in range(c + 1, n):
            f = (M[:, r, c] * inv) % p
            M[:, r] = (M[:, r] - f[:, None] * M[:, c]) % p
    return det


def find_isomorphism(A: Algebra, B: Algebra, bound=None) -> Matrix | None:
    """Brute-force search over GL_n for an isomorphism A -> B (lexicographic first)."""
    if A.field != B.field or A.dim != B.dim:
        return None
    F = A.field
    if A.dim == 0:
        return Matrix.zeros(F, 0, 0)
    G = all_invertible(F, A.dim, bound)
    TA, TB = A.table.array(), B.table.array()
    for s in range(0, len(G), 4096):
        batch = G[s:s + 4096]
        ok = np.flatnonzero(_morphism_mask(batch, TA, TB, F.p))
        if ok.size:
            return Matrix.from_array(F, batch[ok[0]])
    return None


@dataclass(frozen=True)
class MorphismPair:
    """psi(a, x) = (a + r(x), v(x)); r is dimA x dimV, v is dimV x dimV."""

    r: Matrix
    v: Matrix

    def matrix(self, dimA: int) -> Matrix:
        """Block matrix [[I, r], [0, v]] on A x V."""
        F = self.v.field
        dV = self.v.nrows
        top = Matrix.identity(F, dimA).hstack(self.r) if dimA else Matrix.zeros(F, 0, dV)
        bottom = Matrix.zeros(F, dV, dimA).hstack(self.v)
        return top.vstack(bottom)

    @classmethod
    def from_matrix(cls, psi: Matrix, dimA: int) -> MorphismPair:
        F = psi.field
        n = psi.nrows
        r = Matrix._raw(F, [row[dimA:] for row in psi.rows[:dimA]], n - dimA)
        v = Matrix._raw(F, [row[dimA:] for row in psi.rows[dimA:]], n - dimA)
        return cls(r, v)

    @classmethod
    def identity(cls, field, dimA, dimV):
        return cls(Matrix.zeros(field, dimA, dimV), Matrix.identity(field, dimV))


def stabilizing_maps(field: Field, dimA: int, dimV: int, bound=None):
    """All invertible block maps [[I, r], [0, v]] as an (N, n, n) array.

    Order: (r = 0, v = id) first, then v in lexicographic order and, for each
    v, r in lexicographic order.
    """
    p = field.p
    if p is None:
        raise ValueError("needs a finite field")
    size = gl_order(p, dimV) * p ** (dimA * dimV)
    if size > (bound or default_bound()):
        raise BoundExceeded(f"{size} stabilizing maps exceeds bound")
    n = dimA + dimV
    Vs = all_invertible(field, dimV, bound)
    nr = p ** (dimA * dimV)
    idx = np.arange(nr, dtype=np.int64)
    R = np.empty((nr, dimA * dimV), dtype=np.int64)
    for c in range(dimA * dimV - 1, -1, -1):
        R[:, c] = idx % p
        idx //= p
    R = R.reshape(nr, dimA, dimV)
    out = np.zeros((len(Vs) * nr, n, n), dtype=np.int64)
    out[:, np.arange(dimA), np.arange(dimA)] = 1
    out[:, :dimA, dimA:] = np.tile(R, (len(Vs), 1, 1))
    out[:, dimA:, dimA:] = np.repeat(Vs, nr, axis=0)
    ident = np.eye(n, dtype=np.int64)
    first = np.flatnonzero(np.all((out == ident).reshape(len(out), -1), axis=1))
    order = np.concatenate([first, np.setdiff1d(np.arange(len(out)), first)])
    return out[order]


def find_stabilizing_isomorphism(E1: Algebra, E2: Algebra, dimA: int,
                                 bound=None) -> MorphismPair | None:
    """An isomorphism psi(a, x) = (a + r(x), v(x)) from E1 to E2, or None."""
    if E1.field != E2.field or E1.dim != E2.dim:
        raise DimensionError("algebras of different dimension or field")
    F = E1.field
    dimV = E1.dim - dimA
    maps = stabilizing_maps(F, dimA, dimV, bound)
    T1, T2 = E1.table.array(), E2.table.array()
    for s in range(0, len(maps), 4096):
        batch = maps[s:s + 4096]
        ok = np.flatnonzero(_morphism_mask(batch, T1, T2, F.p))
        if ok.size:
            return MorphismPair.from_matrix(Matrix.from_array(F, batch[ok[0]]), dimA)
    return None


def transport_batch(T, psis, psi_invs, p):
    """Structure tensors psi . T(psi^-1 x, psi^-1 y), stacked: (N, n, n, n)."""
    t = np.einsum("Nai,abk->Nibk", psi_invs, T) % p
    t = np.einsum("Nbj,Nibk->Nijk", psi_invs, t) % p
    return np.einsum("Nlk,Nijk->Nijl", psis, t) % p


def inverse_batch(psis, p):
    """Inverses mod p of stacked invertible matrices (Gauss-Jordan, batched)."""
    N, n, _ = psis.shape
    M = np.concatenate([psis % p, np.broadcast_to(np.eye(n, dtype=np.int64), (N, n, n))], axis=2)
    rows = np.arange(N)
    for c in range(n):
        piv = (M[:, c:, c] != 0).argmax(axis=1) + c
        tmp = M[rows, c].copy()
        M[rows, c] = M[rows, piv]
        M[rows, piv] = tmp
        inv = np.array([pow(int(x), -1, p) for x in M[:, c, c]], dtype=np.int64)
        M[:, c] = (M[:, c] * inv[:, None]) % p
        for r in range(n):
            if r != c:
                f = M[:, r, c].copy()
                M[:, r] = (M[:, r] - f[:, None] * M[:, c]) % p
    return M[:, :, n:]


# -- ideals and quotients ---------------------------------------------------------
def iter_subspaces(field: Field, n: int, k: int):
    """k-dimensional subspaces of F^n as RREF bases, in a fixed order:
    pivot sets lexicographically, then free entries lexicographically."""
    F = field
    for piv in itertools.combinations(range(n), k):
        slots = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
        for vals in itertools.product(F.elements(), repeat=len(slots)):
            rows = [[F.zero] * n for _ in range(k)]
            for r, c in enumerate(piv):
                rows[r][c] = F.one
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def count_subspaces(p: int, n: int, k: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def find_ideals(A: Algebra, max_dim: int | None = None, bound=None):
    """All ideals of dimension <= max_dim (default: proper ones, dim < n).

    Ordered by dimension, then by the subspace enumeration order.  The zero
    ideal comes first.
    """
    F = A.field
    if F.p is None:
        raise ValueError("ideal search needs a finite field")
    if max_dim is None:
        max_dim = A.dim - 1
    max_dim = min(max_dim, A.dim)
    total = sum(count_subspaces(F.p, A.dim, k) for k in range(max_dim + 1))
    if total > (bound or default_bound()):
        raise BoundExceeded(f"{total} subspaces exceeds bound")
    out = []
    for k in range(max_dim + 1):
        for basis in iter_subspaces(F, A.dim, k):
            if is_ideal(A, list(basis)):
                out.append(basis)
    return out


def complement_basis(field: Field, basis, n: int):
    """Unit vectors at the non-pivot columns of the RREF of ``basis``."""
    rb = span_rref(field, list(basis), n)
    piv = [next(c for c in range(n) if r[c] != 0) for r in rb]
    return [vunit(field, n, c) for c in range(n) if c not in piv]


@dataclass
class Quotient:
    algebra: Algebra
    pi: Matrix       # A -> A/I
    section: Matrix  # A/I -> A, the complement embedding


def quotient(A: Algebra, I_basis) -> Quotient:
    F = A.field
    I_basis = _check_basis(A, I_basis)
    if not is_ideal(A, I_basis):
        raise DimensionError("not an ideal")
    comp = complement_basis(F, I_basis, A.dim)
    full = I_basis + comp
    m = len(I_basis)
    q = len(comp)
    # pi(u) = coordinates of u along the complement in the basis (I, comp)
    Binv = Matrix.from_columns(F, full, A.dim).inverse()
    pi = Matrix._raw(F, Binv.rows[m:], A.dim)

    def prod(i, j):
        return pi.apply(A.mul(comp[i], comp[j]))

    table = Bilinear.from_function(F, (q, q, q), prod)
    Qa = Algebra(F, q, table, status=A.status, verified_mode=A.verified_mode)
    section = Matrix.from_columns(F, comp, A.dim) if q else Matrix.zeros(F, A.dim, 0)
    return Quotient(Qa, pi, section)
