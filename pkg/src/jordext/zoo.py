"""Standard Jordan algebras and seeded random generators for tests and benchmarks."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .algebra import (Algebra, Status, abelian, check_jordan, direct_product, find_ideals,
                      from_associative_plus, is_subalgebra, iter_subspaces, quotient, subalgebra,
                      transport, unit_field)
from .crossed import CrossedSystem, Extension, extension_to_crossed
from .errors import BoundExceeded
from .linalg import Matrix, independent, vunit
from .scalars import Field
from .unified import ExtendingDatum, extract_extending_structure, spin_factor


# -- standard algebras --------------------------------------------------------------
def matrix_plus(field: Field, n: int) -> Algebra:
    """M_n(F)^+ on the basis E_11, E_12, ..., E_nn (row major)."""
    idx = lambda i, j: i * n + j
    coef = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        coef[(idx(i, j), idx(j, l), idx(i, l))] = 1
    return from_associative_plus(field, n * n, coef)


def upper_triangular_plus(field: Field, n: int) -> Algebra:
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {c: k for k, c in enumerate(cells)}
    coef = {}
    for (i, j), (j2, l) in itertools.product(cells, repeat=2):
        if j == j2:
            coef[(pos[(i, j)], pos[(j2, l)], pos[(i, l)])] = 1
    return from_associative_plus(field, len(cells), coef)


def truncated_polynomial(field: Field, m: int) -> Algebra:
    """F[t]/(t^m) on 1, t, ..., t^(m-1)."""
    coef = {(i, j, i + j): 1 for i in range(m) for j in range(m) if i + j < m}
    A = Algebra(field, m, coef)
    check_jordan(A)
    return A


def nilpotent_polynomial(field: Field, m: int) -> Algebra:
    """t F[t]/(t^(m+1)) on t, ..., t^m."""
    coef = {(i, j, i + j + 1): 1 for i in range(m) for j in range(m) if i + j + 1 < m}
    A = Algebra(field, m, coef)
    check_jordan(A)
    return A


def spin(field: Field, form) -> Algebra:
    dimV = len(form)
    return spin_factor(dimV, form, field=field).product


def form_from_diagonal(field, diag):
    n = len(diag)
    return [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]


def standard_algebras(field: Field, dim: int):
    """A fixed list of (name, Jordan algebra) of the given dimension."""
    F = field
    out = [(f"abelian{dim}", abelian(F, dim))]
    if dim == 0:
        return out
    if dim == 1:
        return out + [("k", unit_field(F))]
    out.append((f"k[t]/t^{dim}", truncated_polynomial(F, dim)))
    out.append((f"tk[t]/t^{dim + 1}", nilpotent_polynomial(F, dim)))
    out.append(("k x " + f"abelian{dim - 1}", direct_product(unit_field(F), abelian(F, dim - 1))))
    out.append(("k^" + str(dim), _power(unit_field(F), dim)))
    out.append((f"spin{dim - 1}(I)", spin(F, form_from_diagonal(F, [1] * (dim - 1)))))
    out.append((f"spin{dim - 1}(0)", spin(F, form_from_diagonal(F, [0] * (dim - 1)))))
    if dim >= 3:
        out.append((f"spin{dim - 1}(1,-1..)",
                    spin(F, form_from_diagonal(F, [1] + [-1] * (dim - 2)))))
        inner = spin(F, form_from_diagonal(F, [1] * (dim - 2)))
        out.append(("k x spin", direct_product(unit_field(F), inner)))
    if dim == 3:
        out.append(("T2+", upper_triangular_plus(F, 2)))
    if dim == 4:
        out.append(("M2+", matrix_plus(F, 2)))
    return out


def _power(A, m):
    out = A
    for _ in range(m - 1):
        out = direct_product(out, A)
    return out


def corpus(field: Field, max_dim: int = 4):
    """Every standard algebra of dimension <= max_dim (the polarization corpus)."""
    return [(n, A) for d in range(max_dim + 1) for n, A in standard_algebras(field, d)]


# -- random helpers ------------------------------------------------------------------
def rng_of(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_scalar(field: Field, rng, nonzero=False):
    if field.p is not None:
        lo = 1 if nonzero else 0
        return field.elem(rng.randrange(lo, field.p))
    while True:
        x = field.elem(rng.randint(-5, 5))
        if x != 0 or not nonzero:
            return x


def random_matrix(field: Field, m: int, n: int, rng) -> Matrix:
    return Matrix(field, [[random_scalar(field, rng) for _ in range(n)] for _ in range(m)], n) \
        if m else Matrix.zeros(field, 0, n)


def random_invertible(field: Field, n: int, rng) -> Matrix:
    while True:
        M = random_matrix(field, n, n, rng)
        if n == 0 or M.is_invertible():
            return M


def random_symmetric_form(field: Field, n: int, rng):
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_scalar(field, rng)
    return rows


def random_transport(A: Algebra, rng):
    """(B, psi) with psi: A -> B a random isomorphism."""
    psi = random_invertible(A.field, A.dim, rng)
    return transport(A, psi), psi


def _random_bilinear(field, shape, rng, density=0.4, symmetric=False):
    d1, d2, d3 = shape
    coef = {}
    for i in range(d1):
        for j in range(i if symmetric else 0, d2):
            for k in range(d3):
                if rng.random() < density:
                    s = random_scalar(field, rng, nonzero=True)
                    coef[(i, j, k)] = s
                    if symmetric:
                        coef[(j, i, k)] = s
    return coef


def random_datum(A: Algebra, dimV: int, rng, density=0.4) -> ExtendingDatum:
    """Random datum with symmetric f and x.y (usually not an extending structure)."""
    F, dA = A.field, A.dim
    return ExtendingDatum(
        A, dimV,
        _random_bilinear(F, (dimV, dA, dimV), rng, density),
        _random_bilinear(F, (dimV, dA, dA), rng, density),
        _random_bilinear(F, (dimV, dimV, dA), rng, density, symmetric=True),
        _random_bilinear(F, (dimV, dimV, dimV), rng, density, symmetric=True))


def perturb_datum(d: ExtendingDatum, rng) -> ExtendingDatum:
    """Change one coefficient (keeping f and x.y symmetric)."""
    F = d.field
    names = [n for n, m in (("actr", d.actr), ("actl", d.actl), ("f", d.f), ("mulV", d.mulV))
             if all(s > 0 for s in m.shape)]
    name = rng.choice(names)
    B = getattr(d, name)
    i, j, k = (rng.randrange(s) for s in B.shape)
    coef = dict(B.coef)
    new = F.add(coef.get((i, j, k), F.zero), random_scalar(F, rng, nonzero=True))
    keys = {(i, j, k), (j, i, k)} if name in ("f", "mulV") else {(i, j, k)}
    for key in keys:
        if new == 0:
            coef.pop(key, None)
        else:
            coef[key] = new
    return d.replace(**{name: coef})


@lru_cache(maxsize=None)
def _subalgebras(A: Algebra, k: int):
    return [b for b in iter_subspaces(A.field, A.dim, k) if k == 0 or is_subalgebra(A, list(b))]


@lru_cache(maxsize=None)
def _ideals(A: Algebra, k: int):
    return [b for b in find_ideals(A, k) if len(b) == k]


def _complete(field, basis, n, rng):
    """Random vectors completing ``basis`` to a basis of F^n."""
    out = []
    while len(basis) + len(out) < n:
        v = tuple(random_scalar(field, rng) for _ in range(n))
        if independent(field, list(basis) + out + [v], n):
            out.append(v)
    return out


def random_valid_datum(field: Field, dimA: int, dimV: int, rng, source=None):
    """An extending structure extracted from a random Jordan algebra of
    dimension dimA + dimV, a random subalgebra and a random complement.

    Returns (datum, E, A_basis, complement) or None when the chosen algebra
    has no subalgebra of dimension dimA.
    """
    F = field
    n = dimA + dimV
    for _ in range(20):
        name, E0 = source if source is not None else rng.choice(standard_algebras(F, n))
        subs = _subalgebras(E0, dimA)
        if subs:
            break
    else:
        return None
    S = list(rng.choice(subs))
    psi = random_invertible(F, n, rng)
    E = transport(E0, psi)
    S = [psi.apply(v) for v in S]
    W = _complete(F, S, n, rng)
    # retraction onto span(S) along span(W)
    B = Matrix.from_columns(F, S + W, n)
    Binv = B.inverse()
    P = Matrix.from_columns(F, S, n) @ Matrix._raw(F, Binv.rows[:dimA], n) if dimA \
        else Matrix.zeros(F, n, n)
    rec = extract_extending_structure(E, S, P, complement=W)
    return rec.datum, E, S, W


def random_valid_crossed(field: Field, dimA: int, dimV: int, rng, mode=None):
    """A crossed system recovered from a random Jordan algebra, one of its
    ideals of dimension dimA and a random section; None if no such ideal."""
    F = field
    n = dimA + dimV
    cands = [(nm, E0) for nm, E0 in standard_algebras(F, n) if _ideals(E0, dimA)]
    if not cands:
        return None
    name, E0 = rng.choice(cands)
    I = list(rng.choice(_ideals(E0, dimA)))
    psi = random_invertible(F, n, rng)
    E = transport(E0, psi)
    I = [psi.apply(v) for v in I]
    q = quotient(E, I)
    # random section: the complement embedding plus a random map into I
    Ibasis = Matrix.from_columns(F, I, n) if dimA else Matrix.zeros(F, n, 0)
    s = q.section + Ibasis @ random_matrix(F, dimA, dimV, rng) if dimA else q.section
    ext = Extension(E, Ibasis, q.pi, subalgebra(E, I), q.algebra)
    return extension_to_crossed(ext, s, mode)


def random_crossed(A: Algebra, V: Algebra, rng, density=0.4) -> CrossedSystem:
    F = A.field
    return CrossedSystem(A, V, _random_bilinear(F, (V.dim, A.dim, A.dim), rng, density),
                         _random_bilinear(F, (V.dim, V.dim, A.dim), rng, density, symmetric=True))


# -- graded algebras with involutions ------------------------------------------------
def sign_flip(field: Field, dimV: int) -> Matrix:
    """g(a, x) = (a, -x) on k x V."""
    n = 1 + dimV
    return Matrix(field, [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(n)]
                          for i in range(n)], n)


def _graded_examples(field: Field):
    """(algebra, involution) pairs where the involution is a Z/2 grading or a swap."""
    F = field
    out = []
    for dV in (1, 2, 3):
        form = form_from_diagonal(F, [1] * dV)
        out.append((spin(F, form), sign_flip(F, dV)))
    # truncated polynomials: t -> -t
    for m in (2, 3, 4):
        out.append((truncated_polynomial(F, m),
                    Matrix(F, [[(-1) ** i if i == j else 0 for j in range(m)] for i in range(m)], m)))
    # swap on B x B
    for B in (unit_field(F), truncated_polynomial(F, 2)):
        d = B.dim
        P = [[0] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            P[i][d + i] = P[d + i][i] = 1
        out.append((direct_product(B, B), Matrix(F, P, 2 * d)))
    # M2+ with conjugation by diag(1, -1): E12, E21 -> negated
    out.append((matrix_plus(F, 2), Matrix(F, [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0],
                                                [0, 0, 0, 1]], 4)))
    return out


def random_c2_action(field: Field, rng):
    """(A, g) with g an involutive automorphism, conjugated by a random isomorphism."""
    A0, g0 = rng.choice(_graded_examples(field))
    psi = random_invertible(field, A0.dim, rng)
    A = transport(A0, psi)
    return A, psi @ g0 @ psi.inverse()
