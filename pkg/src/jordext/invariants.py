"""Finite groups of automorphisms, invariants, the trace map and the
twisted-product decomposition over the invariant subalgebra."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, check_algebra_morphism, is_subalgebra
from .errors import BoundExceeded, CharacteristicError, DimensionError
from .linalg import Matrix, kernel, span_rref, vsub
from .unified import Reconstruction, build_unified, extract_extending_structure, \
    validate_extending_structure

DEFAULT_ORDER_BOUND = 64


@dataclass
class GroupAction:
    A: Algebra
    elements: list   # Matrices, identity first, then in discovery order
    generators: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, g: Matrix, a):
        return g.apply(self.A.vec(a))


def generate_group(A: Algebra, generators, order_bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    """Closure of ``generators`` under composition (breadth first)."""
    F = A.field
    n = A.dim
    gens = [g if isinstance(g, Matrix) else Matrix(F, g, n) for g in generators]
    for g in gens:
        if g.shape != (n, n):
            raise DimensionError("generator has the wrong shape")
        if not g.is_invertible() or not check_algebra_morphism(g, A, A):
            raise ValueError("generator is not an automorphism of A")
    ident = Matrix.identity(F, n)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                gh = g @ h
                if gh not in seen:
                    seen.add(gh)
                    elements.append(gh)
                    nxt.append(gh)
                    if len(elements) > order_bound:
                        raise BoundExceeded(f"group order exceeds {order_bound}")
        frontier = nxt
    # a finite set of invertible maps closed under products is closed under inverses
    if F.p is not None and len(elements) % F.p == 0:
        raise CharacteristicError(f"|G| = {len(elements)} is not invertible in {F.name}")
    return GroupAction(A, elements, gens)


def invariant_subalgebra(action: GroupAction):
    """Echelon basis of A^G = common fixed space of all group elements."""
    A = action.A
    F = A.field
    n = A.dim
    ident = Matrix.identity(F, n)
    rows = []
    for g in action.elements:
        rows.extend((g - ident).rows)
    if not rows or n == 0:
        return [A.e(i) for i in range(n)]
    basis = kernel(Matrix._raw(F, rows, n))
    return list(span_rref(F, basis, n)) if basis else []


def trace_map(action: GroupAction) -> Matrix:
    """t = |G|^-1 sum_g g."""
    A = action.A
    F = A.field
    n = A.dim
    total = Matrix.zeros(F, n, n)
    for g in action.elements:
        total = total + g
    return total.scale(F.inv(F.elem(action.order)))


@dataclass
class ArtinDecomposition:
    invariants: list          # basis of A^G
    reconstruction: Reconstruction
    theta: Matrix             # (a, x) -> a + x

    @property
    def datum(self):
        return self.reconstruction.datum


def artin_decomposition(action: GroupAction, mode=None) -> ArtinDecomposition:
    """Extract the extending structure of A^G through Ker(t) along the trace
    retraction; the left action comes out zero, so A is a twisted product."""
    A = action.A
    A.require_jordan()
    F = A.field
    inv = invariant_subalgebra(action)
    t = trace_map(action)
    rec = extract_extending_structure(A, inv, t)
    d = rec.datum
    if not d.actl.is_zero():
        raise AssertionError("trace retraction produced a nonzero left action")
    rep = validate_extending_structure(d, mode)
    if not rep.passed:
        raise AssertionError("extracted datum failed validation:\n" + rep.summary())
    E = build_unified(d).product
    theta = rec.phi
    if not (theta.is_invertible() and check_algebra_morphism(theta, E, A)):
        raise AssertionError("theta is not an isomorphism")
    return ArtinDecomposition(inv, rec, theta)


def cyclic_kernel_check(action: GroupAction) -> bool:
    """Ker(t) = span{a - g a} for an action generated by one element g."""
    if len(action.generators) != 1:
        raise ValueError("cyclic_kernel_check needs a single generator")
    A = action.A
    F = A.field
    n = A.dim
    g = action.generators[0]
    t = trace_map(action)
    ker = span_rref(F, kernel(t), n)
    img = span_rref(F, [vsub(F, A.e(i), g.apply(A.e(i))) for i in range(n)], n)
    return ker == img


def is_invariant_subalgebra(action: GroupAction) -> bool:
    basis = invariant_subalgebra(action)
    return is_subalgebra(action.A, basis) if basis else True
