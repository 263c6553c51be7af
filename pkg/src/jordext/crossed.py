"""Crossed systems, crossed products, extensions and iterated decomposition.

A crossed system of Jordan algebras A and V is a pair of bilinear maps

    act (dV, dA, dA)   x |> a
    f   (dV, dV, dA)

and the crossed product on A x V is

    (a, x) o (b, y) = (ab + x|>b + y|>a + f(x, y),  x.y).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (Algebra, Status, check_algebra_morphism, find_ideals, is_ideal,
                      missing_relation_check, quotient, subalgebra)
from .errors import DimensionError, UnverifiedError
from .identities import AxiomResult, Mode, ValidationReport, check_identity, resolve_mode
from .linalg import Matrix, coordinates, independent, solve_linear, span_rref, vunit
from .tensors import Bilinear
from .unified import ExtendingDatum, build_unified

AXIOMS = ("CP1", "CP2", "CP3", "CP4", "CP5")


class CrossedSystem:
    __slots__ = ("A", "V", "act", "f", "validated")

    def __init__(self, A: Algebra, V: Algebra, act=None, f=None):
        F = A.field
        if V.field != F:
            raise ValueError("A and V over different fields")
        dA, dV = A.dim, V.dim
        if act is None:
            act = Bilinear(F, (dV, dA, dA))
        elif not isinstance(act, Bilinear):
            act = Bilinear(F, (dV, dA, dA), act)
        if f is None:
            f = Bilinear(F, (dV, dV, dA))
        elif not isinstance(f, Bilinear):
            f = Bilinear(F, (dV, dV, dA), f)
        if act.shape != (dV, dA, dA) or f.shape != (dV, dV, dA):
            raise DimensionError("crossed system maps have inconsistent shapes")
        self.A, self.V, self.act, self.f = A, V, act, f
        self.validated = None

    @property
    def field(self):
        return self.A.field

    def key(self):
        return self.act.key() + self.f.key()

    def __eq__(self, other):
        return (isinstance(other, CrossedSystem) and self.A == other.A and self.V == other.V
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.A, self.V, self.key()))

    def __repr__(self):
        return (f"CrossedSystem({self.field.name}, dimA={self.A.dim}, dimV={self.V.dim}, "
                f"{'validated' if self.validated else 'unvalidated'})")


def to_datum(cs: CrossedSystem) -> ExtendingDatum:
    """The extending datum (<| = 0, |>, f, V's multiplication)."""
    d = ExtendingDatum(cs.A, cs.V.dim, actl=cs.act, f=cs.f, mulV=cs.V.table)
    d.validated = cs.validated
    return d


def _cp_identities(cs: CrossedSystem):
    T, S, L, f = cs.A.table, cs.V.table, cs.act, cs.f

    def cp2(ev, a, x):
        a2 = ev.bil(T, a, a)
        return ev.sub(ev.bil(T, a, ev.bil(L, x, a2)), ev.bil(T, a2, ev.bil(L, x, a)))

    def cp3(ev, x, a):
        fxx, x2 = ev.bil(f, x, x), ev.bil(S, x, x)
        lhs = ev.add(ev.bil(L, x, ev.bil(T, fxx, a)), ev.bil(L, x, ev.bil(L, x2, a)))
        rhs = ev.add(ev.bil(T, fxx, ev.bil(L, x, a)), ev.bil(L, x2, ev.bil(L, x, a)))
        return ev.sub(lhs, rhs)

    def cp4(ev, x, y):
        fxx, x2, xy = ev.bil(f, x, x), ev.bil(S, x, x), ev.bil(S, x, y)
        lhs = ev.add(ev.bil(L, x, ev.bil(L, y, fxx)), ev.bil(L, x, ev.bil(f, x2, y)),
                     ev.bil(f, ev.bil(S, x2, y), x))
        rhs = ev.add(ev.bil(T, fxx, ev.bil(f, x, y)), ev.bil(L, x2, ev.bil(f, x, y)),
                     ev.bil(L, xy, fxx), ev.bil(f, x2, xy))
        return ev.sub(lhs, rhs)

    dA, dV = cs.A.dim, cs.V.dim
    swap = lambda w: (w[1], w[0])
    return [("CP2", [dA, dV], cp2, None), ("CP3", [dV, dA], cp3, swap),
            ("CP4", [dV, dV], cp4, None)]


def validate_crossed_system(cs: CrossedSystem, mode: Mode | None = None,
                            backend=None) -> ValidationReport:
    cs.A.require_jordan("A")
    cs.V.require_jordan("V")
    F = cs.field
    rep = ValidationReport(field=F)
    if mode is not None and mode.kind == "sampled":
        rep.seed = mode.seed
    w = cs.f.asymmetry_witness()
    if w is None:
        rep.add(AxiomResult("CP1", True, "exact"))
    else:
        eV = lambda i: vunit(F, cs.V.dim, i)
        rep.add(AxiomResult("CP1", False, "exact", (eV(w[0]), eV(w[1]))))
    for name, dims, fn, wmap in _cp_identities(cs):
        if any(k == 0 for k in dims):
            rep.add(AxiomResult(name, True, resolve_mode(F, mode, 0).label, note="vacuous"))
            continue
        rep.add(check_identity(F, name, dims, fn, mode, nlin=1, witness_map=wmap))
    E = build_unified(to_datum(cs), unchecked=True)
    rep.extend(missing_relation_check(E.product, E.A_basis, E.V_basis, mode, axiom="CP5",
                                      backend=backend))
    if rep.passed:
        cs.validated = ",".join(rep.modes)
    return rep


def build_crossed(cs: CrossedSystem, unchecked: bool = False) -> Algebra:
    if not cs.validated and not unchecked:
        raise UnverifiedError("crossed system not validated")
    return build_unified(to_datum(cs), unchecked=unchecked).product


# -- extensions -----------------------------------------------------------------
@dataclass
class Extension:
    """0 -> A --i--> E --pi--> V -> 0."""

    E: Algebra
    i: Matrix   # dim E x dim A
    pi: Matrix  # dim V x dim E
    A: Algebra
    V: Algebra

    def check(self) -> ValidationReport:
        F = self.E.field
        rep = ValidationReport(field=F)
        ok = self.i.shape == (self.E.dim, self.A.dim) and self.pi.shape == (self.V.dim, self.E.dim)
        rep.add(AxiomResult("shapes", ok, "exact"))
        if not ok:
            return rep
        rep.add(AxiomResult("i morphism", check_algebra_morphism(self.i, self.A, self.E), "exact"))
        rep.add(AxiomResult("pi morphism", check_algebra_morphism(self.pi, self.E, self.V), "exact"))
        rep.add(AxiomResult("i injective", self.i.rank() == self.A.dim, "exact"))
        rep.add(AxiomResult("pi surjective", self.pi.rank() == self.V.dim, "exact"))
        img = span_rref(F, self.i.columns(), self.E.dim)
        ker = span_rref(F, self.pi.kernel(), self.E.dim)
        rep.add(AxiomResult("exact", img == ker, "exact"))
        return rep


def canonical_extension(cs: CrossedSystem) -> Extension:
    F = cs.field
    dA, dV = cs.A.dim, cs.V.dim
    n = dA + dV
    E = build_crossed(cs)
    i = Matrix.from_columns(F, [vunit(F, n, k) for k in range(dA)], n) if dA else \
        Matrix.zeros(F, n, 0)
    pi = Matrix._raw(F, [vunit(F, n, dA + k) for k in range(dV)], n)
    return Extension(E, i, pi, cs.A, cs.V)


def default_section(ext: Extension) -> Matrix:
    """s(e_r) = the solution of pi(s) = e_r with free coordinates zero."""
    F = ext.E.field
    cols = []
    for r in range(ext.V.dim):
        s = solve_linear(ext.pi, vunit(F, ext.V.dim, r))
        if s is None:
            raise ValueError("pi is not surjective")
        cols.append(s)
    return Matrix.from_columns(F, cols, ext.E.dim) if cols else Matrix.zeros(F, ext.E.dim, 0)


def extension_to_crossed(ext: Extension, s: Matrix | None = None, mode: Mode | None = None,
                         validate: bool = True) -> CrossedSystem:
    """The crossed system (x |> a = s(x) a, f(x, y) = s(x)s(y) - s(xy)) of a section s."""
    F = ext.E.field
    E = ext.E
    if s is None:
        s = default_section(ext)
    if s.shape != (E.dim, ext.V.dim):
        raise DimensionError("section has the wrong shape")
    if (ext.pi @ s) != Matrix.identity(F, ext.V.dim):
        raise ValueError("s is not a section of pi")
    icols = ext.i.columns()
    scols = s.columns()
    dA, dV = ext.A.dim, ext.V.dim

    def in_A(u):
        # coordinates along i; exists because the value lies in Ker(pi) = Im(i)
        c = coordinates(F, icols, u)
        if c is None:
            raise ValueError("value outside Im(i); the sequence is not exact")
        return c

    act, fco = {}, {}
    for l in range(dV):
        for a in range(dA):
            for k, t in enumerate(in_A(E.mul(scols[l], icols[a]))):
                if t != 0:
                    act[(l, a, k)] = t
        for m in range(dV):
            sxy = s.apply(ext.V.mul(vunit(F, dV, l), vunit(F, dV, m)))
            diff = tuple(F.sub(u, w) for u, w in zip(E.mul(scols[l], scols[m]), sxy))
            for k, t in enumerate(in_A(diff) if dA else ()):
                if t != 0:
                    fco[(l, m, k)] = t
    cs = CrossedSystem(ext.A, ext.V, act, fco)
    if validate:
        rep = validate_crossed_system(cs, mode)
        if not rep.passed:
            raise ValueError("recovered system fails validation:\n" + rep.summary())
    return cs


def section_isomorphism(ext: Extension, s: Matrix) -> Matrix:
    """psi(a, x) = i(a) + s(x) from the crossed product onto E."""
    return ext.i.hstack(s)


# -- iterated decomposition -------------------------------------------------------
@dataclass
class DecompositionNode:
    algebra: Algebra
    kind: str                      # "simple" | "split"
    ideal: tuple = ()              # basis of the chosen ideal (split nodes)
    system: CrossedSystem | None = None
    iso: Matrix | None = None      # crossed product coordinates -> algebra coordinates
    children: list = dc_field(default_factory=list)

    def leaves(self):
        if self.kind != "split":
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def to_dict(self):
        F = self.algebra.field
        d = {"dim": self.algebra.dim, "kind": self.kind}
        if self.kind == "split":
            d["ideal"] = [[F.fmt(x) for x in v] for v in self.ideal]
            d["children"] = [c.to_dict() for c in self.children]
        return d


def decompose_iterated(A: Algebra, max_dim: int | None = None, first_ideal=None,
                       bound=None, mode: Mode | None = None) -> DecompositionNode:
    """Split along the first proper nonzero ideal, recursively.

    A leaf is an algebra with no proper nonzero ideal of dimension <= max_dim
    (all proper ideals when max_dim is None).
    """
    A.require_jordan()
    F = A.field
    n = A.dim
    if first_ideal is not None:
        ideal = [A.vec(v) for v in first_ideal]
        if not ideal or len(ideal) >= n or not is_ideal(A, ideal):
            raise DimensionError("first_ideal is not a proper nonzero ideal")
    else:
        if n <= 1:
            return DecompositionNode(A, "simple")
        limit = n - 1 if max_dim is None else min(max_dim, n - 1)
        found = [b for b in find_ideals(A, limit, bound) if len(b) > 0]
        if not found:
            return DecompositionNode(A, "simple")
        ideal = list(found[0])
    I = subalgebra(A, ideal)
    q = quotient(A, ideal)
    icols = Matrix.from_columns(F, ideal, n)
    ext = Extension(A, icols, q.pi, I, q.algebra)
    cs = extension_to_crossed(ext, q.section, mode)
    iso = section_isomorphism(ext, q.section)
    children = [decompose_iterated(I, max_dim, None, bound, mode),
                decompose_iterated(q.algebra, max_dim, None, bound, mode)]
    return DecompositionNode(A, "split", tuple(ideal), cs, iso, children)


def transport_system(cs: CrossedSystem, A2: Algebra, thA: Matrix, V2: Algebra,
                     thV: Matrix) -> CrossedSystem:
    """Move cs along isomorphisms thA: A2 -> A and thV: V2 -> V."""
    F = cs.field
    invA = thA.inverse()
    dA, dV = A2.dim, V2.dim
    ca, cv = thA.columns(), thV.columns()
    act, fco = {}, {}
    for l in range(dV):
        for a in range(dA):
            for k, t in enumerate(invA.apply(cs.act(cv[l], ca[a]))):
                if t != 0:
                    act[(l, a, k)] = t
        for m in range(dV):
            for k, t in enumerate(invA.apply(cs.f(cv[l], cv[m]))):
                if t != 0:
                    fco[(l, m, k)] = t
    out = CrossedSystem(A2, V2, act, fco)
    out.validated = cs.validated
    return out


def rebuild(node: DecompositionNode):
    """Rebuild bottom-up: returns (algebra R, isomorphism R -> node.algebra)."""
    F = node.algebra.field
    if node.kind != "split":
        return node.algebra, Matrix.identity(F, node.algebra.dim)
    (RI, thI), (RV, thV) = (rebuild(c) for c in node.children)
    cs2 = transport_system(node.system, RI, thI, RV, thV)
    R = build_crossed(cs2)
    n = RI.dim + RV.dim
    block = Matrix.zeros(F, n, n)
    rows = [list(r) for r in block.rows]
    for r in range(RI.dim):
        for c in range(RI.dim):
            rows[r][c] = thI.rows[r][c]
    for r in range(RV.dim):
        for c in range(RV.dim):
            rows[RI.dim + r][RI.dim + c] = thV.rows[r][c]
    iso = node.iso @ Matrix._raw(F, rows, n)
    if not check_algebra_morphism(iso, R, node.algebra) or not iso.is_invertible():
        raise AssertionError("rebuilt algebra is not isomorphic via the recorded map")
    return R, iso
