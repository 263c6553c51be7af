"""Equivalence relations and classifying sets.

* (r, v)-morphisms between extending data and the induced action on data;
* flag data (codimension one) and their equivalence under (r, u);
* cohomologous crossed systems and the non-abelian second cohomology;
* the one-dimensional model over V = k_eps with its matrix equation.

Canonical representatives are always the lexicographically least serialized
coefficient tuple of an orbit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import (Algebra, MorphismPair, abelian, all_invertible, check_jordan,
                      inverse_batch, missing_relation_check, stabilizing_maps, transport_batch,
                      unit_field, _det_mod_p)
from .crossed import CrossedSystem, validate_crossed_system
from .errors import BoundExceeded, CharacteristicError, DimensionError, ModeError, UnverifiedError
from .identities import (AxiomResult, Mode, ValidationReport, check_identity, default_bound,
                         resolve_mode)
from .linalg import Matrix, gl_order, vunit, vzero
from .scalars import Field
from .tensors import Bilinear
from .unified import ExtendingDatum, build_unified, validate_extending_structure


class DisjointSet:
    """Union-find keeping the least member of each block as its root."""

    def __init__(self):
        self.parent = {}
        self.size = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size.pop(ry)
        return rx

    def blocks(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return dict(sorted(out.items()))


@dataclass
class H2Class:
    representative: object
    orbit_size: int
    crossed_valid: bool | None = None
    note: str = ""


def _bound(bound):
    return bound if bound is not None else default_bound()


def _require_finite(field: Field, what: str):
    if field.p is None:
        raise ModeError(f"{what} enumerates a finite field; over Q only verification is available")


# -- vector helpers over a field ---------------------------------------------------
def _add(F, *vs):
    out = list(vs[0])
    for v in vs[1:]:
        for k, t in enumerate(v):
            out[k] = F.add(out[k], t)
    return tuple(out)


def _sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def _sc(F, c, v):
    return tuple(F.mul(c, t) for t in v)


def _dot(F, u, v):
    out = F.zero
    for s, t in zip(u, v):
        out = F.add(out, F.mul(s, t))
    return out


# -- (r, v) morphisms --------------------------------------------------------------
def _pair_matrices(datum: ExtendingDatum, r, v):
    F = datum.field
    r = r if isinstance(r, Matrix) else Matrix(F, r, datum.dimV)
    v = v if isinstance(v, Matrix) else Matrix(F, v, datum.dimV)
    if r.shape != (datum.dimA, datum.dimV) or v.shape != (datum.dimV, datum.dimV):
        raise DimensionError("r must be dimA x dimV and v dimV x dimV")
    return r, v


def morphism_pair_report(d1: ExtendingDatum, d2: ExtendingDatum, r, v,
                         mode: Mode | None = None) -> ValidationReport:
    """(M1)-(M4) for psi(a, x) = (a + r(x), v(x)) from the product of d1 to that of d2.

    All four conditions are bilinear, so basis arguments are exact.
    """
    if d1.A != d2.A or d1.dimV != d2.dimV:
        raise DimensionError("data over different A or V")
    r, v = _pair_matrices(d1, r, v)
    T = d1.A.table
    R1, L1, f1, m1 = d1.actr, d1.actl, d1.f, d1.mulV
    R2, L2, f2, m2 = d2.actr, d2.actl, d2.f, d2.mulV
    F = d1.field

    def m1_(ev, x, a):
        return ev.sub(ev.bil(R2, ev.lin(v, x), a), ev.lin(v, ev.bil(R1, x, a)))

    def m2_(ev, x, a):
        rhs = ev.add(ev.lin(r, ev.bil(R1, x, a)), ev.bil(L1, x, a))
        return ev.sub(ev.add(ev.bil(L2, ev.lin(v, x), a), ev.bil(T, a, ev.lin(r, x))), rhs)

    def m3_(ev, x, y):
        vx, vy = ev.lin(v, x), ev.lin(v, y)
        rhs = ev.add(ev.bil(m2, vx, vy), ev.bil(R2, vx, ev.lin(r, y)), ev.bil(R2, vy, ev.lin(r, x)))
        return ev.sub(ev.lin(v, ev.bil(m1, x, y)), rhs)

    def m4_(ev, x, y):
        vx, vy, rx, ry = ev.lin(v, x), ev.lin(v, y), ev.lin(r, x), ev.lin(r, y)
        rhs = ev.add(ev.bil(T, rx, ry), ev.bil(L2, vx, ry), ev.bil(L2, vy, rx), ev.bil(f2, vx, vy))
        return ev.sub(ev.add(ev.lin(r, ev.bil(m1, x, y)), ev.bil(f1, x, y)), rhs)

    dA, dV = d1.dimA, d1.dimV
    rep = ValidationReport(field=F)
    for name, dims, fn in (("M1", [dV, dA], m1_), ("M2", [dV, dA], m2_),
                           ("M3", [dV, dV], m3_), ("M4", [dV, dV], m4_)):
        if any(k == 0 for k in dims):
            rep.add(AxiomResult(name, True, "exact", note="vacuous"))
        else:
            res = check_identity(F, name, dims, fn, Mode.exhaustive() if F.p else Mode.formal(),
                                 nlin=2)
            res.mode = "exact"
            rep.add(res)
    return rep


def check_morphism_pair(d1, d2, r, v, mode: Mode | None = None) -> bool:
    return morphism_pair_report(d1, d2, r, v, mode).passed


def psi_matrix(datum: ExtendingDatum, r, v) -> Matrix:
    r, v = _pair_matrices(datum, r, v)
    return MorphismPair(r, v).matrix(datum.dimA)


def transform_extending_structure(datum: ExtendingDatum, r, v) -> ExtendingDatum:
    """The datum d' making psi(a, x) = (a + r(x), v(x)) an isomorphism onto its product."""
    d = datum
    F = d.field
    r, v = _pair_matrices(d, r, v)
    vinv = v.inverse()  # ZeroDivisionError for singular v
    dA, dV = d.dimA, d.dimV
    A = d.A
    W = vinv.columns()                 # w_l = v^-1(x_l)
    rW = [r.apply(w) for w in W]       # r(w_l)
    eA = [A.e(i) for i in range(dA)]
    actr, actl, fco, mco = {}, {}, {}, {}

    def put(store, key, vec):
        for k, t in enumerate(vec):
            if t != 0:
                store[key + (k,)] = t

    for l, w in enumerate(W):
        for i, a in enumerate(eA):
            wa = d.actr(w, a)
            put(actr, (l, i), v.apply(wa))
            put(actl, (l, i), _sub(F, _add(F, r.apply(wa), d.actl(w, a)), A.mul(a, rW[l])))
        for m, z in enumerate(W):
            wz = d.mulV(w, z)
            w_rz = d.actr(w, rW[m])
            z_rw = d.actr(z, rW[l])
            fv = _add(F, d.f(w, z), r.apply(wz), A.mul(rW[l], rW[m]))
            fv = _sub(F, fv, _add(F, r.apply(w_rz), d.actl(w, rW[m]), r.apply(z_rw),
                                  d.actl(z, rW[l])))
            put(fco, (l, m), fv)
            put(mco, (l, m), _sub(F, v.apply(wz), _add(F, v.apply(w_rz), v.apply(z_rw))))
    out = ExtendingDatum(A, dV, actr, actl, fco, mco)
    out.validated = d.validated
    return out


def compose(p1, p2):
    """The pair acting as p1 followed by p2: (r1 + r2 v1, v2 v1)."""
    (r1, v1), (r2, v2) = p1, p2
    return (r1 + r2 @ v1, v2 @ v1)


# -- enumeration of extending data ---------------------------------------------------
def _sym_slots(dV, d3):
    return [(l, m, k) for l in range(dV) for m in range(l, dV) for k in range(d3)]


def _datum_slots(dA, dV):
    return ([("actr", (l, i, k)) for l in range(dV) for i in range(dA) for k in range(dV)]
            + [("actl", (l, i, k)) for l in range(dV) for i in range(dA) for k in range(dA)]
            + [("f", s) for s in _sym_slots(dV, dA)]
            + [("mulV", s) for s in _sym_slots(dV, dV)])


def iter_extending_data(A: Algebra, dimV: int, bound=None):
    """Every datum with symmetric f and x.y, in lexicographic coefficient order."""
    F = A.field
    _require_finite(F, "iter_extending_data")
    slots = _datum_slots(A.dim, dimV)
    total = F.p ** len(slots)
    if total > _bound(bound):
        raise BoundExceeded(f"{total} extending data exceeds bound")
    for vals in itertools.product(F.elements(), repeat=len(slots)):
        maps = {"actr": {}, "actl": {}, "f": {}, "mulV": {}}
        for (name, (l, m, k)), s in zip(slots, vals):
            if s == 0:
                continue
            maps[name][(l, m, k)] = s
            if name in ("f", "mulV"):
                maps[name][(m, l, k)] = s
        yield ExtendingDatum(A, dimV, maps["actr"], maps["actl"], maps["f"], maps["mulV"])


def _group_pairs(F, dA, dV, bound=None):
    """All (r, v) with v invertible, identity first."""
    size = gl_order(F.p, dV) * F.p ** (dA * dV)
    if size > _bound(bound):
        raise BoundExceeded(f"{size} pairs (r, v) exceeds bound")
    arr = stabilizing_maps(F, dA, dV, bound)
    out = []
    for M in arr:
        pair = MorphismPair.from_matrix(Matrix.from_array(F, M), dA)
        out.append((pair.r, pair.v))
    return out


def classify_extending_structures(A: Algebra, dimV: int, bound=None, mode: Mode | None = None):
    """Orbit representatives of extending structures of A through F^dimV under (r, v).

    Returns H2Class entries (representative datum, orbit size), sorted by the
    representative's serialized coefficients.
    """
    A.require_jordan("A")
    F = A.field
    _require_finite(F, "classify_extending_structures")
    valid = {}
    for d in iter_extending_data(A, dimV, bound):
        if validate_extending_structure(d, mode).passed:
            valid[d.key()] = d
    pairs = _group_pairs(F, A.dim, dimV, bound)
    ds = DisjointSet()
    for k in valid:
        ds.add(k)
    seen = set()
    for k in sorted(valid):
        if ds.find(k) in seen:
            continue
        seen.add(ds.find(k))
        for r, v in pairs:
            k2 = transform_extending_structure(valid[k], r, v).key()
            if k2 not in valid:
                raise AssertionError("transform of a valid datum failed validation")
            ds.union(k, k2)
    return [H2Class(valid[root], len(members)) for root, members in ds.blocks().items()]


def verify_jext(classes, bound=None) -> bool:
    """No two representatives have stabilizing-isomorphic products."""
    from .algebra import find_stabilizing_isomorphism
    prods = [build_unified(c.representative).product for c in classes]
    for i, j in itertools.combinations(range(len(prods)), 2):
        dA = classes[i].representative.dimA
        if find_stabilizing_isomorphism(prods[i], prods[j], dA, bound) is not None:
            return False
    return True


# -- flag data ---------------------------------------------------------------------
@dataclass(frozen=True)
class FlagDatum:
    """x <| a = lam(a) x, x |> a = D(a), f(x, x) = a0, x.x = alpha0 x."""

    D: Matrix
    lam: tuple
    a0: tuple
    alpha0: object

    @classmethod
    def make(cls, field: Field, D, lam, a0, alpha0):
        n = len(lam)
        D = D if isinstance(D, Matrix) else (Matrix(field, D, n) if n else Matrix.zeros(field, 0, 0))
        return cls(D, tuple(field.elem(t) for t in lam), tuple(field.elem(t) for t in a0),
                   field.elem(alpha0))

    @classmethod
    def zero(cls, field: Field, n: int):
        return cls(Matrix.zeros(field, n, n), vzero(field, n), vzero(field, n), field.zero)

    def key(self):
        return tuple(self.D.flat()) + self.lam + self.a0 + (self.alpha0,)


def flag_to_datum(A: Algebra, fd: FlagDatum) -> ExtendingDatum:
    n = A.dim
    if fd.D.shape != (n, n) or len(fd.lam) != n or len(fd.a0) != n:
        raise DimensionError("flag datum dimensions do not match A")
    actr = {(0, i, 0): s for i, s in enumerate(fd.lam) if s != 0}
    actl = {(0, i, k): fd.D.rows[k][i] for i in range(n) for k in range(n) if fd.D.rows[k][i] != 0}
    f = {(0, 0, k): s for k, s in enumerate(fd.a0) if s != 0}
    mul = {(0, 0, 0): fd.alpha0} if fd.alpha0 != 0 else {}
    return ExtendingDatum(A, 1, actr, actl, f, mul)


def _lam_matrix(F, lam):
    return Matrix._raw(F, [lam], len(lam))


def validate_flag_datum(A: Algebra, fd: FlagDatum, mode: Mode | None = None,
                        backend=None, stop_early: bool = False) -> ValidationReport:
    """The five explicit conditions FL1-FL5, then the missing relations.

    The constant and linear conditions are exact; FL1 is cubic in a and runs
    in the given mode.  With ``stop_early`` the expensive checks are skipped
    once a cheap one fails (cheap ones run first).
    """
    A.require_jordan("A")
    F = A.field
    n = A.dim
    D, lam, a0, al = fd.D, fd.lam, fd.a0, fd.alpha0
    T = A.table
    Lm = _lam_matrix(F, lam)
    lamf = lambda u: _dot(F, lam, u)
    Dv = D.apply
    eA = [A.e(i) for i in range(n)]
    results = {}

    # FL5: lam(D(a0)) = 0
    val = lamf(Dv(a0)) if n else F.zero
    results["FL5"] = AxiomResult("FL5", val == 0, "exact")
    # FL3: D^2(a0) + lam(a0) a0 = a0^2 + alpha0 D(a0)
    if n:
        lhs = _add(F, Dv(Dv(a0)), _sc(F, lamf(a0), a0))
        rhs = _add(F, A.mul(a0, a0), _sc(F, al, Dv(a0)))
        results["FL3"] = AxiomResult("FL3", lhs == rhs, "exact")
    else:
        results["FL3"] = AxiomResult("FL3", True, "exact", note="vacuous")
    # FL4: lam(a0 a) = lam(a0) lam(a), linear in a
    bad = next((e for e in eA if lamf(A.mul(a0, e)) != F.mul(lamf(a0), lamf(e))), None)
    results["FL4"] = AxiomResult("FL4", bad is None, "exact", None if bad is None else (bad,))
    # FL2: D(a0 a) = a0 D(a) + lam(a) D(a0), linear in a
    bad = next((e for e in eA
                if Dv(A.mul(a0, e)) != _add(F, A.mul(a0, Dv(e)), _sc(F, lamf(e), Dv(a0)))), None)
    results["FL2"] = AxiomResult("FL2", bad is None, "exact", None if bad is None else (bad,))
    cheap_ok = all(r.passed for r in results.values())

    def fl1(ev, a):
        a2 = ev.bil(T, a, a)
        Da, Da2 = ev.lin(D, a), ev.lin(D, a2)
        la, la2 = ev.lin(Lm, a), ev.lin(Lm, a2)
        lhs = ev.add(ev.bil(T, a, Da2), ev.smul(la2, Da))
        rhs = ev.add(ev.bil(T, a2, Da), ev.smul(la, Da2))
        return ev.sub(lhs, rhs)

    rep = ValidationReport(field=F)
    m = resolve_mode(F, mode, n)
    if m.kind == "sampled":
        rep.seed = m.seed
    if stop_early and not cheap_ok:
        results["FL1"] = AxiomResult("FL1", False, m.label, note="skipped after a cheaper failure")
        missing = AxiomResult("missing", False, m.label, note="skipped after a cheaper failure")
    else:
        if n:
            results["FL1"] = check_identity(F, "FL1", [n], fl1, m)
        else:
            results["FL1"] = AxiomResult("FL1", True, m.label, note="vacuous")
        if stop_early and not results["FL1"].passed:
            missing = AxiomResult("missing", False, m.label, note="skipped after a cheaper failure")
        else:
            E = build_unified(flag_to_datum(A, fd), unchecked=True)
            missing = missing_relation_check(E.product, E.A_basis, E.V_basis, mode,
                                             backend=backend).entries[0]
    for name in ("FL1", "FL2", "FL3", "FL4", "FL5"):
        rep.add(results[name])
    rep.add(missing)
    return rep


def flag_act(A: Algebra, fd: FlagDatum, r, u) -> FlagDatum:
    """Image of fd under the pair (r, v = u), i.e. the flag datum of the
    transformed extending structure (dim V = 1, r(x) = r)."""
    F = A.field
    n = A.dim
    r = A.vec(r)
    u = F.elem(u)
    if u == 0:
        raise ZeroDivisionError("u must be nonzero")
    ui = F.inv(u)
    lam = fd.lam
    lr = _dot(F, lam, r)
    # D' = u^-1 (D - L_r + r lam^T)
    Lr = A.left_matrix(r)
    rl = Matrix._raw(F, [[F.mul(r[i], lam[j]) for j in range(n)] for i in range(n)], n)
    D2 = (fd.D - Lr + rl).scale(ui) if n else fd.D
    al2 = F.mul(ui, F.sub(fd.alpha0, F.mul(2, lr)))
    a0 = _add(F, fd.a0, A.mul(r, r), _sc(F, F.neg(2), fd.D.apply(r)),
              _sc(F, F.neg(F.mul(2, lr)), r), _sc(F, fd.alpha0, r)) if n else fd.a0
    return FlagDatum(D2, lam, _sc(F, F.mul(ui, ui), a0), al2)


def flag_equivalent(A: Algebra, fd: FlagDatum, fd2: FlagDatum, r, u) -> bool:
    """lam = lam' and the three relations linking (D, alpha0, a0) to (D', alpha0', a0')."""
    F = A.field
    u = F.elem(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    if fd.lam != fd2.lam:
        return False
    n = A.dim
    r = A.vec(r)
    lam = fd2.lam
    lamf = lambda w: _dot(F, lam, w)
    lr = lamf(r)
    for e in (A.e(i) for i in range(n)):
        rhs = _sub(F, _add(F, _sc(F, u, fd2.D.apply(e)), A.mul(e, r)), _sc(F, lamf(e), r))
        if fd.D.apply(e) != rhs:
            return False
    if fd.alpha0 != F.add(F.mul(u, fd2.alpha0), F.mul(2, lr)):
        return False
    rhs = _add(F, _sc(F, F.mul(u, u), fd2.a0), A.mul(r, r), _sc(F, F.mul(2, u), fd2.D.apply(r)),
               _sc(F, F.neg(F.mul(u, fd2.alpha0)), r), _sc(F, F.neg(F.mul(2, lr)), r)) if n else ()
    return fd.a0 == rhs


def iter_flag_data(A: Algebra, bound=None):
    F = A.field
    _require_finite(F, "iter_flag_data")
    n = A.dim
    total = F.p ** (n * n + 2 * n + 1)
    if total > _bound(bound):
        raise BoundExceeded(f"{total} flag data exceeds bound")
    els = list(F.elements())
    for Dv in itertools.product(els, repeat=n * n):
        D = Matrix._raw(F, [Dv[i * n:(i + 1) * n] for i in range(n)], n)
        for lam in itertools.product(els, repeat=n):
            for a0 in itertools.product(els, repeat=n):
                for al in els:
                    yield FlagDatum(D, lam, a0, al)


def classify_flag(A: Algebra, bound=None, mode: Mode | None = None):
    """Validated flag data of A modulo (r, u); H2Class list with FlagDatum representatives."""
    A.require_jordan("A")
    F = A.field
    _require_finite(F, "classify_flag")
    valid = {}
    for fd in iter_flag_data(A, bound):
        if validate_flag_datum(A, fd, mode, stop_early=True).passed:
            valid[fd.key()] = fd
    n = A.dim
    group = [(r, u) for u in F.elements() if u != 0 for r in itertools.product(F.elements(), repeat=n)]
    ds = DisjointSet()
    for k in valid:
        ds.add(k)
    done = set()
    for k in sorted(valid):
        if ds.find(k) in done:
            continue
        done.add(ds.find(k))
        for r, u in group:
            k2 = flag_act(A, valid[k], r, u).key()
            if k2 not in valid:
                raise AssertionError("flag action left the valid set")
            ds.union(k, k2)
    return [H2Class(valid[root], len(members)) for root, members in ds.blocks().items()]


def stabilizing_classes(A: Algebra, bound=None, backend=None):
    """Independent count for dim V = 1: enumerate every symmetric table on A x k
    containing A as a subalgebra, keep the Jordan ones (direct check), and
    canonicalize each under all stabilizing maps by transporting structure
    tensors.  Returns (number of classes, sorted canonical forms)."""
    A.require_jordan("A")
    F = A.field
    _require_finite(F, "stabilizing_classes")
    p, n = F.p, A.dim
    N = n + 1
    free = [(i, n) for i in range(n)] + [(n, n)]
    nfree = len(free) * N
    if p ** nfree > _bound(bound):
        raise BoundExceeded(f"{p ** nfree} tables exceeds bound")
    base = np.zeros((N, N, N), dtype=np.int64)
    base[:n, :n, :n] = A.table.array() if n else 0
    valid = []
    for vals in itertools.product(range(p), repeat=nfree):
        T = base.copy()
        for s, (i, j) in enumerate(free):
            T[i, j, :] = vals[s * N:(s + 1) * N]
            T[j, i, :] = vals[s * N:(s + 1) * N]
        E = Algebra(F, N, Bilinear.from_dense(F, T.tolist()))
        if check_jordan(E, Mode.exhaustive(bound), backend=backend).passed:
            valid.append(T)
    psis = stabilizing_maps(F, n, 1, bound)
    invs = inverse_batch(psis, p)
    forms = set()
    for T in valid:
        img = transport_batch(T, psis, invs, p).reshape(len(psis), -1)
        forms.add(tuple(min(map(tuple, img.tolist()))))
    forms = sorted(forms)
    return len(forms), forms


# -- cohomologous crossed systems ----------------------------------------------------
def cohomology_act(cs: CrossedSystem, r) -> CrossedSystem:
    """x |>' a = x |> a - a r(x);  f' = f + r(xy) + r(x)r(y) - x|>r(y) - y|>r(x)."""
    F = cs.field
    A, V = cs.A, cs.V
    dA, dV = A.dim, V.dim
    r = r if isinstance(r, Matrix) else Matrix(F, r, dV)
    if r.shape != (dA, dV):
        raise DimensionError("r must be dimA x dimV")
    rX = r.columns()
    act, fco = {}, {}
    for l in range(dV):
        for i in range(dA):
            a = A.e(i)
            for k, t in enumerate(_sub(F, cs.act(V.e(l), a), A.mul(a, rX[l]))):
                if t != 0:
                    act[(l, i, k)] = t
        for m in range(dV):
            x, y = V.e(l), V.e(m)
            val = _add(F, cs.f(x, y), r.apply(V.mul(x, y)), A.mul(rX[l], rX[m]))
            val = _sub(F, val, _add(F, cs.act(x, rX[m]), cs.act(y, rX[l])))
            for k, t in enumerate(val):
                if t != 0:
                    fco[(l, m, k)] = t
    out = CrossedSystem(A, V, act, fco)
    out.validated = cs.validated
    return out


def crossed_cohomologous(cs: CrossedSystem, cs2: CrossedSystem, r) -> bool:
    if cs.A != cs2.A or cs.V != cs2.V:
        raise DimensionError("systems over different A or V")
    return cohomology_act(cs, r).key() == cs2.key()


def search_cohomology_witness(cs: CrossedSystem, cs2: CrossedSystem, bound=None):
    """The lexicographically first r with cs ~ cs2 via r, or None."""
    F = cs.field
    if F.p is None:
        raise ModeError("witness search needs a finite field; use crossed_cohomologous to verify")
    if cs.A != cs2.A or cs.V != cs2.V:
        raise DimensionError("systems over different A or V")
    dA, dV = cs.A.dim, cs.V.dim
    total = F.p ** (dA * dV)
    if total > _bound(bound):
        raise BoundExceeded(f"{total} maps r exceeds bound")
    target = cs2.key()
    for vals in itertools.product(F.elements(), repeat=dA * dV):
        r = Matrix._raw(F, [vals[i * dV:(i + 1) * dV] for i in range(dA)], dV)
        if cohomology_act(cs, r).key() == target:
            return r
    return None


def iter_crossed_systems(A: Algebra, V: Algebra, bound=None):
    F = A.field
    _require_finite(F, "iter_crossed_systems")
    dA, dV = A.dim, V.dim
    aslots = [(l, i, k) for l in range(dV) for i in range(dA) for k in range(dA)]
    fslots = _sym_slots(dV, dA)
    total = F.p ** (len(aslots) + len(fslots))
    if total > _bound(bound):
        raise BoundExceeded(f"{total} crossed systems exceeds bound")
    els = list(F.elements())
    for av in itertools.product(els, repeat=len(aslots)):
        act = {s: t for s, t in zip(aslots, av) if t != 0}
        for fv in itertools.product(els, repeat=len(fslots)):
            f = {}
            for (l, m, k), t in zip(fslots, fv):
                if t != 0:
                    f[(l, m, k)] = t
                    f[(m, l, k)] = t
            yield CrossedSystem(A, V, act, f)


def h2_nab(V: Algebra, A: Algebra, bound=None, mode: Mode | None = None):
    """Validated crossed systems of (A, V) modulo the cohomologous relation."""
    A.require_jordan("A")
    V.require_jordan("V")
    F = A.field
    _require_finite(F, "h2_nab")
    valid = {}
    for cs in iter_crossed_systems(A, V, bound):
        if validate_crossed_system(cs, mode).passed:
            valid[cs.key()] = cs
    dA, dV = A.dim, V.dim
    rs = [Matrix._raw(F, [vals[i * dV:(i + 1) * dV] for i in range(dA)], dV)
          for vals in itertools.product(F.elements(), repeat=dA * dV)]
    ds = DisjointSet()
    for k in valid:
        ds.add(k)
    done = set()
    for k in sorted(valid):
        if ds.find(k) in done:
            continue
        done.add(ds.find(k))
        for r in rs:
            k2 = cohomology_act(valid[k], r).key()
            if k2 not in valid:
                raise AssertionError("cohomologous system failed validation")
            ds.union(k, k2)
    return [H2Class(valid[root], len(members), True) for root, members in ds.blocks().items()]


# -- the one-dimensional model V = k_eps -------------------------------------------
ONEDIM_AXIOMS = ("C1", "C2", "C3", "C4", "C5", "C6")


def k_eps(field: Field, eps) -> Algebra:
    eps = field.elem(eps)
    if eps not in (field.zero, field.one):
        raise ValueError("eps must be 0 or 1")
    return unit_field(field) if eps == field.one else abelian(field, 1)


def onedim_system(A: Algebra, eps, D: Matrix, a0) -> CrossedSystem:
    """x |> a = D(a), f(x, x) = a0 over V = k_eps."""
    F = A.field
    n = A.dim
    act = {(0, i, k): D.rows[k][i] for i in range(n) for k in range(n) if D.rows[k][i] != 0}
    f = {(0, 0, k): t for k, t in enumerate(A.vec(a0)) if t != 0}
    return CrossedSystem(A, k_eps(F, eps), act, f)


def _onedim_identities(A: Algebra, eps, D: Matrix, a0):
    F = A.field
    T = A.table
    n = A.dim
    a0 = A.vec(a0)
    eps = F.elem(eps)

    def c1(ev, a):
        a2 = ev.bil(T, a, a)
        return ev.sub(ev.bil(T, a, ev.lin(D, a2)), ev.bil(T, a2, ev.lin(D, a)))

    def c2(ev, a):
        N = a.shape[0]
        A0 = ev.const(a0, N)
        return ev.sub(ev.lin(D, ev.bil(T, A0, a)), ev.bil(T, A0, ev.lin(D, a)))

    def c5(ev, a):
        N = a.shape[0]
        A0 = ev.const(a0, N)
        D1 = ev.lin(D, a)
        D2 = ev.lin(D, D1)
        D3 = ev.lin(D, D2)
        a2 = ev.bil(T, a, a)
        lhs = ev.add(ev.scale(2, ev.bil(T, a, D2)), ev.bil(T, a, ev.lin(D, A0)),
                     ev.bil(T, A0, a), D1, ev.lin(D, ev.lin(D, a2)), ev.scale(2, D3))
        rhs = ev.add(ev.bil(T, a2, A0), ev.scale(2, ev.bil(T, D1, D1)),
                     ev.scale(3, ev.bil(T, A0, D1)), ev.lin(D, a2), ev.scale(3, D2))
        return ev.sub(lhs, rhs)

    def c6(ev, a, b):
        N = a.shape[0]
        A0 = ev.const(a0, N)
        Da, Db = ev.lin(D, a), ev.lin(D, b)
        a2, ba = ev.bil(T, a, a), ev.bil(T, b, a)
        lhs = ev.add(ev.scale(2, ev.bil(T, ev.bil(T, Da, b), a)), ev.bil(T, ev.bil(T, A0, b), a),
                     ev.bil(T, a, Db), ev.lin(D, ev.bil(T, a2, b)),
                     ev.scale(2, ev.lin(D, ev.bil(T, Da, b))))
        rhs = ev.add(ev.bil(T, a2, Db), ev.scale(2, ev.bil(T, Da, ba)), ev.scale(2, ev.bil(T, Da, Db)),
                     ev.bil(T, A0, ba), ev.lin(D, ba))
        return ev.sub(lhs, rhs)

    Da0 = D.apply(a0)
    c3 = _sub(F, D.apply(Da0), _add(F, A.mul(a0, a0), _sc(F, eps, Da0)))
    c4 = _sub(F, _sc(F, eps, Da0), Da0)
    return c1, c2, c3, c4, c5, c6


def check_onedim_pair(A: Algebra, eps, D, a0, mode: Mode | None = None) -> ValidationReport:
    """The six displayed compatibilities for (D, a0), each as its own named check.

    C3 and C4 are constant; C2 is linear in a; C1 and C5 are one-variable
    identities in a; C6 is linear in its second argument.
    """
    A.require_jordan("A")
    F = A.field
    n = A.dim
    D = D if isinstance(D, Matrix) else Matrix(F, D, n)
    c1, c2, c3, c4, c5, c6 = _onedim_identities(A, eps, D, a0)
    rep = ValidationReport(field=F)
    m = resolve_mode(F, mode, n)
    if m.kind == "sampled":
        rep.seed = m.seed
    if n == 0:
        for name in ONEDIM_AXIOMS:
            rep.add(AxiomResult(name, True, "exact", note="vacuous"))
        return rep
    rep.add(check_identity(F, "C1", [n], c1, m))
    rep.add(check_identity(F, "C2", [n], c2, m, nlin=1))
    rep.add(AxiomResult("C3", all(t == 0 for t in c3), "exact"))
    rep.add(AxiomResult("C4", all(t == 0 for t in c4), "exact"))
    rep.add(check_identity(F, "C5", [n], c5, m))
    rep.add(check_identity(F, "C6", [n, n], c6, m, nlin=1))
    return rep


def _all_matrices(p, n, bound):
    total = p ** (n * n)
    if total > _bound(bound):
        raise BoundExceeded(f"{p}^{n * n} matrices exceeds bound")
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, n * n), dtype=np.int64)
    for c in range(n * n - 1, -1, -1):
        digits[:, c] = idx % p
        idx //= p
    return digits.reshape(total, n, n)


def _all_vectors(p, n):
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)


def solve_matrix_cubic(n: int, field: Field, candidates=None, bound=None):
    """All D in M_n(F) with 2D^3 - 3D^2 + D = 0, lexicographic in the row-major entries.

    Over Q only the supplied candidates are tested (the ones satisfying the
    equation are returned).
    """
    F = field
    if F.p is None or candidates is not None:
        if candidates is None:
            raise ModeError("over Q pass candidates to verify")
        out = []
        for D in candidates:
            D = D if isinstance(D, Matrix) else Matrix(F, D, n)
            D2 = D @ D
            if ((D2 @ D).scale(2) - D2.scale(3) + D).is_zero():
                out.append(D)
        return out
    p = F.p
    Ms = _all_matrices(p, n, bound)
    M2 = np.einsum("Nij,Njk->Nik", Ms, Ms) % p
    M3 = np.einsum("Nij,Njk->Nik", M2, Ms) % p
    ok = np.all(((2 * M3 - 3 * M2 + Ms) % p).reshape(len(Ms), -1) == 0, axis=1)
    return [Matrix.from_array(F, M) for M in Ms[ok]]


def _onedim_masks(A: Algebra, eps, Ds, a0s):
    """Vectorized C1-C6 over every pair (D, a0): boolean masks of shape (ND, Na)."""
    F = A.field
    p, n = F.p, A.dim
    T = A.table.array()
    eps = int(F.elem(eps))
    pts = _all_vectors(p, n)                       # every a in A
    E = np.eye(n, dtype=np.int64)                   # basis b

    def mul(x, y):  # broadcasting product over leading axes
        return np.einsum("...i,...j,ijk->...k", x, y, T) % p

    def Dap(D, x):  # D (ND,n,n) applied to x (..., n) -> (ND, ..., n)
        return np.einsum("Dkl,...l->D...k", D, x) % p

    ND, Na = len(Ds), len(a0s)
    a2 = mul(pts, pts)                               # (P, n)
    # C1: a D(a^2) = a^2 D(a), independent of a0
    c1 = np.all((mul(pts[None], Dap(Ds, a2)) - mul(a2[None], Dap(Ds, pts))) % p == 0, axis=(1, 2))
    # C2: D(a0 e_i) = a0 D(e_i)
    a0E = mul(a0s[:, None, :], E[None])              # (Na, n_i, n)
    lhs = np.einsum("Dkl,Ail->DAik", Ds, a0E) % p
    DE = Dap(Ds, E)                                  # (ND, n_i, n)
    rhs = mul(a0s[None, :, None, :], DE[:, None])    # (ND, Na, n_i, n)
    c2 = np.all((lhs - rhs) % p == 0, axis=(2, 3))
    Da0 = np.einsum("Dkl,Al->DAk", Ds, a0s) % p     # (ND, Na, n)
    DDa0 = np.einsum("Dkl,DAl->DAk", Ds, Da0) % p
    a0sq = mul(a0s, a0s)
    c3 = np.all((DDa0 - a0sq[None] - eps * Da0) % p == 0, axis=2)
    c4 = np.all(((eps - 1) * Da0) % p == 0, axis=2)
    # C5, per a
    D1 = Dap(Ds, pts)                                # (ND, P, n)
    D2 = np.einsum("Dkl,DPl->DPk", Ds, D1) % p
    D3 = np.einsum("Dkl,DPl->DPk", Ds, D2) % p
    Da2 = Dap(Ds, a2)
    DDa2 = np.einsum("Dkl,DPl->DPk", Ds, Da2) % p
    # terms independent of a0
    base = (2 * mul(pts[None], D2) + D1 + DDa2 + 2 * D3
            - 2 * mul(D1, D1) - Da2 - 3 * D2) % p        # (ND, P, n)
    # a0-dependent: a D(a0) + a0 a - a^2 a0 - 3 a0 D(a)
    t = (mul(pts[None, None], Da0[:, :, None, :]) + mul(a0s[None, :, None, :], pts[None, None])
         - mul(a2[None, None], a0s[None, :, None, :])
         - 3 * mul(a0s[None, :, None, :], D1[:, None])) % p   # (ND, Na, P, n)
    c5 = np.all((base[:, None] + t) % p == 0, axis=(2, 3))
    # C6, per (a, b = e_i)
    bA = mul(E[None], pts[:, None])                  # b a: (P, n_i, n)
    a2b = mul(a2[:, None], E[None])                  # (P, n_i, n)
    DaB = mul(D1[:, :, None], E[None, None])         # D(a) b: (ND, P, n_i, n)
    DE_ = DE[:, None]                                # D(b): (ND, 1, n_i, n)
    lhs6 = (2 * mul(DaB, pts[None, :, None]) + mul(pts[None, :, None], DE_)
            + np.einsum("Dkl,Pil->DPik", Ds, a2b) + 2 * np.einsum("Dkl,DPil->DPik", Ds, DaB)) % p
    rhs6 = (mul(a2[None, :, None], DE_) + 2 * mul(D1[:, :, None], bA[None])
            + 2 * mul(D1[:, :, None], DE_) + np.einsum("Dkl,Pil->DPik", Ds, bA)) % p
    # a0 terms: (a0 b) a on the left, a0 (b a) on the right
    a0b = mul(a0s[:, None], E[None])                 # (Na, n_i, n)
    t6 = (mul(a0b[:, None], pts[None, :, None]) - mul(a0s[:, None, None], bA[None])) % p  # (Na,P,n_i,n)
    c6 = np.all((lhs6[:, None] - rhs6[:, None] + t6[None]) % p == 0, axis=(2, 3, 4))
    c1 = np.broadcast_to(c1[:, None], (ND, Na))
    return {"C1": c1, "C2": c2, "C3": c3, "C4": c4, "C5": c5, "C6": c6}


def onedim_relation(A: Algebra, eps, D: Matrix, a0, r):
    """D' = D - L_r,  a0' = a0 + r^2 - 2 D(r) + eps r."""
    F = A.field
    r = A.vec(r)
    eps = F.elem(eps)
    D2 = D - A.left_matrix(r) if A.dim else D
    a02 = _add(F, A.vec(a0), A.mul(r, r), _sc(F, F.neg(2), D.apply(r)), _sc(F, eps, r))
    return D2, a02


def h2_onedim(A: Algebra, eps, mode: Mode | None = None, candidates=None, bound=None,
              check_crossed: bool = True):
    """Pairs (D, a0) passing the six compatibilities, modulo the (r)-relation.

    Over a finite field every pair is enumerated (vectorized); over Q only the
    supplied candidate pairs are verified and returned unquotiented.  Each
    class records whether its representative also passes the general
    crossed-system validator.
    """
    A.require_jordan("A")
    F = A.field
    n = A.dim
    eps = F.elem(eps)
    if F.p is None or candidates is not None:
        if candidates is None:
            raise ModeError("over Q pass candidate pairs (D, a0) to verify")
        out = []
        for D, a0 in candidates:
            D = D if isinstance(D, Matrix) else Matrix(F, D, n)
            if check_onedim_pair(A, eps, D, a0, mode).passed:
                cv = validate_crossed_system(onedim_system(A, eps, D, a0), mode).passed \
                    if check_crossed else None
                out.append(H2Class((D, A.vec(a0)), 1, cv))
        return out
    p = F.p
    total = p ** (n * n + n)
    if total > _bound(bound):
        raise BoundExceeded(f"{total} pairs (D, a0) exceeds bound")
    Ds = _all_matrices(p, n, bound)
    a0s = _all_vectors(p, n)
    masks = _onedim_masks(A, eps, Ds, a0s)
    ok = np.logical_and.reduce([masks[k] for k in ONEDIM_AXIOMS])
    valid = {}
    for di, ai in zip(*np.nonzero(ok)):
        D = Matrix.from_array(F, Ds[di]) if n else Matrix.zeros(F, 0, 0)
        a0 = tuple(int(t) for t in a0s[ai])
        valid[D.flat() + a0] = (D, a0)
    ds = DisjointSet()
    for k in valid:
        ds.add(k)
    rs = list(itertools.product(F.elements(), repeat=n))
    # The six compatibilities are not closed under the relation in general,
    # so the relation is restricted to the valid set (connected components)
    # and pairs whose images escape are flagged.
    escapes = set()
    for k in sorted(valid):
        D, a0 = valid[k]
        for r in rs:
            D2, a02 = onedim_relation(A, eps, D, a0, r)
            k2 = D2.flat() + a02
            if k2 in valid:
                ds.union(k, k2)
            else:
                escapes.add(k)
    out = []
    for root, members in ds.blocks().items():
        D, a0 = valid[root]
        cv = validate_crossed_system(onedim_system(A, eps, D, a0), mode).passed \
            if check_crossed else None
        note = "relation leaves the valid set" if escapes.intersection(members) else ""
        out.append(H2Class((D, a0), len(members), cv, note))
    return out


def onedim_valid_pairs(A: Algebra, eps, bound=None):
    """Every (D, a0) passing the six compatibilities (finite field), no quotient."""
    F = A.field
    _require_finite(F, "onedim_valid_pairs")
    Ds = _all_matrices(F.p, A.dim, bound)
    a0s = _all_vectors(F.p, A.dim)
    masks = _onedim_masks(A, F.elem(eps), Ds, a0s)
    ok = np.logical_and.reduce([masks[k] for k in ONEDIM_AXIOMS])
    return [(Matrix.from_array(F, Ds[d]), tuple(int(t) for t in a0s[a]))
            for d, a in zip(*np.nonzero(ok))]
