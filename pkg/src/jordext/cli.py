"""Command-line driver.

Exit codes: 0 success, 1 validation failure, 2 usage, input or bound errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import kernels
from .algebra import abelian, check_jordan, check_polarization_relation
from .classify import (classify_flag, h2_onedim, solve_matrix_cubic)
from .crossed import build_crossed, decompose_iterated, rebuild, validate_crossed_system
from .errors import JordError
from .identities import Mode, ValidationReport
from .invariants import (artin_decomposition, cyclic_kernel_check, generate_group,
                         invariant_subalgebra, trace_map)
from .io import (load_action, load_algebra, load_crossed, load_datum, load_text, parse_matrix,
                 parse_rows, parse_spin_form, serialize_algebra, serialize_datum)
from .linalg import Matrix
from .scalars import Field
from .unified import (build_twisted, build_unified, extract_extending_structure, spin_factor,
                      validate_extending_structure)


class Failure(Exception):
    """Validation failed; carries the payload to print."""

    def __init__(self, payload):
        super().__init__("validation failure")
        self.payload = payload


# -- helpers ----------------------------------------------------------------------
def _mode(args):
    return Mode.parse(args.mode, bound=args.bound, seed=args.seed, count=args.count)


def _require(A, args, what):
    rep = check_jordan(A, _mode(args))
    if not rep.passed:
        raise Failure({"error": f"{what} is not a Jordan algebra", "report": rep.to_dict(),
                       "text": f"{what} is not a Jordan algebra\n{rep.summary()}"})
    return rep


def _vec(F, v):
    return [F.fmt(x) for x in v]


def _mat(M: Matrix):
    return [[M.field.fmt(x) for x in r] for r in M.rows]


def _report_payload(rep: ValidationReport, **extra):
    d = {"report": rep.to_dict(), "text": rep.summary()}
    d.update(extra)
    return d


# -- commands ---------------------------------------------------------------------
def cmd_check(args):
    A = load_algebra(args.file)
    rep = check_jordan(A, _mode(args))
    if args.polarization and rep.passed:
        rep.extend(check_polarization_relation(A, _mode(args)))
    out = _report_payload(rep, dim=A.dim, field=A.field.name)
    if not rep.passed:
        raise Failure(out)
    return out


def cmd_product(args):
    kind = args.kind
    if kind == "spin":
        F, dimV, rows = parse_spin_form(load_text(args.file))
        up = spin_factor(dimV, rows, field=F, mode=_mode(args))
        text = serialize_algebra(up.product)
        return {"text": text.rstrip(), "algebra": text}
    if kind == "crossed":
        cs = load_crossed(args.file)
        _require(cs.A, args, "A")
        _require(cs.V, args, "V")
        rep = validate_crossed_system(cs, _mode(args))
        if not rep.passed:
            raise Failure(_report_payload(rep))
        E = build_crossed(cs)
    else:
        d = load_datum(args.file)
        _require(d.A, args, "A")
        if kind == "twisted" and not d.actl.is_zero():
            raise JordError("twisted product needs x |> a = 0")
        rep = validate_extending_structure(d, _mode(args))
        if not rep.passed:
            raise Failure(_report_payload(rep))
        E = (build_twisted(d) if kind == "twisted" else build_unified(d)).product
    text = serialize_algebra(E)
    return _report_payload(rep, algebra=text, text=rep.summary() + "\n" + text.rstrip())


def cmd_extract(args):
    E = load_algebra(args.file)
    _require(E, args, "E")
    F, n = E.field, E.dim
    basis = parse_rows(F, load_text(args.subalg), n)
    P = parse_matrix(F, load_text(args.retraction), n)
    comp = parse_rows(F, load_text(args.complement), n) if args.complement else None
    rec = extract_extending_structure(E, basis, P, comp)
    rep = validate_extending_structure(rec.datum, _mode(args))
    text = serialize_datum(rec.datum)
    payload = _report_payload(rep, datum=text, V_basis=[_vec(F, v) for v in rec.V_basis],
                              text=rep.summary() + "\n" + text.rstrip())
    if not rep.passed:
        raise Failure(payload)
    return payload


def _classes_payload(F, classes, kind):
    out = []
    lines = []
    for c in classes:
        rep = c.representative
        if kind == "flag":
            item = {"D": _mat(rep.D), "lambda": _vec(F, rep.lam), "a0": _vec(F, rep.a0),
                    "alpha0": F.fmt(rep.alpha0)}
        else:
            D, a0 = rep
            item = {"D": _mat(D), "a0": _vec(F, a0)}
        item["orbit_size"] = c.orbit_size
        if c.crossed_valid is not None:
            item["crossed_valid"] = c.crossed_valid
        if c.note:
            item["note"] = c.note
        out.append(item)
        lines.append(" ".join(f"{k}={v}" for k, v in item.items()))
    return {"count": len(out), "classes": out,
            "text": f"{len(out)} classes\n" + "\n".join(lines)}


def cmd_classify(args):
    if args.what == "flag":
        if not args.algebra:
            raise JordError("classify flag needs --algebra")
        A = load_algebra(args.algebra)
        _require(A, args, "A")
        return _classes_payload(A.field, classify_flag(A, args.bound, _mode(args)), "flag")
    if args.what == "h2":
        return cmd_h2(args)
    if args.what == "matrix-cubic":
        F = Field.gf(args.p)
        sols = solve_matrix_cubic(args.n, F, bound=args.bound)
        return {"count": len(sols), "matrices": [_mat(D) for D in sols],
                "text": f"{len(sols)} solutions\n" + "\n".join(str(_mat(D)) for D in sols)}
    raise JordError(f"unknown classify target {args.what!r}")


def cmd_h2(args):
    if args.algebra:
        A = load_algebra(args.algebra)
        _require(A, args, "A")
    else:
        if args.n is None or args.p is None:
            raise JordError("h2 needs --n and --p (or --algebra)")
        A = abelian(Field.gf(args.p), args.n)
    if args.eps not in (0, 1):
        raise JordError("--eps must be 0 or 1")
    classes = h2_onedim(A, args.eps, _mode(args), bound=args.bound)
    return _classes_payload(A.field, classes, "h2")


def cmd_artin(args):
    A, gens = load_action(args.file)
    _require(A, args, "A")
    G = generate_group(A, gens)
    dec = artin_decomposition(G, _mode(args))
    F = A.field
    cyc = cyclic_kernel_check(G) if len(gens) == 1 else None
    payload = {"order": G.order,
               "invariants": [_vec(F, v) for v in invariant_subalgebra(G)],
               "trace": _mat(trace_map(G)),
               "V_basis": [_vec(F, v) for v in dec.reconstruction.V_basis],
               "left_action_zero": dec.datum.actl.is_zero(),
               "datum": serialize_datum(dec.datum)}
    if cyc is not None:
        payload["cyclic_kernel"] = cyc
    payload["text"] = (f"|G| = {G.order}, dim A^G = {len(payload['invariants'])}\n"
                       f"left action zero: {payload['left_action_zero']}\n"
                       + (f"Ker(t) = span(a - g a): {cyc}\n" if cyc is not None else "")
                       + payload["datum"].rstrip())
    if cyc is False:
        raise Failure(payload)
    return payload


def cmd_decompose(args):
    A = load_algebra(args.file)
    _require(A, args, "A")
    tree = decompose_iterated(A, args.max_dim, bound=args.bound, mode=_mode(args))
    R, iso = rebuild(tree)
    leaves = [leaf.algebra.dim for leaf in tree.leaves()]
    return {"tree": tree.to_dict(), "leaf_dims": leaves, "rebuild_iso": _mat(iso),
            "text": f"leaf dims {leaves}\n" + json.dumps(tree.to_dict())}


# -- parser -----------------------------------------------------------------------
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None, help="cap worker threads")
    common.add_argument("--bound", type=int, default=None, help="exhaustive/enumeration bound")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled mode")
    common.add_argument("--count", type=int, default=200, help="samples in sampled mode")
    common.add_argument("--mode", choices=["auto", "formal", "exhaustive", "sampled"],
                        default="auto")
    common.add_argument("--engine", choices=["auto", "cython", "numpy"], default="auto",
                        help="scan kernel backend")

    p = argparse.ArgumentParser(prog="jord", description="Jordan algebra extensions toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="commutativity and Jordan identity")
    s.add_argument("file")
    s.add_argument("--polarization", action="store_true", help="also check the polarization relation")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("product", parents=[common], help="build a product from a datum file")
    s.add_argument("kind", choices=["unified", "crossed", "twisted", "spin"])
    s.add_argument("file")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("extract", parents=[common], help="datum induced by a retraction")
    s.add_argument("file")
    s.add_argument("--subalg", required=True, help="basis file, one vector per line")
    s.add_argument("--retraction", required=True, help="matrix file (n x n or dimA x n)")
    s.add_argument("--complement", help="explicit basis of Ker(p)")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("classify", parents=[common], help="classification engines")
    s.add_argument("what", choices=["flag", "h2", "matrix-cubic"])
    s.add_argument("--algebra")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--eps", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("h2", parents=[common], help="one-dimensional H2 model over k_eps")
    s.add_argument("--algebra")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--eps", type=int, default=0)
    s.set_defaults(func=cmd_h2)

    s = sub.add_parser("artin", parents=[common], help="invariants and trace decomposition")
    s.add_argument("file")
    s.set_defaults(func=cmd_artin)

    s = sub.add_parser("decompose", parents=[common], help="iterated crossed-product decomposition")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int, default=None)
    s.set_defaults(func=cmd_decompose)
    return p


def _emit(args, payload, ok, stream):
    if args.json:
        body = {k: v for k, v in payload.items() if k != "text"}
        body.update({"command": args.command, "passed": ok})
        if args.mode == "sampled":
            body.setdefault("seed", args.seed)
        stream.write(json.dumps(body, indent=2) + "\n")
    else:
        stream.write(payload.get("text", "") + "\n")
        if not ok:
            stream.write("FAIL\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    saved = (os.environ.get("JORD_BOUND"), kernels.BACKEND)
    try:
        return _dispatch(args)
    finally:
        if saved[0] is None:
            os.environ.pop("JORD_BOUND", None)
        else:
            os.environ["JORD_BOUND"] = saved[0]
        kernels.BACKEND = saved[1]
        kernels.set_threads(None)


def _dispatch(args) -> int:
    if args.bound is not None:
        os.environ["JORD_BOUND"] = str(args.bound)
    kernels.set_threads(args.threads)
    if args.engine != "auto":
        if args.engine == "cython" and kernels._compiled is None:
            sys.stderr.write("error: compiled kernels are not available\n")
            return 2
        kernels.BACKEND = args.engine
    try:
        payload = args.func(args)
    except Failure as f:
        _emit(args, f.payload, False, sys.stdout)
        return 1
    except (JordError, ValueError, ZeroDivisionError, OSError) as e:
        if args.json:
            sys.stdout.write(json.dumps({"command": args.command, "error": str(e)}) + "\n")
        sys.stderr.write(f"error: {e}\n")
        return 2
    _emit(args, payload, True, sys.stdout)
    return 0

if __name__ == "__main__":
    sys.exit(main())
