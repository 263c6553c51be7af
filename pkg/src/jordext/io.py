"""Text formats for algebras, extending data, crossed systems, extensions,
group actions, spin forms, matrices and bases.

All formats are line based; ``#`` starts a comment and blank lines are
ignored.  Unknown directives are errors, reported with their line number.
Files referring to other algebras accept either ``A <path>`` (relative to
the referring file) or an inline ``begin A`` ... ``end A`` block.
"""
from __future__ import annotations

from pathlib import Path

from .algebra import Algebra, subalgebra
from .crossed import CrossedSystem, Extension, default_section
from .errors import CharacteristicError, JordError, ParseError
from .linalg import Matrix
from .scalars import Field
from .unified import ExtendingDatum


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def _int(tok, n, what="index"):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", n) from None
    if v < 0:
        raise ParseError(f"{what} {tok!r} is negative", n)
    return v


def _scalar(F: Field, tok, n):
    try:
        return F.parse(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad scalar {tok!r}: {e}", n) from None


def _field(toks, n) -> Field:
    if toks[1:] == ["Q"]:
        return Field.rationals()
    if len(toks) == 3 and toks[1] == "GF":
        p = _int(toks[2], n, "characteristic")
        try:
            return Field.gf(p)
        except CharacteristicError as e:
            raise ParseError(str(e), n) from None
        except ValueError as e:
            raise ParseError(str(e), n) from None
    raise ParseError("expected 'field Q' or 'field GF <p>'", n)


def _fmt_field(F: Field) -> str:
    return "field Q" if F.p is None else f"field GF {F.p}"


def _blocks(text):
    """Split out inline ``begin X`` ... ``end X`` blocks; returns (rest, blocks)."""
    rest, blocks, cur, name, start = [], {}, None, None, 0
    for n, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks[:1] == ["begin"]:
            if cur is not None or len(toks) != 2:
                raise ParseError("malformed or nested 'begin'", n)
            cur, name, start = [], toks[1], n
            continue
        if toks[:1] == ["end"]:
            if cur is None or toks[1:] != [name]:
                raise ParseError("unmatched 'end'", n)
            blocks[name] = (start, "\n".join(cur))
            cur = None
            continue
        if cur is not None:
            cur.append(raw)
            rest.append("")
        else:
            rest.append(raw)
    if cur is not None:
        raise ParseError(f"block {name!r} not closed", start)
    return "\n".join(rest), blocks


# -- algebras -----------------------------------------------------------------------
def parse_algebra(text: str) -> Algebra:
    F = dim = None
    entries = {}
    for n, toks in _lines(text):
        kw = toks[0]
        if kw == "field":
            if F is not None:
                raise ParseError("duplicate 'field'", n)
            F = _field(toks, n)
        elif kw == "dim":
            if dim is not None or len(toks) != 2:
                raise ParseError("malformed 'dim'", n)
            dim = _int(toks[1], n, "dimension")
        elif kw == "c":
            if F is None or dim is None:
                raise ParseError("'c' before 'field' and 'dim'", n)
            if len(toks) != 5:
                raise ParseError("expected 'c i j k s'", n)
            i, j, k = (_int(t, n) for t in toks[1:4])
            if max(i, j, k) >= dim:
                raise ParseError(f"index out of range for dim {dim}", n)
            if i > j:
                raise ParseError("entries need i <= j (the product is stored once)", n)
            if (i, j, k) in entries:
                raise ParseError("duplicate entry", n)
            s = _scalar(F, toks[4], n)
            if s != 0:
                entries[(i, j, k)] = s
        else:
            raise ParseError(f"unknown directive {kw!r}", n)
    if F is None or dim is None:
        raise ParseError("missing 'field' or 'dim'")
    return Algebra.from_upper(F, dim, entries)


def serialize_algebra(A: Algebra) -> str:
    F = A.field
    lines = [_fmt_field(F), f"dim {A.dim}"]
    for (i, j, k), s in A.table.entries():
        if i <= j:
            lines.append(f"c {i} {j} {k} {F.fmt(s)}")
    return "\n".join(lines) + "\n"


def load_algebra(path) -> Algebra:
    return parse_algebra(Path(path).read_text())


# -- helpers for files that embed algebras ---------------------------------------
def _ref_algebra(name, toks, n, base, blocks):
    if name in blocks:
        raise ParseError(f"{name} given both inline and by path", n)
    if len(toks) != 2:
        raise ParseError(f"expected '{name} <path>'", n)
    path = Path(toks[1])
    if not path.is_absolute() and base is not None:
        path = Path(base) / path
    try:
        return load_algebra(path)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", n) from None


def _inline(blocks, name):
    start, body = blocks[name]
    try:
        return parse_algebra(body)
    except ParseError as e:
        raise ParseError(e.msg, start + e.lineno if e.lineno is not None else start) from None


def _sparse(F, toks, n, shape, sym, store):
    if len(toks) != 5:
        raise ParseError(f"expected '{toks[0]} i j k s'", n)
    i, j, k = (_int(t, n) for t in toks[1:4])
    if i >= shape[0] or j >= shape[1] or k >= shape[2]:
        raise ParseError(f"index out of range for shape {shape}", n)
    if sym and i > j:
        raise ParseError(f"'{toks[0]}' entries need i <= j (symmetric map)", n)
    if (i, j, k) in store:
        raise ParseError("duplicate entry", n)
    s = _scalar(F, toks[4], n)
    if s != 0:
        store[(i, j, k)] = s
        if sym:
            store[(j, i, k)] = s


# -- extending data ----------------------------------------------------------------
_DATUM_MAPS = {"actr": False, "actl": False, "f": True, "mulv": True}


def parse_datum(text: str, base=None) -> ExtendingDatum:
    text, blocks = _blocks(text)
    A = _inline(blocks, "A") if "A" in blocks else None
    dimV = None
    lines = list(_lines(text))
    for n, toks in lines:
        if toks[0] == "A":
            A = _ref_algebra("A", toks, n, base, blocks)
        elif toks[0] == "dimV":
            if len(toks) != 2:
                raise ParseError("malformed 'dimV'", n)
            dimV = _int(toks[1], n, "dimension")
    if A is None or dimV is None:
        raise ParseError("datum needs 'A' and 'dimV'")
    dA = A.dim
    shapes = {"actr": (dimV, dA, dimV), "actl": (dimV, dA, dA), "f": (dimV, dimV, dA),
              "mulv": (dimV, dimV, dimV)}
    maps = {k: {} for k in shapes}
    for n, toks in lines:
        kw = toks[0]
        if kw in ("A", "dimV"):
            continue
        if kw not in shapes:
            raise ParseError(f"unknown directive {kw!r}", n)
        _sparse(A.field, toks, n, shapes[kw], _DATUM_MAPS[kw], maps[kw])
    return ExtendingDatum(A, dimV, maps["actr"], maps["actl"], maps["f"], maps["mulv"])


def _inline_block(name, A):
    return [f"begin {name}"] + serialize_algebra(A).splitlines() + [f"end {name}"]


def _sparse_lines(kw, B, sym):
    F = B.field
    return [f"{kw} {i} {j} {k} {F.fmt(s)}" for (i, j, k), s in B.entries()
            if not sym or i <= j]


def serialize_datum(d: ExtendingDatum) -> str:
    lines = _inline_block("A", d.A) + [f"dimV {d.dimV}"]
    lines += _sparse_lines("actr", d.actr, False) + _sparse_lines("actl", d.actl, False)
    lines += _sparse_lines("f", d.f, True) + _sparse_lines("mulv", d.mulV, True)
    return "\n".join(lines) + "\n"


def load_datum(path) -> ExtendingDatum:
    path = Path(path)
    return parse_datum(path.read_text(), base=path.parent)


# -- crossed systems ----------------------------------------------------------------
def parse_crossed(text: str, base=None) -> CrossedSystem:
    text, blocks = _blocks(text)
    algs = {k: _inline(blocks, k) for k in ("A", "V") if k in blocks}
    lines = list(_lines(text))
    for n, toks in lines:
        if toks[0] in ("A", "V"):
            algs[toks[0]] = _ref_algebra(toks[0], toks, n, base, blocks)
    if set(algs) != {"A", "V"}:
        raise ParseError("crossed system needs 'A' and 'V'")
    A, V = algs["A"], algs["V"]
    if A.field != V.field:
        raise ParseError("A and V over different fields")
    shapes = {"actl": (V.dim, A.dim, A.dim), "f": (V.dim, V.dim, A.dim)}
    maps = {"actl": {}, "f": {}}
    for n, toks in lines:
        kw = toks[0]
        if kw in ("A", "V"):
            continue
        if kw not in shapes:
            raise ParseError(f"unknown directive {kw!r}", n)
        _sparse(A.field, toks, n, shapes[kw], kw == "f", maps[kw])
    return CrossedSystem(A, V, maps["actl"], maps["f"])


def serialize_crossed(cs: CrossedSystem) -> str:
    lines = _inline_block("A", cs.A) + _inline_block("V", cs.V)
    lines += _sparse_lines("actl", cs.act, False) + _sparse_lines("f", cs.f, True)
    return "\n".join(lines) + "\n"


def load_crossed(path) -> CrossedSystem:
    path = Path(path)
    return parse_crossed(path.read_text(), base=path.parent)


# -- dense matrices -----------------------------------------------------------------
def parse_rows(F: Field, text: str, width=None):
    """Rows of scalars (one vector per line)."""
    rows = []
    for n, toks in _lines(text):
        row = tuple(_scalar(F, t, n) for t in toks)
        if width is not None and len(row) != width:
            raise ParseError(f"expected {width} entries, got {len(row)}", n)
        if rows and len(row) != len(rows[0]):
            raise ParseError("ragged rows", n)
        rows.append(row)
    return rows


def parse_matrix(F: Field, text: str, ncols=None) -> Matrix:
    rows = parse_rows(F, text, ncols)
    if not rows:
        if ncols is None:
            raise ParseError("empty matrix")
        return Matrix.zeros(F, 0, ncols)
    return Matrix(F, rows, len(rows[0]))


def serialize_matrix(M: Matrix) -> str:
    F = M.field
    return "".join(" ".join(F.fmt(x) for x in r) + "\n" for r in M.rows)


def _dense_section(F, lines, idx, n, toks, name):
    """Read ``name <m> <k>`` followed by m rows of k scalars from ``lines``."""
    if len(toks) != 3:
        raise ParseError(f"expected '{name} <rows> <cols>'", n)
    m, k = _int(toks[1], n, "rows"), _int(toks[2], n, "cols")
    rows = []
    for _ in range(m):
        idx += 1
        if idx >= len(lines):
            raise ParseError(f"'{name}' needs {m} rows", n)
        ln, rt = lines[idx]
        if len(rt) != k:
            raise ParseError(f"expected {k} entries", ln)
        rows.append(tuple(_scalar(F, t, ln) for t in rt))
    return (Matrix(F, rows, k) if m else Matrix.zeros(F, 0, k)), idx


# -- extensions ---------------------------------------------------------------------
def parse_extension(text: str, base=None) -> Extension:
    """``E <path>`` (or inline E), then ``i m k`` and ``pi m k`` dense blocks."""
    text, blocks = _blocks(text)
    E = _inline(blocks, "E") if "E" in blocks else None
    lines = list(_lines(text))
    for n, toks in lines:
        if toks[0] == "E":
            E = _ref_algebra("E", toks, n, base, blocks)
    if E is None:
        raise ParseError("extension needs 'E'")
    mats = {}
    idx = 0
    while idx < len(lines):
        n, toks = lines[idx]
        if toks[0] == "E":
            pass
        elif toks[0] in ("i", "pi"):
            mats[toks[0]], idx = _dense_section(E.field, lines, idx, n, toks, toks[0])
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", n)
        idx += 1
    if set(mats) != {"i", "pi"}:
        raise ParseError("extension needs 'i' and 'pi'")
    i, pi = mats["i"], mats["pi"]
    A = subalgebra(E, i.columns())
    # V's product transported through a section
    F = E.field
    dV = pi.nrows
    ext = Extension(E, i, pi, A, Algebra(F, dV))
    s = default_section(ext)
    sc = s.columns()
    coef = {}
    for a in range(dV):
        for b in range(dV):
            for k, t in enumerate(pi.apply(E.mul(sc[a], sc[b]))):
                if t != 0:
                    coef[(a, b, k)] = t
    V = Algebra(F, dV, coef, status=E.status, verified_mode=E.verified_mode)
    return Extension(E, i, pi, A, V)


def load_extension(path) -> Extension:
    path = Path(path)
    return parse_extension(path.read_text(), base=path.parent)


# -- group actions -----------------------------------------------------------------
def parse_action(text: str, base=None):
    """``A <path>`` (or inline A), then ``gen`` lines each followed by dim A rows."""
    text, blocks = _blocks(text)
    A = _inline(blocks, "A") if "A" in blocks else None
    lines = list(_lines(text))
    for n, toks in lines:
        if toks[0] == "A":
            A = _ref_algebra("A", toks, n, base, blocks)
    if A is None:
        raise ParseError("action needs 'A'")
    gens = []
    idx = 0
    while idx < len(lines):
        n, toks = lines[idx]
        if toks[0] == "A":
            pass
        elif toks[0] == "gen":
            if len(toks) != 1:
                raise ParseError("'gen' takes no arguments", n)
            M, idx = _dense_section(A.field, lines, idx, n, ["gen", str(A.dim), str(A.dim)], "gen")
            gens.append(M)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", n)
        idx += 1
    return A, gens


def load_action(path):
    path = Path(path)
    return parse_action(path.read_text(), base=path.parent)


# -- spin forms --------------------------------------------------------------------
def parse_spin_form(text: str):
    """``field``, ``dimV n`` and sparse ``form i j s`` entries with i <= j."""
    F = dimV = None
    entries = {}
    for n, toks in _lines(text):
        kw = toks[0]
        if kw == "field":
            F = _field(toks, n)
        elif kw == "dimV":
            dimV = _int(toks[1], n, "dimension") if len(toks) == 2 else None
            if dimV is None:
                raise ParseError("malformed 'dimV'", n)
        elif kw == "form":
            if F is None or dimV is None:
                raise ParseError("'form' before 'field' and 'dimV'", n)
            if len(toks) != 4:
                raise ParseError("expected 'form i j s'", n)
            i, j = _int(toks[1], n), _int(toks[2], n)
            if max(i, j) >= dimV:
                raise ParseError("index out of range", n)
            if i > j:
                raise ParseError("'form' entries need i <= j", n)
            entries[(i, j)] = _scalar(F, toks[3], n)
        else:
            raise ParseError(f"unknown directive {kw!r}", n)
    if F is None or dimV is None:
        raise ParseError("missing 'field' or 'dimV'")
    rows = [[F.zero] * dimV for _ in range(dimV)]
    for (i, j), s in entries.items():
        rows[i][j] = rows[j][i] = s
    return F, dimV, rows


def load_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise JordError(f"cannot read {path}: {e.strerror}") from None
