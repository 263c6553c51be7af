import random

import pytest
from hypothesis import given, settings, strategies as st

from jordext.algebra import abelian, check_jordan, unit_field
from jordext.crossed import CrossedSystem
from jordext.errors import ParseError
from jordext.io import (load_action, load_algebra, load_crossed, load_datum, parse_algebra,
                        parse_crossed, parse_datum, parse_extension, parse_matrix, parse_rows,
                        parse_spin_form, serialize_algebra, serialize_crossed, serialize_datum,
                        serialize_matrix)
from jordext.scalars import GF, Q
from jordext import zoo


def test_empty_algebra_roundtrips():
    A = parse_algebra("field GF 3\ndim 0\n")
    assert A.dim == 0
    assert parse_algebra(serialize_algebra(A)) == A


def test_spin_factor_file(data):
    A = load_algebra(data / "spinfactor.alg")
    assert A.dim == 2 and check_jordan(A).passed


def test_char_two_rejected():
    with pytest.raises(ParseError) as e:
        parse_algebra("field GF 2\ndim 1\n")
    assert e.value.lineno == 1


@pytest.mark.parametrize("text,line", [
    ("field GF 5\ndim 2\nc 1 0 0 1\n", 3),          # i > j
    ("field GF 5\ndim 2\nbogus 1\n", 3),            # unknown directive
    ("field GF 5\ndim 2\nc 0 0 2 1\n", 3),          # index out of range
    ("field GF 5\ndim 2\nc 0 0 0 1\nc 0 0 0 2\n", 4),  # duplicate
    ("field GF 5\ndim x\n", 2),
    ("field R\n", 1),
])
def test_malformed_lines_report_line_numbers(text, line):
    with pytest.raises(ParseError) as e:
        parse_algebra(text)
    assert e.value.lineno == line
    assert str(e.value).startswith(f"line {line}:")


def test_comments_and_rationals():
    A = parse_algebra("# header\nfield Q\ndim 1\nc 0 0 0 1/2  # half\n")
    assert A.mul(A.e(0), A.e(0)) == (Q.parse("1/2"),)


def test_serialization_is_canonical():
    F = GF(5)
    a = parse_algebra("field GF 5\ndim 2\nc 0 1 1 1\nc 0 0 0 1\n")
    b = parse_algebra("field GF 5\ndim 2\nc 0 0 0 1\nc 0 1 1 1\n")
    assert serialize_algebra(a) == serialize_algebra(b)
    assert a.field == F


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([3, 5, 7]))
def test_algebra_roundtrip(seed, p):
    rng = random.Random(seed)
    dim = rng.randint(0, 4)
    _, A = rng.choice(zoo.standard_algebras(GF(p), dim))
    B, _ = zoo.random_transport(A, rng)
    assert parse_algebra(serialize_algebra(B)) == B


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_datum_roundtrip(seed):
    rng = random.Random(seed)
    A = rng.choice([unit_field(GF(3)), abelian(GF(3), 2)])
    d = zoo.random_datum(A, rng.randint(0, 2), rng)
    assert parse_datum(serialize_datum(d)) == d


def test_crossed_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        cs = zoo.random_crossed(unit_field(GF(5)), abelian(GF(5), 2), rng)
        assert parse_crossed(serialize_crossed(cs)) == cs


def test_datum_file_with_relative_path(data):
    d = load_datum(data / "unified.datum")
    assert d.A.dim == 1 and d.dimV == 1


def test_inline_block_errors_use_file_line_numbers():
    text = "begin A\nfield GF 5\ndim 1\nc 0 0 3 1\nend A\ndimV 1\n"
    with pytest.raises(ParseError) as e:
        parse_datum(text)
    assert e.value.lineno == 4


def test_symmetric_maps_need_i_le_j():
    text = "begin A\nfield GF 5\ndim 1\nend A\ndimV 2\nf 1 0 0 1\n"
    with pytest.raises(ParseError):
        parse_datum(text)


def test_crossed_file(data):
    cs = load_crossed(data / "crossed.sys")
    assert isinstance(cs, CrossedSystem)


def test_extension_file():
    text = ("begin E\nfield GF 3\ndim 2\nc 0 0 0 1\nc 1 1 1 1\nend E\n"
            "i 2 1\n1\n0\npi 1 2\n0 1\n")
    ext = parse_extension(text)
    assert ext.check().passed
    assert ext.V.dim == 1


def test_action_file(data):
    A, gens = load_action(data / "spin.act")
    assert A.dim == 3 and len(gens) == 1


def test_matrix_and_rows():
    F = GF(7)
    M = parse_matrix(F, "1 2\n3 4\n")
    assert parse_matrix(F, serialize_matrix(M)) == M
    with pytest.raises(ParseError):
        parse_rows(F, "1 2\n3\n")


def test_spin_form():
    F, dimV, rows = parse_spin_form("field GF 5\ndimV 2\nform 0 1 2\n")
    assert dimV == 2 and rows[0][1] == rows[1][0] == 2
