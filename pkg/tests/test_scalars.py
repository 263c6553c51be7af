from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jordext.errors import CharacteristicError
from jordext.scalars import GF, Q, Field, Scalar


def test_char_two_rejected():
    with pytest.raises(CharacteristicError):
        Field.gf(2)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_non_primes_rejected(p):
    with pytest.raises(ValueError):
        Field.gf(p)


def test_names():
    assert Q.name == "Q" and GF(7).name == "GF(7)"
    assert Q.characteristic == 0 and GF(7).characteristic == 7


def test_parse_and_coerce():
    F = GF(5)
    assert F.parse("1/2") == 3
    assert F.elem(Fraction(1, 3)) == 2
    assert F.elem(-1) == 4
    assert Q.parse("-3/6") == Fraction(-1, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)


def test_scalar_field_mismatch():
    with pytest.raises(ValueError):
        GF(3).elem(Scalar(GF(5), 1))


primes = st.sampled_from([3, 5, 7, 11, 101])


@given(primes, st.integers(), st.integers(), st.integers())
def test_gf_field_axioms(p, a, b, c):
    F = GF(p)
    a, b, c = F.elem(a), F.elem(b), F.elem(c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(st.fractions(), st.fractions().filter(lambda x: x != 0))
def test_rational_division(a, b):
    assert Q.mul(Q.div(a, b), b) == a
