import random

import pytest
from hypothesis import given, settings, strategies as st

from jordext.algebra import (Algebra, abelian, check_algebra_morphism, check_commutative,
                             check_jordan, check_jordan_basis, check_polarization_relation,
                             count_subspaces, direct_product, find_ideals, find_isomorphism,
                             from_associative_plus, is_ideal, iter_subspaces, quotient,
                             subalgebra, transport, unit_field)
from jordext.errors import BoundExceeded, ModeError, UnverifiedError
from jordext.identities import Mode
from jordext.scalars import GF, Q
from jordext import zoo


def nonjordan(F):
    # e.x = e, everything else zero
    return Algebra.from_upper(F, 2, {(0, 1, 0): 1})


def test_noncommutative_table_is_caught():
    A = Algebra(GF(5), 2, {(0, 1, 0): 1})
    rep = check_commutative(A)
    assert not rep.passed
    assert not check_jordan(A).passed


def test_witness_algebra_fixture():
    F = GF(5)
    A = nonjordan(F)
    assert check_jordan_basis(A).passed
    rep = check_jordan(A, Mode.exhaustive())
    assert not rep.passed
    assert rep["jordan"].witness == ((1, 1), (0, 1))


def test_formal_check_over_q_finds_failure():
    assert not check_jordan(nonjordan(Q)).passed
    assert check_jordan(unit_field(Q)).passed


def test_sampled_mode_is_seeded():
    A = nonjordan(GF(101))
    r1 = check_jordan(A, Mode.sampled(seed=4))
    r2 = check_jordan(A, Mode.sampled(seed=4))
    assert r1.to_dict() == r2.to_dict()


def test_exhaustive_needs_finite_field_and_bound():
    with pytest.raises(ModeError):
        check_jordan(unit_field(Q), Mode.exhaustive())
    big = abelian(GF(101), 4)
    with pytest.raises(BoundExceeded):
        check_jordan(big, Mode.exhaustive(bound=1000))


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("JORD_BOUND", "10")
    # 3^3 points exceed the bound, so the default falls back to sampling
    rep = check_jordan(abelian(GF(3), 3))
    assert rep.passed and any(m.startswith("sampled") for m in rep.modes)


def test_require_jordan():
    with pytest.raises(UnverifiedError):
        nonjordan(GF(5)).require_jordan()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_corpus_is_jordan_and_polarized(p):
    for name, A in zoo.corpus(GF(p)):
        assert check_jordan(A).passed, name
        assert check_polarization_relation(A).passed, name


def test_polarization_fails_on_witness_algebra():
    assert not check_polarization_relation(nonjordan(GF(5))).passed


def test_associative_plus_is_jordan():
    F = GF(5)
    assert check_jordan(zoo.matrix_plus(F, 2)).passed
    assert check_jordan(zoo.upper_triangular_plus(F, 2)).passed


def test_subalgebra_ideal_quotient():
    F = GF(3)
    A = zoo.truncated_polynomial(F, 3)  # 1, t, t^2
    I = [A.e(1), A.e(2)]
    assert is_ideal(A, I)
    q = quotient(A, I)
    assert q.algebra.dim == 1
    assert check_algebra_morphism(q.pi, A, q.algebra)
    assert subalgebra(A, [A.e(2)]).dim == 1
    dims = sorted(len(b) for b in find_ideals(A))
    assert dims == [0, 1, 2]  # proper ideals only


def test_subspace_counts():
    assert count_subspaces(3, 3, 1) == 13
    assert sum(1 for _ in iter_subspaces(GF(3), 3, 1)) == 13


def test_find_isomorphism():
    F = GF(3)
    A = direct_product(unit_field(F), abelian(F, 1))
    B, psi = zoo.random_transport(A, random.Random(0))
    iso = find_isomorphism(A, B)
    assert iso is not None and check_algebra_morphism(iso, A, B)
    assert find_isomorphism(A, abelian(F, 2)) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([3, 5]))
def test_transport_preserves_jordan(seed, p):
    rng = random.Random(seed)
    F = GF(p)
    dim = rng.randint(1, 3)
    _, A = rng.choice(zoo.standard_algebras(F, dim))
    B, psi = zoo.random_transport(A, rng)
    assert check_algebra_morphism(psi, A, B)
    assert check_jordan(B).passed
