import random

import pytest
from hypothesis import given, settings, strategies as st

from jordext.algebra import (abelian, check_algebra_morphism, check_jordan, direct_product,
                             find_isomorphism, is_ideal, unit_field)
from jordext.classify import crossed_cohomologous, search_cohomology_witness
from jordext.crossed import (CrossedSystem, build_crossed, canonical_extension, decompose_iterated,
                             default_section, extension_to_crossed, rebuild, section_isomorphism,
                             to_datum, validate_crossed_system)
from jordext.errors import DimensionError, UnverifiedError
from jordext.identities import Mode
from jordext.scalars import GF
from jordext.unified import validate_extending_structure
from jordext import zoo


def test_cp_matches_e_axioms_with_zero_right_action():
    rng = random.Random(0)
    F = GF(3)
    for _ in range(60):
        cs = zoo.random_crossed(rng.choice([unit_field(F), abelian(F, 1)]),
                                rng.choice([unit_field(F), abelian(F, 1), abelian(F, 2)]), rng)
        assert validate_crossed_system(cs).passed == validate_extending_structure(to_datum(cs)).passed


def test_cp1_asymmetric_f():
    F = GF(3)
    cs = CrossedSystem(unit_field(F), abelian(F, 2), {}, {(0, 1, 0): 1})
    rep = validate_crossed_system(cs)
    assert not rep["CP1"].passed


def test_v_must_be_jordan():
    F = GF(5)
    from jordext.algebra import Algebra
    bad = Algebra.from_upper(F, 2, {(0, 1, 0): 1})
    with pytest.raises(UnverifiedError):
        validate_crossed_system(CrossedSystem(unit_field(F), bad, {}, {}))


def test_build_unchecked_guard():
    F = GF(3)
    cs = CrossedSystem(unit_field(F), unit_field(F), {(0, 0, 0): 1}, {})
    with pytest.raises(UnverifiedError):
        build_crossed(cs)


def test_section_must_split_pi():
    F = GF(3)
    cs = CrossedSystem(unit_field(F), unit_field(F), {}, {})
    assert validate_crossed_system(cs).passed
    ext = canonical_extension(cs)
    with pytest.raises(ValueError):
        extension_to_crossed(ext, ext.i)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_extension_roundtrip_and_section_change(seed):
    rng = random.Random(seed)
    F = GF(3)
    cs = zoo.random_valid_crossed(F, rng.randint(1, 2), rng.randint(1, 2), rng)
    if cs is None:
        return
    E = build_crossed(cs)
    assert is_ideal(E, [E.e(i) for i in range(cs.A.dim)])
    ext = canonical_extension(cs)
    assert ext.check().passed
    s = default_section(ext)
    assert extension_to_crossed(ext, s) == cs
    r = zoo.random_matrix(F, cs.A.dim, cs.V.dim, rng)
    cs2 = extension_to_crossed(ext, s + ext.i @ r)
    w = search_cohomology_witness(cs, cs2)
    assert w is not None and crossed_cohomologous(cs, cs2, w)
    # the section isomorphism identifies the two crossed products
    iso = section_isomorphism(ext, s + ext.i @ r)
    assert check_algebra_morphism(iso, build_crossed(cs2), E)


def test_decompose_chain():
    F = GF(3)
    A = zoo.truncated_polynomial(F, 3)
    tree = decompose_iterated(A)
    assert [leaf.algebra.dim for leaf in tree.leaves()] == [1, 1, 1]
    R, iso = rebuild(tree)
    assert iso.is_invertible() and check_algebra_morphism(iso, R, A)


def test_decompose_bad_first_ideal():
    F = GF(3)
    A = direct_product(unit_field(F), unit_field(F))
    with pytest.raises(DimensionError):
        decompose_iterated(A, first_ideal=[(1, 1)])


def test_decompose_simple_leaf():
    F = GF(3)
    A = zoo.matrix_plus(F, 2)
    assert decompose_iterated(A).kind == "simple"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_rebuild_isomorphic(seed):
    rng = random.Random(seed)
    F = GF(3)
    dA = rng.randint(1, 2)
    cs = zoo.random_valid_crossed(F, dA, rng.randint(1, 3 - dA), rng)
    if cs is None:
        return
    E = build_crossed(cs)
    R, _ = rebuild(decompose_iterated(E, first_ideal=[E.e(i) for i in range(dA)]))
    assert find_isomorphism(R, E) is not None
