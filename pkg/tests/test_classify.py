"""Frozen counts come from the independent brute-force engines (derived values)."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from jordext.algebra import (abelian, check_algebra_morphism, direct_product, unit_field)
from jordext.classify import (DisjointSet, FlagDatum, check_morphism_pair, check_onedim_pair,
                              classify_extending_structures, classify_flag, compose, flag_act,
                              flag_equivalent, flag_to_datum, h2_nab, h2_onedim, k_eps,
                              onedim_valid_pairs, psi_matrix, solve_matrix_cubic,
                              stabilizing_classes, transform_extending_structure,
                              validate_flag_datum, verify_jext)
from jordext.errors import BoundExceeded
from jordext.linalg import Matrix
from jordext.scalars import GF, Q
from jordext.unified import build_unified, validate_extending_structure
from jordext import zoo

F3, F5 = GF(3), GF(5)


def test_disjoint_set_root_is_least():
    ds = DisjointSet()
    for x in (1, 2, 3):
        ds.add(x)
    ds.union(3, 1)
    ds.union(1, 2)
    assert ds.find(3) == ds.find(2) == 1
    assert ds.blocks() == {1: [1, 2, 3]}


def test_extending_structures_over_zero_algebra():
    cl = classify_extending_structures(abelian(F3, 0), 1)
    assert len(cl) == 2
    assert sorted(c.orbit_size for c in cl) == [1, 2]
    assert verify_jext(cl)


@pytest.mark.parametrize("A", [abelian(F3, 1), unit_field(F3)], ids=["k0", "k"])
def test_three_engines_agree_in_dim_one(A):
    assert len(classify_extending_structures(A, 1)) == 6
    assert len(classify_flag(A)) == 6
    assert stabilizing_classes(A)[0] == 6


def test_flag_count_abelian_plane():
    A = abelian(F3, 2)
    assert len(classify_flag(A)) == 60


def test_flag_enumeration_bound():
    with pytest.raises(BoundExceeded):
        classify_flag(abelian(F5, 2), bound=100)


def _random_flag(A, rng):
    F, n = A.field, A.dim
    el = lambda: rng.randrange(F.p)
    return FlagDatum.make(F, [[el() for _ in range(n)] for _ in range(n)],
                          [el() if rng.random() < 0.3 else 0 for _ in range(n)],
                          [el() for _ in range(n)], el())


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_flag_validation_matches_e_axioms(seed):
    rng = random.Random(seed)
    A = rng.choice([abelian(F3, 2), direct_product(unit_field(F3), abelian(F3, 1)),
                    unit_field(F3), abelian(F3, 1)])
    fd = _random_flag(A, rng)
    assert validate_flag_datum(A, fd).passed == \
        validate_extending_structure(flag_to_datum(A, fd)).passed


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_flag_action_is_the_transform(seed):
    rng = random.Random(seed)
    A = rng.choice([abelian(F3, 2), unit_field(F3), abelian(F3, 1)])
    n = A.dim
    fd = _random_flag(A, rng)
    r = [rng.randrange(3) for _ in range(n)]
    u = rng.choice([1, 2])
    fd2 = flag_act(A, fd, r, u)
    rm = Matrix(F3, [[x] for x in r], 1)
    assert flag_to_datum(A, fd2) == transform_extending_structure(flag_to_datum(A, fd), rm, [[u]])
    assert flag_equivalent(A, fd, fd2, r, u)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_morphism_pair_conditions(seed):
    rng = random.Random(seed)
    F = rng.choice([F3, F5])
    dA, dV = rng.randint(1, 2), rng.randint(1, 2)
    A = rng.choice([a for _, a in zoo.standard_algebras(F, dA)])
    d1 = zoo.random_datum(A, dV, rng)
    r, v = zoo.random_matrix(F, dA, dV, rng), zoo.random_matrix(F, dV, dV, rng)
    d2 = transform_extending_structure(d1, r, v) if v.is_invertible() and rng.random() < 0.5 \
        else zoo.random_datum(A, dV, rng)
    E1 = build_unified(d1, unchecked=True).product
    E2 = build_unified(d2, unchecked=True).product
    psi = psi_matrix(d1, r, v)
    assert check_morphism_pair(d1, d2, r, v) == check_algebra_morphism(psi, E1, E2)
    assert psi.is_invertible() == v.is_invertible()


def test_transform_composition():
    rng = random.Random(3)
    A = abelian(F3, 2)
    for _ in range(20):
        d = zoo.random_datum(A, 2, rng)
        r1, r2 = zoo.random_matrix(F3, 2, 2, rng), zoo.random_matrix(F3, 2, 2, rng)
        v1, v2 = zoo.random_invertible(F3, 2, rng), zoo.random_invertible(F3, 2, rng)
        lhs = transform_extending_structure(transform_extending_structure(d, r1, v1), r2, v2)
        assert lhs == transform_extending_structure(d, *compose((r1, v1), (r2, v2)))


def test_matrix_cubic_solutions():
    sols = solve_matrix_cubic(1, F5)
    assert {D.rows[0][0] for D in sols} == {0, 1, 3}
    assert len(solve_matrix_cubic(2, F5)) == 93


def test_matrix_cubic_over_q_needs_candidates():
    cands = [Matrix(Q, [[x]], 1) for x in (0, 1, 2, -1)]
    assert len(solve_matrix_cubic(1, Q, candidates=cands)) >= 1


def test_h2_onedim_counts():
    cl1 = h2_onedim(abelian(F5, 1), 0)
    assert len(cl1) == 7
    assert {c.representative[0].rows[0][0] for c in cl1} == {0, 1, 3}
    assert sum(bool(c.crossed_valid) for c in cl1) == 5
    assert any(c.note for c in cl1)
    cl2 = h2_onedim(abelian(F5, 2), 0)
    assert len(cl2) == 357
    assert {c.representative[0] for c in cl2} == set(solve_matrix_cubic(2, F5))


def test_onedim_pairs_match_generic_identities():
    rng = random.Random(0)
    for A in (abelian(F5, 2), direct_product(unit_field(F5), abelian(F5, 1)), unit_field(F5)):
        for eps in (0, 1):
            pairs = {(D.flat(), a) for D, a in onedim_valid_pairs(A, eps)}
            n = A.dim
            for _ in range(60):
                D = Matrix(F5, [[rng.randrange(5) for _ in range(n)] for _ in range(n)], n)
                a0 = tuple(rng.randrange(5) for _ in range(n))
                assert check_onedim_pair(A, eps, D, a0).passed == ((D.flat(), a0) in pairs)


def test_h2_nab_small():
    assert len(h2_nab(k_eps(F3, 0), abelian(F3, 1))) == 3
    assert len(h2_nab(k_eps(F5, 0), abelian(F5, 1))) == 5
