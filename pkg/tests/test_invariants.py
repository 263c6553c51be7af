import random

import pytest

from jordext.algebra import abelian, check_algebra_morphism, is_subalgebra
from jordext.errors import BoundExceeded, CharacteristicError
from jordext.invariants import (artin_decomposition, cyclic_kernel_check, generate_group,
                                invariant_subalgebra, is_invariant_subalgebra, trace_map)
from jordext.linalg import Matrix
from jordext.scalars import GF
from jordext.unified import build_unified
from jordext import zoo

F5 = GF(5)


@pytest.mark.parametrize("dV", [1, 2, 3])
def test_sign_flip_on_spin_factor(dV):
    A = zoo.spin(F5, zoo.form_from_diagonal(F5, [1] * dV))
    G = generate_group(A, [zoo.sign_flip(F5, dV)])
    assert G.order == 2
    assert invariant_subalgebra(G) == [A.e(0)]
    dec = artin_decomposition(G)
    assert dec.datum.actl.is_zero()
    assert check_algebra_morphism(dec.theta, build_unified(dec.datum).product, A)
    assert cyclic_kernel_check(G)


def test_trace_is_retraction_onto_invariants():
    rng = random.Random(2)
    for _ in range(20):
        A, g = zoo.random_c2_action(F5, rng)
        G = generate_group(A, [g])
        t = trace_map(G)
        assert t @ t == t
        inv = invariant_subalgebra(G)
        assert all(t.apply(v) == v for v in inv)
        assert is_invariant_subalgebra(G)
        assert cyclic_kernel_check(G)


def test_non_automorphism_rejected():
    A = zoo.truncated_polynomial(F5, 2)
    with pytest.raises(ValueError):
        generate_group(A, [Matrix(F5, [[2, 0], [0, 1]], 2)])


def test_order_divisible_by_characteristic():
    A = abelian(GF(3), 2)
    shear = Matrix(GF(3), [[1, 1], [0, 1]], 2)  # order 3
    with pytest.raises(CharacteristicError):
        generate_group(A, [shear])


def test_order_bound():
    A = abelian(GF(7), 1)
    with pytest.raises(BoundExceeded):
        generate_group(A, [Matrix(GF(7), [[3]], 1)], order_bound=3)


def test_invariants_form_a_subalgebra_for_swap():
    A, g = zoo._graded_examples(F5)[-2]
    G = generate_group(A, [g])
    assert is_subalgebra(A, invariant_subalgebra(G))
