from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rbsystems.algebra import (
    Algebra,
    AlgebraMorphism,
    annihilators,
    builtin_algebra,
    check_associative,
    check_morphism,
    counital_example,
    crossed_lines,
    direct_sum,
    is_nondegenerate,
    matrix_algebra,
    truncated_poly,
    unital_extension,
)
from rbsystems.fields import GF, QQ
from rbsystems.ybpair import block_projection

from helpers import elements, matrix_of

BUILTINS = [
    "matrix_algebra(1)", "matrix_algebra(2)", "matrix_algebra(3)", "truncated_poly(1)", "truncated_poly(4)",
    "dual_numbers", "crossed_lines(3)", "counital_example(3)", "nilpotent_example",
    "direct_sum(matrix_algebra(2),matrix_algebra(2))", "direct_sum(matrix_algebra(1),matrix_algebra(3))",
    "polynomial_model(4)",
]


@pytest.mark.parametrize("spec", BUILTINS)
def test_builtins_associative_with_unit(spec):
    A = builtin_algebra(spec)
    assert check_associative(A).passed
    assert A.is_unital
    one = A.one
    assert all(one * b == b and b * one == b for b in A.basis)


def test_associativity_failure_location():
    A = Algebra(QQ, 2, {(0, 0): [(1, 1)], (1, 0): [(0, 1)]})
    rep = check_associative(A)
    assert not rep.passed
    assert rep.counterexample["indices"] == [1, 1, 1]
    assert rep.counterexample["lhs"] == "e1" and rep.counterexample["rhs"] == "0"


def test_matrix_algebra_units():
    A = matrix_algebra(2)
    assert A.dim == 4 and A.basis_names == ("e11", "e12", "e21", "e22")
    e11, e12, e21, e22 = A.basis
    assert e12 * e21 == e11 and e21 * e12 == e22 and e12 * e12 == A.zero


@given(data=st.data())
def test_matrix_product_matches_dense_oracle(data):
    A = matrix_algebra(3)
    x, y = data.draw(elements(A)), data.draw(elements(A))
    X, Y = matrix_of(A, x), matrix_of(A, y)
    Z = [[sum(X[i][k] * Y[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert matrix_of(A, x * y) == Z


def test_direct_sum_blocks():
    A = direct_sum(matrix_algebra(2), matrix_algebra(2))
    assert A.dim == 8 and A.blocks == (2, 2)
    first, second = A.basis[:4], A.basis[4:]
    assert all(a * b == A.zero and b * a == A.zero for a in first for b in second)


def test_counital_example_relations():
    A = counital_example(3)
    assert A.dim == 5 and A.basis_names == ("1", "e", "a", "a^2", "a^3")
    one, e, a, a2, a3 = A.basis
    assert a * e == A.zero and e * e == e and a * a == a2 and a * a3 == A.zero


def test_crossed_lines_relations():
    A = crossed_lines(2)
    one, x, x2, y, y2 = A.basis
    assert x * y == A.zero and x * x == x2 and y * y2 == A.zero


@pytest.mark.parametrize("bad", [lambda: matrix_algebra(0), lambda: truncated_poly(0), lambda: builtin_algebra("nope(2)")])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        bad()


def test_annihilators():
    assert annihilators(matrix_algebra(2)) == ([], [])
    assert annihilators(truncated_poly(4)) == ([], [])
    A = Algebra(QQ, 1, {})
    left, right = annihilators(A)
    assert [v.coeffs for v in left] == [(1,)] and [v.coeffs for v in right] == [(1,)]


def test_annihilators_of_one_sided_algebra():
    # e1 e1 = e1, e1 e2 = e2: e2 kills from the left only
    A = Algebra(QQ, 2, {(0, 0): [(0, 1)], (0, 1): [(1, 1)]})
    assert check_associative(A).passed
    left, right = annihilators(A)
    assert [v.coeffs for v in left] == [(0, 1)] and right == []


@given(data=st.data())
def test_annihilators_are_subspaces(data):
    A = Algebra(QQ, 3, {(0, 0): [(0, 1)], (0, 1): [(1, 1)]})
    left, right = annihilators(A)
    for basis in (left, right):
        coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=len(basis), max_size=len(basis)))
        v = sum((b.scale(Fraction(c)) for b, c in zip(basis, coeffs)), A.zero)
        side = [v * a for a in A.basis] if basis is left else [a * v for a in A.basis]
        assert all(w == A.zero for w in side)


def test_unital_extension():
    A = Algebra(QQ, 1, {})
    E = unital_extension(A)
    assert E.dim == 2 and E.is_unital and check_associative(E).passed and is_nondegenerate(E)
    one, a = E.basis
    assert one * a == a


def test_extension_of_unital_algebra_has_two_idempotents():
    E = unital_extension(matrix_algebra(2))
    new_one = E.one
    old_one = E.element([0, 1, 0, 0, 1])
    assert new_one * new_one == new_one and old_one * old_one == old_one and new_one != old_one


@pytest.mark.parametrize("spec", BUILTINS[:6])
def test_extension_associative_nondegenerate(spec):
    E = unital_extension(builtin_algebra(spec))
    assert check_associative(E).passed and is_nondegenerate(E)


def test_morphism_examples():
    M = matrix_algebra(2)
    assert check_morphism(AlgebraMorphism.identity(M)).passed
    S = direct_sum(matrix_algebra(2), matrix_algebra(2))
    assert check_morphism(block_projection(S, 0)).passed
    assert check_morphism(block_projection(S, 1)).passed
    transpose = AlgebraMorphism.from_function(M, M, lambda a: M.element([a.coeffs[0], a.coeffs[2], a.coeffs[1], a.coeffs[3]]))
    rep = check_morphism(transpose)
    assert not rep.passed


def test_prime_field_algebra():
    A = matrix_algebra(2, GF(3))
    e11, e12, e21, e22 = A.basis
    assert (e11 + e22) * (e11 + e22) == e11 + e22
    assert check_associative(A).passed
