import itertools

import pytest
from hypothesis import given, strategies as st

from rbsystems.algebra import Operator, dual_numbers, matrix_algebra, truncated_poly
from rbsystems.tensor import (
    Tensor2,
    Tensor3,
    TensorMap,
    apply_to_leg,
    bimodule_act,
    leg_embed,
    multiply,
    multiply_legs,
    operator_to_tensor_maps,
    sandwich,
    tensor,
    tensor3_mul,
)

from helpers import elements, tensors2, tensors3

M2 = matrix_algebra(2)


def _unit_matrix(n, i, j):
    return [[int(r == i and c == j) for c in range(n)] for r in range(n)]


def _kron(X, Y):
    return [[X[a][b] * Y[c][d] for b in range(len(X)) for d in range(len(Y))] for a in range(len(X)) for c in range(len(Y))]


def _matmul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


def _dense(t):
    """Kronecker oracle: a tensor over M_n becomes one n^r x n^r matrix."""
    A = t.algebra
    n = 2
    size = n ** t.rank
    out = [[0] * size for _ in range(size)]
    for key, c in t.coeffs.items():
        K = [[1]]
        for idx in key:
            K = _kron(K, _unit_matrix(n, *A.matrix_units[idx]))
        for a in range(size):
            for b in range(size):
                out[a][b] += c * K[a][b]
    return out


@given(x=tensors3(M2), y=tensors3(M2))
def test_tensor3_mul_matches_kronecker(x, y):
    assert _dense(tensor3_mul(x, y)) == _matmul(_dense(x), _dense(y))


@given(x=tensors2(M2), y=tensors2(M2))
def test_tensor2_mul_matches_kronecker(x, y):
    assert _dense(x * y) == _matmul(_dense(x), _dense(y))


def test_leg_embed_examples():
    A = truncated_poly(3)
    one, z, z2 = A.basis
    t = Tensor2.pure(z, z2)
    assert leg_embed(t, "13") == Tensor3.pure(z, one, z2)
    assert leg_embed(t, "12") == Tensor3.pure(z, z2, one)
    assert leg_embed(t, "23") == Tensor3.pure(one, z, z2)
    for p in ("12", "13", "23"):
        assert leg_embed(Tensor2.zero(A), p) == Tensor3.zero(A)
    with pytest.raises(ValueError):
        leg_embed(t, "21")


def test_leg_embed_lifts_nonunital():
    from rbsystems.algebra import Algebra
    from rbsystems.fields import QQ

    A = Algebra(QQ, 1, {})
    t = Tensor2.pure(A.e(0), A.e(0))
    t13 = leg_embed(t, "13")
    E = t13.algebra
    assert E is A.extension and t13.lifted
    assert t13 == Tensor3.pure(E.e(1), E.one, E.e(1))


def test_leg_product_example():
    e11, e12, e21, e22 = M2.basis
    one = M2.one
    x = Tensor3.pure(e11, one, e11)
    y = Tensor3.pure(e11, e12, one)
    assert tensor3_mul(x, y) == Tensor3.pure(e11, e12, e11)
    assert tensor3_mul(x, Tensor3.zero(M2)) == Tensor3.zero(M2)


def test_r13_r12_by_hand():
    e11, e12, e21, e22 = M2.basis
    r = Tensor2.pure(e11, e11) + Tensor2.pure(e21, e12)
    one = M2.one
    r12 = [(e11, e11, one), (e21, e12, one)]
    r13 = [(e11, one, e11), (e21, one, e12)]
    expected = Tensor3.zero(M2)
    for (a, b, c), (x, y, z) in itertools.product(r13, r12):
        expected = expected + Tensor3.pure(a * x, b * y, c * z)
    got = leg_embed(r, "13") * leg_embed(r, "12")
    assert got == expected
    assert got == Tensor3.pure(e11, e11, e11) + Tensor3.pure(e21, e11, e12)


def test_bimodule_act_examples():
    e11, e12, e21, e22 = M2.basis
    assert bimodule_act(e11, Tensor2.pure(e12, e21), e11) == Tensor2.pure(e12, e21)
    assert bimodule_act(e11, Tensor2.zero(M2), e22) == Tensor2.zero(M2)
    A = truncated_poly(3)
    one, z, z2 = A.basis
    assert bimodule_act(z, Tensor2.pure(one, z), z) == Tensor2.pure(z, z2)


@given(data=st.data())
def test_bimodule_act_is_outer(data):
    a, b = data.draw(elements(M2)), data.draw(elements(M2))
    x, y = data.draw(elements(M2)), data.draw(elements(M2))
    assert bimodule_act(a, tensor(x, y), b) == tensor(a * x, y * b)


@given(a=elements(M2))
def test_sandwich_examples(a):
    e11, e12, e21, e22 = M2.basis
    t = Tensor2.pure(e11, e11) + Tensor2.pure(e21, e12)
    assert sandwich(t, a) == (e11 + e22).scale(a.coeffs[0])
    assert sandwich(Tensor2.zero(M2), a) == M2.zero
    assert sandwich(Tensor2.pure(M2.one, M2.one), a) == a


def test_apply_to_leg_examples():
    A = dual_numbers()
    one, z = A.basis
    Delta = TensorMap(A, [Tensor2.pure(one, z), Tensor2.pure(z, z)])
    assert apply_to_leg(Delta, Tensor2.pure(z, z), 2) == Tensor3.pure(z, z, z)
    assert apply_to_leg(TensorMap.zero(A), Tensor2.pure(z, z), 1) == Tensor3.zero(A)
    with pytest.raises(ValueError):
        apply_to_leg(Delta, Tensor2.pure(z, z), 3)


@given(a=elements(M2), b=elements(M2))
def test_operator_to_tensor_maps(a, b):
    I, Z = Operator.identity(M2), Operator.zero(M2)
    t = tensor(a, b)
    assert operator_to_tensor_maps(Z, Z)(t) == Tensor2.zero(M2)
    assert operator_to_tensor_maps(I, Z)(t) == t
    assert operator_to_tensor_maps(I, I)(t) == t.scale(2)


def test_operator_to_tensor_maps_over_jackson_model():
    from rbsystems import qcalc

    A, J, sigma, _ = qcalc.finite_model(3)
    T = operator_to_tensor_maps(J, sigma @ J)
    x = A.basis
    # T(1 x 1) = J(1) x 1 + 1 x sigma J(1) = x (x) 1 + q (1 (x) x)
    assert T(Tensor2.pure(x[0], x[0])) == Tensor2.pure(x[1], x[0]) + Tensor2.pure(x[0], x[1]).scale(qcalc.Q)
    assert len(T.matrix()) == 16


@given(t=tensors3(M2))
def test_multiply_legs_associative(t):
    assert multiply(multiply_legs(t, 1, 2)) == multiply(multiply_legs(t, 2, 3))


def test_bad_indices_rejected():
    with pytest.raises(ValueError):
        Tensor2.from_terms(M2, [(0, 4, 1)])
    with pytest.raises(ValueError):
        tensor(M2.one)


@given(x=tensors2(M2), y=tensors2(M2), z=tensors2(M2))
def test_tensor2_ring_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == Tensor2.zero(M2)
