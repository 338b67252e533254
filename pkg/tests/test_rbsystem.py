import pytest

from rbsystems.algebra import Algebra, AlgebraMorphism, Operator, matrix_algebra, polynomial_model, truncated_poly
from rbsystems.fields import QQ
from rbsystems.qcalc import degree_guard
from rbsystems.rbsystem import (
    Bilinear,
    Dendriform,
    RBSystem,
    bullet_operation,
    bullet_product,
    check_dendriform,
    check_differential_rb,
    check_orthogonality_criterion,
    check_pre_lie,
    check_rb_morphism,
    check_rb_operator,
    check_rb_system,
    check_twisted_differential_rb,
    check_twisted_rb,
    check_weak_pseudotwistor,
    companion_map,
    dendriform_from_system,
    pseudotwistor_from_system,
    star_product,
    system_suite,
    systems_from_weighted,
)
from rbsystems.report import PreconditionError
from rbsystems.tensor import operator_to_tensor_maps

M2 = matrix_algebra(2)


def power(A, k):
    z = A.e(1)
    zk = A.one
    for _ in range(k):
        zk = zk * z
    return Operator.right_mult(zk)


def tp_system(n=4, p=1, q=3):
    A = truncated_poly(n)
    return RBSystem(A, power(A, p), power(A, q))


@pytest.mark.parametrize("lam", [0, 1, 2, -3])
def test_rb_operator_trivial_cases(lam):
    I = Operator.identity(M2)
    assert check_rb_operator(M2, Operator.zero(M2), lam).passed
    assert check_rb_operator(M2, I.scale(-lam), lam).passed


def test_identity_is_not_weight_zero():
    rep = check_rb_operator(M2, Operator.identity(M2), 0)
    assert not rep.passed
    cx = rep.counterexample
    assert cx["indices"] == [1, 1] and cx["lhs"] == "e11" and cx["rhs"] == "2*e11"


def test_rb_system_examples():
    sys = tp_system()
    assert sys.check().passed and sys.verified
    Z = Operator.zero(M2)
    assert check_rb_system(M2, Z, Z).passed
    I = Operator.identity(M2)
    rep = check_rb_system(M2, I, I)
    assert not rep.passed
    assert rep.first_failure().counterexample["basis"] == ["e11", "e11"]


def test_systems_from_weighted():
    I = Operator.identity(M2)
    a, b = systems_from_weighted(M2, Operator.zero(M2), 1)
    assert a.S == I and b.R == I and a.verified and b.verified
    a, b = systems_from_weighted(M2, I.scale(-2), 2)
    assert a.S == Operator.zero(M2) and b.R == Operator.zero(M2) and a.verified and b.verified
    with pytest.raises(PreconditionError):
        systems_from_weighted(M2, I, 0)


def test_orthogonality_criterion_examples():
    sys = tp_system()
    A = sys.algebra
    rep = check_orthogonality_criterion(A, sys.R, sys.S)
    assert rep.passed and rep.details["form"] == "nondegenerate"
    Z = Operator.zero(A)
    assert check_orthogonality_criterion(A, Z, Z).passed
    bad = check_orthogonality_criterion(A, power(A, 1), power(A, 2))
    assert not bad.passed and not check_rb_system(A, power(A, 1), power(A, 2)).passed
    assert bad.sub("agrees with rb_system").passed


def test_orthogonality_on_degenerate_algebra():
    A = Algebra(QQ, 2, {})
    I = Operator.identity(A)
    rep = check_orthogonality_criterion(A, I, I)
    assert rep.passed and rep.details["form"] == "degenerate"


def test_dendriform_from_truncated_system():
    sys = tp_system()
    D = dendriform_from_system(sys)
    assert check_dendriform(D).passed
    for i in range(4):
        for j in range(4):
            succ = D.succ(D.prec.basis(i), D.prec.basis(j))
            prec = D.prec(D.prec.basis(i), D.prec.basis(j))
            want_succ = [int(k == i + j + 1) for k in range(4)]
            want_prec = [int(k == i + j + 3) for k in range(4)]
            assert list(succ) == want_succ and list(prec) == want_prec


def test_dendriform_rejects_doubled_product():
    mul = Bilinear.from_function(M2, lambda x, y: x * y)
    rep = check_dendriform(Dendriform(mul, mul))
    assert not rep.passed and not rep.sub("axiom 1").passed


def test_zero_system_structures():
    Z = Operator.zero(M2)
    sys = RBSystem(M2, Z, Z)
    assert check_dendriform(dendriform_from_system(sys)).passed
    star = star_product(sys)
    assert all(star.e(i) * star.e(j) == star.zero for i in range(4) for j in range(4))
    op, rep = bullet_product(sys)
    assert rep.passed
    assert system_suite(sys).passed


def test_non_system_is_rejected_by_derivations():
    I = Operator.identity(M2)
    sys = RBSystem(M2, I, I)
    for derive in (dendriform_from_system, star_product, bullet_product, pseudotwistor_from_system):
        with pytest.raises(PreconditionError):
            derive(sys)


def test_pseudotwistor_pentagons():
    sys = tp_system()
    tw = pseudotwistor_from_system(sys)
    rep = check_weak_pseudotwistor(sys.algebra, tw.T, tw.companion)
    assert rep.passed and rep.checked == 2 * 4 ** 3


def test_pseudotwistor_of_non_system_fails():
    I = Operator.identity(M2)
    rep = check_weak_pseudotwistor(M2, operator_to_tensor_maps(I, I), companion_map(M2, I, I))
    assert not rep.passed


def test_identity_pseudotwistor():
    from rbsystems.rbsystem import Tensor3Map

    Z = Operator.zero(M2)
    I = Operator.identity(M2)
    T = operator_to_tensor_maps(I, Z)
    assert check_weak_pseudotwistor(M2, T, Tensor3Map.identity(M2)).passed


def test_pre_lie_of_system():
    sys = tp_system(5, 2, 3)
    assert check_pre_lie(bullet_operation(sys.algebra, sys.R, sys.S)).passed


def test_twisted_rb_examples():
    I = Operator.identity(M2)
    rep = check_twisted_rb(M2, I, I)
    assert not rep.passed
    with pytest.raises(PreconditionError):
        check_twisted_rb(M2, I.scale(2), I)


def _calculus(N):
    A = polynomial_model(N, QQ)
    F = A.field
    R = Operator.from_function(A, lambda a: A.element([F.zero] + [a.coeffs[d] / (d + 1) for d in range(N)]))
    D = Operator.from_function(A, lambda a: A.element([a.coeffs[d + 1] * (d + 1) for d in range(N)] + [F.zero]))
    return A, R, D


def test_differential_rb_classical_calculus():
    A, R, D = _calculus(8)
    assert check_differential_rb(A, R, D, 0, guard=degree_guard(8)).passed


def test_differential_rb_needs_inverse():
    A, R, _ = _calculus(4)
    rep = check_differential_rb(A, R, Operator.zero(A), 0, guard=degree_guard(4))
    assert not rep.passed and not rep.sub("partial o R = id").passed


@pytest.mark.parametrize("lam", [1, -1, 2, 3, -2])
def test_differential_rb_scalar_case(lam):
    # the weighted Leibniz rule reduces to lam^3 = lam
    I = Operator.identity(M2)
    rep = check_differential_rb(M2, I.scale(-QQ.one / lam), I.scale(-lam), lam)
    assert rep.sub("partial o R = id").passed
    assert rep.passed == (lam ** 3 == lam)


def test_twisted_differential_requires_inverse():
    A, R, _ = _calculus(4)
    I = Operator.identity(A)
    rep = check_twisted_differential_rb(A, I, Operator.zero(A), R, guard=degree_guard(4))
    assert not rep.passed


def test_rb_morphism_examples():
    sys = tp_system()
    A = sys.algebra
    assert check_rb_morphism(AlgebraMorphism.identity(A), sys, sys).passed
    Z0 = Algebra(QQ, 0, {})
    zero_sys = RBSystem(Z0, Operator.zero(Z0), Operator.zero(Z0))
    f = AlgebraMorphism.from_function(A, Z0, lambda a: Z0.zero)
    assert check_rb_morphism(f, sys, zero_sys).passed


def test_rb_morphism_detects_mismatch():
    sys = tp_system()
    A = sys.algebra
    other = RBSystem(A, power(A, 2), power(A, 2))
    assert not check_rb_morphism(AlgebraMorphism.identity(A), sys, other).passed
