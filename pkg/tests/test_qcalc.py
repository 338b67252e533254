from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rbsystems.fields import QQ_q, parse_scalar
from rbsystems.qcalc import (
    J,
    PARTIAL,
    Q,
    SIGMA,
    QPoly,
    apply,
    check_jackson_products,
    check_partial_inverse,
    check_sigma_derivation,
    check_star_associative,
    finite_model,
    jackson_products,
    q_integer,
    sigma_operator,
    verify_jackson_twisted_rb,
    x,
)

ONE = QQ_q.one


def evaluate(c, value):
    """Evaluate a rational function of q at a rational point."""
    num = sum(Fraction(int(a.p), int(a.q)) * value ** k for k, a in enumerate(c.numer.coeffs()))
    den = sum(Fraction(int(a.p), int(a.q)) * value ** k for k, a in enumerate(c.denom.coeffs()))
    return num / den


def numeric_qint(n, value):
    return sum(value ** k for k in range(n))


def test_q_integers():
    assert q_integer(0) == QQ_q.zero
    assert q_integer(1) == ONE
    assert q_integer(3) == parse_scalar("1+q+q^2", QQ_q)
    for n in range(1, 8):
        assert q_integer(n) == (ONE - Q ** n) / (ONE - Q)


def test_apply_examples():
    assert apply(J, x(2)) == QPoly.monomial(3, ONE / parse_scalar("1+q+q^2", QQ_q))
    assert apply(SIGMA, x(0)) == x(0)
    for n in range(21):
        assert apply(PARTIAL, apply(J, x(n))) == x(n)


def test_verify_small_bounds():
    rep = verify_jackson_twisted_rb(0)
    assert rep.passed and rep.sub("twisted identity").checked == 1
    assert J(x(0)) * J(x(0)) == x(2)


def test_perturbed_sigma_fails_first_pair():
    rep = verify_jackson_twisted_rb(3, sigma_operator(lambda n: Q ** (n + 1)))
    assert not rep.passed
    assert rep.first_failure().counterexample["indices"] == [1, 1]


def test_full_bound():
    rep = verify_jackson_twisted_rb(20)
    assert rep.passed and rep.sub("twisted identity").checked == 441


def test_products_at_one_and_zero():
    star, bullet = jackson_products(1, 1)
    assert star == QPoly.monomial(3, q_integer(4) / q_integer(2) ** 2)
    assert bullet == QPoly.monomial(3, ONE - Q)
    star, bullet = jackson_products(0, 0)
    assert star == QPoly.monomial(1, ONE + Q)
    assert bullet == QPoly.monomial(1, ONE - Q)


@given(n=st.integers(0, 12), m=st.integers(0, 12), value=st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 3)]))
def test_products_at_numeric_q(n, m, value):
    # independent oracle: J(x^k) = x^(k+1)/[k+1], sigma(x^k) = q^k x^k, numerically
    J_c = lambda k: 1 / numeric_qint(k + 1, value)
    star_c = J_c(n) + value ** (m + 1) * J_c(m)
    bullet_c = J_c(n) - value ** (n + 1) * J_c(n)
    star, bullet = jackson_products(n, m)
    assert set(star.coeffs) == {n + m + 1}
    assert evaluate(star.coeffs[n + m + 1], value) == star_c
    assert evaluate(bullet.coeffs[n + m + 1], value) == bullet_c


def test_closed_forms_and_associativity():
    assert check_jackson_products(8).passed
    rep = check_star_associative(10)
    assert rep.passed and rep.skipped > 0


def test_partial_and_sigma_derivation():
    assert check_partial_inverse(20).passed
    polys = [x(0), x(1) + x(4), x(3) * Q - x(2)]
    assert check_sigma_derivation([(p, r) for p in polys for r in polys]).passed


def test_sigma_derivation_rejects_plain_leibniz():
    p, r = x(1), x(1)
    assert PARTIAL(p * r) != PARTIAL(p) * r + p * PARTIAL(r)


def test_finite_model():
    A, Jn, sigma, partial = finite_model(4)
    assert A.dim == 5
    assert Jn(A.e(4)) == A.zero
    assert Jn(A.e(1)) == A.e(2).scale(ONE / q_integer(2))
    assert sigma(A.e(2)) == A.e(2).scale(Q ** 2)
    with pytest.raises(ValueError):
        finite_model(0)


def test_qpoly_rejects_negative_degree():
    with pytest.raises(ValueError):
        QPoly({-1: ONE})
