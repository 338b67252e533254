import itertools

import pytest

from rbsystems.algebra import AlgebraMorphism, Operator, dual_numbers, matrix_algebra, nilpotent_example
from rbsystems.fields import GF
from rbsystems.report import PreconditionError
from rbsystems.tensor import Tensor2, leg_embed
from rbsystems.ybpair import (
    IdempotentFamily,
    YBPair,
    block_projection,
    check_ayb,
    check_fs,
    check_idempotent_data,
    check_pair_orthogonality,
    check_quasi_coproduct,
    check_separated,
    check_split,
    check_unital_quasi,
    check_yb_pair,
    idempotent_pair,
    inner_coproduct,
    matrix_unit_pair,
    nilpotent_pair,
    pushforward_pair,
    rb_from_pair,
)

M2 = matrix_algebra(2)


def _brute_residuals(r, s):
    """Expand every leg product term by term from pure tensors."""
    A = r.algebra
    one = A.one
    e = A.basis

    def placed(t, where):
        out = []
        for (i, j), c in t.terms():
            slots = {"12": (e[i], e[j], one), "13": (e[i], one, e[j]), "23": (one, e[i], e[j])}[where]
            out.append((c, slots))
        return out

    def prod(x, y):
        total = leg_embed(Tensor2.zero(A), "12")
        for (c, (a, b, d)), (c2, (a2, b2, d2)) in itertools.product(x, y):
            total = total + leg_embed(Tensor2.zero(A), "12").__class__.pure(a * a2, b * b2, d * d2).scale(c * c2)
        return total

    r12, r13, r23 = (placed(r, w) for w in ("12", "13", "23"))
    s12, s13, s23 = (placed(s, w) for w in ("12", "13", "23"))
    res_r = prod(r13, r12) - prod(r12, r23) + prod(s23, r13)
    res_s = prod(s13, r12) - prod(s12, s23) + prod(s23, s13)
    return res_r, res_s


def test_zero_and_diagonal_pairs():
    Z = Tensor2.zero(M2)
    assert check_yb_pair(M2, Z, Z).passed
    assert check_ayb(M2, Z).passed


def test_diagonal_units_form_a_pair():
    # every surviving term carries e22 e11 = 0 or cancels
    e11, e12, e21, e22 = M2.basis
    r, s = Tensor2.pure(e11, e11), Tensor2.pure(e22, e22)
    assert not any(_brute_residuals(r, s))
    assert check_yb_pair(M2, r, s).passed


@pytest.mark.parametrize("i,j,k,l", list(itertools.product(range(4), repeat=4))[::7])
def test_yb_pair_matches_expansion_oracle(i, j, k, l):
    e = M2.basis
    r = Tensor2.pure(e[i], e[j]) + Tensor2.pure(e[j], e[k])
    s = Tensor2.pure(e[k], e[l])
    res_r, res_s = _brute_residuals(r, s)
    assert check_yb_pair(M2, r, s).passed == (not res_r and not res_s)


def test_matrix_unit_pair_terms():
    P = matrix_unit_pair(2, 2, 1, 3)
    A = P.algebra
    e = dict(zip(A.basis_names, A.basis))
    assert A.basis_names == ("e11", "e12", "e21", "e22", "e33", "e34", "e43", "e44")
    assert P.r == Tensor2.pure(e["e11"], e["e11"]) + Tensor2.pure(e["e21"], e["e12"])
    assert P.s == Tensor2.pure(e["e33"], e["e33"]) + Tensor2.pure(e["e43"], e["e34"])
    assert P.verified
    assert not any(_brute_residuals(P.r, P.s))


def test_one_by_one_blocks():
    P = matrix_unit_pair(1, 1, 1, 2)
    A = P.algebra
    assert A.dim == 2
    assert P.r == Tensor2.pure(A.e(0), A.e(0)) and P.s == Tensor2.pure(A.e(1), A.e(1))
    assert P.verified


@pytest.mark.parametrize("args", [(2, 2, 3, 3), (2, 2, 1, 2), (2, 2, 0, 3), (1, 2, 1, 4)])
def test_matrix_unit_pair_bad_indices(args):
    with pytest.raises(PreconditionError):
        matrix_unit_pair(*args)


def test_fs_split_orthogonality():
    e11, e12, e21, e22 = M2.basis
    r = Tensor2.pure(e11, e11) + Tensor2.pure(e21, e12)
    assert check_fs(M2, r).passed
    Z = Tensor2.zero(M2)
    assert check_fs(M2, Z).passed and check_split(M2, Z, Z).passed and check_pair_orthogonality(M2, Z, Z).passed
    P = matrix_unit_pair(2, 2, 1, 3)
    A = P.algebra
    assert check_split(A, P.r, P.s).passed and check_pair_orthogonality(A, P.r, P.s).passed
    assert check_yb_pair(A, P.r, P.s).passed


def test_rb_from_matrix_unit_pair_closed_form():
    P = matrix_unit_pair(2, 2, 1, 3)
    A = P.algebra
    sys = rb_from_pair(P)
    for idx in range(A.dim):
        a = A.e(idx)
        c11, c33 = a.coeffs[0], a.coeffs[4]
        assert sys.R(a) == A.element([c11, 0, 0, c11, 0, 0, 0, 0])
        assert sys.S(a) == A.element([0, 0, 0, 0, c33, 0, 0, c33])
    assert sys.verified
    assert check_separated(A, sys.R, sys.S).passed


def test_rb_from_zero_pair_and_non_pair():
    Z = Tensor2.zero(M2)
    sys = rb_from_pair(YBPair(M2, Z, Z))
    assert sys.R == Operator.zero(M2) and sys.S == Operator.zero(M2)
    e11, e12, e21, e22 = M2.basis
    with pytest.raises(PreconditionError):
        rb_from_pair(YBPair(M2, Tensor2.pure(e11, e22), Tensor2.zero(M2)))


def test_nilpotent_pairs():
    A = nilpotent_example()
    g, h = A.e(1), A.e(2)
    P = nilpotent_pair(A, A.zero, h)
    assert P.r == Tensor2.zero(A) and P.verified
    assert nilpotent_pair(A, g, h).verified
    with pytest.raises(PreconditionError):
        nilpotent_pair(A, A.one, h)


def test_pushforward_examples():
    P = matrix_unit_pair(2, 2, 1, 3)
    A = P.algebra
    assert pushforward_pair(AlgebraMorphism.identity(A), P).r == P.r
    f = block_projection(A, 0)
    Q = pushforward_pair(f, P)
    B = Q.algebra
    e11, e12, e21, e22 = B.basis
    assert Q.r == Tensor2.pure(e11, e11) + Tensor2.pure(e21, e12)
    assert Q.s == Tensor2.zero(B) and Q.verified
    zero = AlgebraMorphism.from_function(A, B, lambda a: B.zero)
    Q0 = pushforward_pair(zero, P)
    assert not Q0.r and not Q0.s


@pytest.mark.parametrize("kappa", [0, 1])
def test_idempotent_family_on_units(kappa):
    one = M2.one
    d = idempotent_pair(IdempotentFamily(M2, one, kappa))
    assert all(d.Delta(a) == Tensor2.pure(a, one) for a in M2.basis)
    assert d.R == Operator.identity(M2) and d.S == Operator.zero(M2)
    d0 = idempotent_pair(IdempotentFamily(M2, M2.zero, kappa))
    assert all(d0.Delta(a) == Tensor2.pure(one, a) for a in M2.basis)


@pytest.mark.parametrize("kappa", [0, 1])
def test_idempotent_family_postconditions(kappa):
    e = M2.e(0)
    F = IdempotentFamily(M2, e, kappa)
    assert check_idempotent_data(F, idempotent_pair(F)).passed


def test_idempotent_family_preconditions():
    with pytest.raises(PreconditionError):
        IdempotentFamily(M2, M2.e(1), 0)
    with pytest.raises(PreconditionError):
        IdempotentFamily(M2, M2.e(0), 2)


def test_unital_quasi_examples():
    one = M2.one
    assert check_unital_quasi(M2, Tensor2.pure(one, one)).passed
    e12 = M2.e(1)
    assert not check_unital_quasi(M2, Tensor2.pure(e12, e12)).passed


def test_quasi_coproduct_agrees_on_matrix_units():
    P = matrix_unit_pair(2, 2, 1, 3)
    A = P.algebra
    rep = check_quasi_coproduct(A, P.r, P.s, inner_coproduct(A, P.r, P.s))
    assert rep.passed == check_yb_pair(A, P.r, P.s).passed == True
    Z = Tensor2.zero(M2)
    assert check_quasi_coproduct(M2, Z, Z).passed


def test_quasi_coproduct_agrees_on_f3_sample():
    A = dual_numbers(GF(3))
    F = A.field
    disagreements = 0
    failures = 0
    for coeffs in itertools.islice(itertools.product(range(3), repeat=8), 0, 6561, 37):
        r = Tensor2.from_terms(A, [(i // 2, i % 2, F(c)) for i, c in enumerate(coeffs[:4]) if c])
        s = Tensor2.from_terms(A, [(i // 2, i % 2, F(c)) for i, c in enumerate(coeffs[4:]) if c])
        yb = check_yb_pair(A, r, s).passed
        failures += not yb
        disagreements += check_quasi_coproduct(A, r, s).passed != yb
    assert disagreements == 0 and failures > 0


@pytest.mark.parametrize("kappa", [0, 1])
def test_idempotent_star_and_bullet_closed_forms(kappa):
    from rbsystems.rbsystem import bullet_operation, star_operation

    A = matrix_algebra(3)
    e = A.e(0) + A.e(4)
    d = idempotent_pair(IdempotentFamily(A, e, kappa))
    star = star_operation(A, d.R, d.S)
    bullet = bullet_operation(A, d.R, d.S)
    one = A.one
    k = A.field(kappa)
    for a, b in itertools.product(A.basis, repeat=2):
        want_star = e * a * b + a * (e - one) * b + (a * b * e - e * a * b).scale(k)
        want_bullet = e * a * b - b * (e - one) * a + (a * e * b + b * e * a - e * a * b - b * a * e).scale(k)
        assert (star.element(list(a.coeffs)) * star.element(list(b.coeffs))).coeffs == want_star.coeffs
        assert list(bullet(a.coeffs, b.coeffs)) == list(want_bullet.coeffs)
