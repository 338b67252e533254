from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rbsystems.fields import GF, QQ, QQ_q, ParseError, RationalFunction, format_scalar, parse_scalar

from helpers import FIELDS, field_values


def test_parse_fraction_lowest_terms():
    assert parse_scalar("-3/4", QQ) == Fraction(-3, 4)
    assert parse_scalar("6/-8", QQ) == Fraction(-3, 4)


def test_parse_rational_function_cancels():
    q = RationalFunction.q()
    assert parse_scalar("(1-q^2)/(1-q)", QQ_q) == 1 + q


def test_parse_prime_field_reduces():
    assert int(parse_scalar("7", GF(5))) == 2
    assert int(parse_scalar("1/2", GF(5))) == 3


@pytest.mark.parametrize("text,field", [
    ("1/0", QQ), ("1+", QQ), ("q", QQ), ("(1", QQ_q), ("1/(q-q)", QQ_q), ("5/5", GF(5)), ("2^", QQ),
])
def test_parse_errors(text, field):
    with pytest.raises(ParseError):
        parse_scalar(text, field)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_scalar("1/0", QQ)
    assert "position" in str(info.value)


def test_prime_modulus_validated():
    with pytest.raises(ValueError):
        GF(6)


def test_rational_function_denominator_monic():
    x = parse_scalar("(2*q+2)/(4*q^2-4)", QQ_q)
    assert x == parse_scalar("1/(2*q-2)", QQ_q)
    assert x.denom.coeffs()[-1] == 1


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_round_trip(field, data):
    x = data.draw(field_values(field))
    text = format_scalar(x, field)
    assert parse_scalar(text, field) == x
    assert format_scalar(parse_scalar(text, field), field) == text


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(field_values(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + field.zero == a and a * field.one == a
    assert a - a == field.zero
    if a != field.zero:
        assert a * (field.one / a) == field.one
