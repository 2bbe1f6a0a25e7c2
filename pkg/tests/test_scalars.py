from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from hstlab.errors import DivisionByZero, ParseError
from hstlab.scalars import Scalar, format_scalar, is_squarefree, parse_scalar

from oracle import sym
from strategies import nonzero_scalars, scalars

half = Fraction(1, 2)


def test_conjugate_product_is_norm():
    a = Scalar(half, half)
    b = Scalar(half, -half)
    assert a * b == Scalar(Fraction(-1, 2))


def test_inverse_of_root():
    assert Scalar.sqrt().inv() == Scalar(0, Fraction(1, 3))


def test_cosine_sine_squares_sum_to_one():
    s = Scalar(0, half)
    assert s * s + Scalar(half) ** 2 == Scalar(1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(0).inv()


@pytest.mark.parametrize(
    "text, value",
    [("-1/2", Scalar(Fraction(-1, 2))), ("1/2r", Scalar(0, half)), ("0", Scalar(0)), ("3-2/3r", Scalar(3, Fraction(-2, 3)))],
)
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text, pos", [("", 0), ("1/0", 0), ("2x", 1), ("1+2", 2), ("r", 0), ("1r2", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_scalar(text)
    if text:
        assert info.value.position is not None


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        Scalar(0, 1, 3) + Scalar(0, 1, 5)


def test_squarefree():
    assert [d for d in range(2, 13) if is_squarefree(d)] == [2, 3, 5, 6, 7, 10, 11]


def test_integral_parts_stay_ints():
    s = Scalar(Fraction(4, 2), 0) * Scalar(3)
    assert type(s.rat) is int and s.rat == 6


@settings(max_examples=200)
@given(scalars, scalars, scalars)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == Scalar(0)


@settings(max_examples=200)
@given(nonzero_scalars)
def test_inverse(a):
    assert a * a.inv() == Scalar(1)
    assert a.norm() == (a * a.conjugate()).rat


@settings(max_examples=200)
@given(scalars)
def test_parse_format_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@settings(max_examples=100)
@given(scalars, scalars)
def test_agrees_with_sympy(a, b):
    assert sp.simplify(sym(a * b) - sym(a) * sym(b)) == 0
    assert sp.simplify(sym(a + b) - sym(a) - sym(b)) == 0
