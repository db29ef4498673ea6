from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from hahnsat.errors import ParseError
from hahnsat.group import ExpVec
from hahnsat.series import Series
from hahnsat.syntax import Context, parse, render

from strategies import any_series, exact_series


def test_render_examples():
    s = Series([(ExpVec([0, Fraction(1, 2)]), 1), (ExpVec([1, 0]), -3)], dim=2)
    assert render(s) == "t2^(1/2) - 3*t1"
    assert render(Series.zero(2)) == "0"
    assert render(parse("1 + O(t1^2)", 1)) == "1 + O(t1^2)"
    assert render(parse("sqrt2*t1^(-1)", 1)) == "sqrt2*t1^(-1)"


@given(any_series(3))
def test_roundtrip(s):
    assert parse(render(s), 3) == s


@given(exact_series(2))
def test_roundtrip_with_q_field(s):
    ctx = Context(2, field="qsqrt2")
    assert parse(render(s), ctx) == s


def test_bindings():
    ctx = Context(1, bindings={"x": parse("t1 + 1", 1)})
    assert parse("x^2 - 2*x", ctx) == parse("t1^2 - 1", 1)


@pytest.mark.parametrize("text", ["1 +", "t1^", "t3", "(1 + t1", "t1^(1/0)", "foo", "1 $ 2", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 2)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("1 + $", 1)
    assert info.value.position == 4
