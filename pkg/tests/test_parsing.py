"""The expression parser and its round trip through the printer."""

import random

import pytest

from qdual.algebra import render_element
from qdual.parsing import ParseError, parse_element
from qdual.presentations import (
    derive_inverse_rules,
    dual_algebra,
    dual_superplane,
    gl_algebra,
    rename,
    superplane,
    tensor,
)
from qdual.qfield import Q, q_power

from helpers import random_element

DDUAL = derive_inverse_rules(dual_algebra())
GL = gl_algebra()


def test_parse_basic_expressions():
    assert parse_element("c*b", DDUAL) == DDUAL.gen("c") * DDUAL.gen("b")
    assert parse_element("c*b - q*delta*alpha", DDUAL) == (
        DDUAL.gen("c") * DDUAL.gen("b")
        - Q * (DDUAL.gen("delta") * DDUAL.gen("alpha"))
    )
    assert parse_element("q^-1 * b^2", DDUAL) == q_power(-1) * DDUAL.gen("b", 2)
    assert parse_element("3", DDUAL) == DDUAL.scalar(3)
    assert parse_element("1/2 * b", DDUAL) == DDUAL.normal_form(
        [("b", 1)], q_power(0) / 2
    )


def test_parse_unary_minus_and_parens():
    assert parse_element("-alpha*delta + b*c", DDUAL) == (
        DDUAL.gen("b") * DDUAL.gen("c")
        - DDUAL.gen("alpha") * DDUAL.gen("delta")
    )
    assert parse_element("-(b - c)", DDUAL) == DDUAL.gen("c") - DDUAL.gen("b")
    assert parse_element("(q^2 - 1)/(q)*alpha*delta", DDUAL) == (
        (Q * Q - q_power(0)) / Q
    ) * (DDUAL.gen("alpha") * DDUAL.gen("delta"))


def test_parse_inverse_letters():
    got = parse_element("b*c^-1 - alpha*c^-1*delta*c^-1", DDUAL)
    assert render_element(got) == "b*c^-1 - (1)/(q)*alpha*delta*c^-2"
    # a whole parenthesized monomial can be inverted letterwise
    assert parse_element("(q*b*c)^-1", DDUAL) == q_power(-1) * (
        DDUAL.gen("c", -1) * DDUAL.gen("b", -1)
    )


def test_parse_scalar_division():
    assert parse_element("b/2", DDUAL) == parse_element("1/2*b", DDUAL)
    assert parse_element("b/(q - q^-1)", DDUAL) == (
        (Q - q_power(-1)).inv() * DDUAL.gen("b")
    )


@pytest.mark.parametrize("text, message, position", [
    ("c*(", "unexpected end of input", 3),
    ("", "unexpected end of input", 0),
    ("z*b", "unknown generator 'z'", 0),
    ("q^x", "exponent must be an integer", 2),
    ("b^", "exponent must be an integer", 2),
    ("b @ c", "unexpected character '@'", 2),
    ("1.5*b", "unexpected character '.'", 1),
    ("b c", "unexpected 'c'", 2),
    ("b/c", "divisor must be a scalar expression", 1),
    ("b/0", "division by zero", 1),
    ("0^-1", "cannot invert zero", 1),
    ("(alpha + delta)^-1", "cannot invert a sum of monomials", 15),
    ("alpha^-1", "negative power of a non-invertible generator", 5),
])
def test_parse_errors(text, message, position):
    with pytest.raises(ParseError) as err:
        parse_element(text, DDUAL)
    assert message in str(err.value)
    assert err.value.position == position


def test_parse_error_in_gl_for_undeclared_inverse():
    with pytest.raises(ParseError) as err:
        parse_element("a^-1", GL)
    assert "non-invertible" in str(err.value)


def test_round_trip_fuzz():
    """render -> parse is the identity on ≥200 random normal forms."""
    rng = random.Random(140)
    presentations = (
        DDUAL,
        GL,
        superplane(),
        dual_superplane(),
        tensor(DDUAL, rename(DDUAL, "2")),
    )
    done = 0
    while done < 210:
        pres = presentations[done % len(presentations)]
        x = random_element(pres, rng)
        text = render_element(x)
        assert parse_element(text, pres) == x
        done += 1
