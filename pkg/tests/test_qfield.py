"""Exact arithmetic in the field of rational functions of q."""

import random
from fractions import Fraction

import pytest

from qdual.qfield import (
    ONE,
    PoleError,
    Q,
    ZERO,
    q_power,
    qnum,
    scalar,
)


def test_partial_fraction_identity():
    lhs = ONE / (ONE - Q) + ONE / (ONE + Q)
    rhs = scalar(2) / (ONE - Q * Q)
    assert lhs == rhs
    assert lhs.eval_at(2) == Fraction(-2, 3)


def test_canonical_form_cancels():
    assert (Q * Q - ONE) / (Q - ONE) == Q + ONE
    assert hash((Q * Q - ONE) / (Q - ONE)) == hash(Q + ONE)
    assert ((Q - ONE) * (Q + ONE) - (Q * Q - ONE)).is_zero


def test_str_renderings():
    assert str(Q) == "q"
    assert str(ONE) == "1"
    assert str(ZERO) == "0"
    assert str(-Q) == "-q"
    assert str(q_power(-1)) == "(1)/(q)"
    assert str(ONE / (Q - ONE)) == "(1)/(q - 1)"
    assert str((Q * Q - ONE) / Q) == "(q^2 - 1)/(q)"
    assert str(scalar(Fraction(3, 2))) == "3/2"


def test_powers():
    assert Q ** 0 == ONE
    assert Q ** 5 == q_power(5)
    assert Q ** -3 == q_power(-3)
    assert (Q + ONE) ** 2 == Q * Q + 2 * Q + ONE
    assert ((Q + ONE) ** -2) * (Q + ONE) ** 2 == ONE


def test_mixed_scalar_arithmetic():
    assert 2 + Q == Q + 2
    assert Fraction(1, 2) * Q == Q / 2
    assert 1 - Q == -(Q - 1)
    assert 6 / (2 * Q) == 3 * q_power(-1)


def test_zero_division_and_inverse_guards():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ZERO ** -1


def test_eval_pole():
    f = ONE / (ONE - Q * Q)
    assert f.eval_at(2) == Fraction(-1, 3)
    with pytest.raises(PoleError):
        f.eval_at(1)
    with pytest.raises(PoleError):
        f.eval_at(-1)
    # poles removed by cancellation are not poles
    assert ((Q * Q - ONE) / (Q - ONE)).eval_at(1) == 2


def test_qnum_values():
    assert qnum(0).is_zero
    assert qnum(1).is_one
    assert str(qnum(2)) == "q^2 + 1"
    assert str(qnum(3)) == "q^4 + q^2 + 1"
    assert str(qnum(2, 2)) == "q^4 + 1"
    assert qnum(2).eval_at(2) == 5
    assert qnum(3, 2).eval_at(2) == 1 + 16 + 256


def test_qnum_recurrence():
    # [n] = 1 + q^2 [n-1], and the base-q^(2k) analogue for k = 2, 3
    for k in (1, 2, 3):
        for n in range(1, 13):
            assert qnum(n, k) == ONE + q_power(2 * k) * qnum(n - 1, k)


def test_field_axioms_fuzz():
    rng = random.Random(9001)
    pool = [ZERO, ONE, Q, q_power(-1), Q + ONE, scalar(Fraction(2, 3))]
    for _ in range(520):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == ZERO
        if not b.is_zero:
            assert b * b.inv() == ONE
            assert (a / b) * b == a
        new = rng.choice((a + b, a - b, a * b))
        if len(pool) < 120:
            pool.append(new)


def test_eval_is_a_homomorphism_fuzz():
    """eval_at commutes with +, -, *, / at two sample points, exactly."""
    rng = random.Random(31337)
    points = (Fraction(3, 2), Fraction(2))
    pool = [
        (ONE, (Fraction(1), Fraction(1))),
        (Q, points),
        (Q + ONE, tuple(v + 1 for v in points)),
        (scalar(Fraction(-5, 4)), (Fraction(-5, 4), Fraction(-5, 4))),
    ]
    ops = ("add", "sub", "mul", "div")
    trees = 0
    while trees < 500:
        (fa, va), (fb, vb) = rng.choice(pool), rng.choice(pool)
        op = rng.choice(ops)
        if op == "add":
            f, v = fa + fb, tuple(x + y for x, y in zip(va, vb))
        elif op == "sub":
            f, v = fa - fb, tuple(x - y for x, y in zip(va, vb))
        elif op == "mul":
            f, v = fa * fb, tuple(x * y for x, y in zip(va, vb))
        else:
            if fb.is_zero or any(y == 0 for y in vb):
                continue
            f, v = fa / fb, tuple(x / y for x, y in zip(va, vb))
        for point, expected in zip(points, v):
            assert f.eval_at(point) == expected
        trees += 1
        if len(pool) < 80:
            pool.append((f, v))
