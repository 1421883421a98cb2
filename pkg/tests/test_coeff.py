from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qduality.coeff import (
    INFINITY,
    ONE,
    Q,
    T,
    ZERO,
    LaurentScalar,
    NotDivisible,
    arith,
    divide_by_q1,
    evaluate_at_one,
    parse_scalar,
    q1_valuation,
)


def test_arith_examples():
    assert arith(Q, Q.inverse(), "mul") == ONE
    assert arith(T, Q + 1, "mul") == Q**2 - 1
    f = parse_scalar("3*q^-2 - 1/2*q")
    assert arith(f, ZERO, "add") == f


def test_arith_rejects_unknown_op():
    with pytest.raises(ValueError):
        arith(Q, Q, "div")


def test_valuation_examples():
    assert q1_valuation(T) == 1
    assert q1_valuation(Q.inverse() * (Q**2 - 2 * Q + 1)) == 2
    assert q1_valuation(LaurentScalar(5)) == 0
    assert q1_valuation(ZERO) == INFINITY


def test_divide_examples():
    assert divide_by_q1(Q**2 - 1, 1) == Q + 1
    f = parse_scalar("q^3 + 2")
    assert divide_by_q1(f, 0) == f
    with pytest.raises(NotDivisible):
        divide_by_q1(Q, 1)


def test_evaluate_examples():
    assert evaluate_at_one(Q**-3) == 1
    assert evaluate_at_one(Q**2 + Q - 1) == 1
    assert evaluate_at_one(ZERO) == 0
    assert isinstance(evaluate_at_one(Q), Fraction)


def test_parse_and_print():
    f = parse_scalar("q^-1 - 2 + 1/3*q^2")
    assert f == LaurentScalar({-1: 1, 0: -2, 2: Fraction(1, 3)})
    assert parse_scalar(str(f)) == f


scalars = st.dictionaries(
    st.integers(-4, 4),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=4,
).map(LaurentScalar)


@given(scalars, scalars, scalars)
def test_ring_laws(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == ZERO


@given(scalars, scalars)
def test_valuation_is_additive(f, g):
    if f and g:
        assert q1_valuation(f * g) == q1_valuation(f) + q1_valuation(g)
    else:
        assert q1_valuation(f * g) == INFINITY


@given(scalars, st.integers(0, 3))
def test_divide_inverts_multiply(f, n):
    assert divide_by_q1(f * T**n, n) == f


@given(scalars, scalars)
def test_evaluation_is_a_ring_map(f, g):
    assert evaluate_at_one(f * g) == evaluate_at_one(f) * evaluate_at_one(g)
    assert evaluate_at_one(f + g) == evaluate_at_one(f) + evaluate_at_one(g)
