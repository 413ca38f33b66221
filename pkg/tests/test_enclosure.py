"""Rational interval arithmetic and radical enclosures."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerian_bounds.enclosure import (
    AlgebraicBound,
    quadratic_root_enclosure,
    sqrt_enclosure,
)

fractions = st.fractions(
    min_value=-100, max_value=100, max_denominator=64
)


def test_empty_interval_rejected():
    with pytest.raises(ValueError, match="empty enclosure"):
        AlgebraicBound(Fraction(1), Fraction(0))


def test_exact_and_accessors():
    b = AlgebraicBound.exact(Fraction(3, 7))
    assert b.width == 0 and b.midpoint == Fraction(3, 7)
    assert b.contains(Fraction(3, 7))
    assert float(b) == pytest.approx(3 / 7)


def test_arithmetic_basics():
    a = AlgebraicBound(Fraction(1), Fraction(2))
    b = AlgebraicBound(Fraction(-1), Fraction(3))
    assert (a + b).lo == 0 and (a + b).hi == 5
    assert (-a).lo == -2 and (-a).hi == -1
    assert (a - 1).lo == 0
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert abs(AlgebraicBound(Fraction(-3), Fraction(1))).hi == 3


def test_division_sign_checks():
    a = AlgebraicBound(Fraction(1), Fraction(2))
    z = AlgebraicBound(Fraction(-1), Fraction(1))
    assert (1 / a).lo == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        z.reciprocal()


def test_order_predicates():
    a = AlgebraicBound(Fraction(0), Fraction(1))
    b = AlgebraicBound(Fraction(2), Fraction(3))
    assert a.certainly_lt(b) and a.certainly_leq(b) and a.possibly_leq(b)
    assert not b.possibly_leq(a)
    overlap = AlgebraicBound(Fraction(1, 2), Fraction(4))
    assert a.possibly_leq(overlap) and overlap.possibly_leq(a)
    assert not a.certainly_leq(overlap)


@given(fractions, fractions)
@settings(max_examples=100, deadline=None)
def test_interval_product_contains_point_products(x, y):
    ax = AlgebraicBound(x - 1, x + 1)
    ay = AlgebraicBound(y - 1, y + 1)
    assert (ax * ay).contains(x * y)
    assert (ax + ay).contains(x + y)
    assert (ax - ay).contains(x - y)


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4))
@settings(max_examples=100, deadline=None)
def test_sqrt_enclosure_brackets(v):
    enc = sqrt_enclosure(v, 80)
    assert enc.lo >= 0
    assert enc.lo * enc.lo <= v <= enc.hi * enc.hi
    assert enc.width <= Fraction(1, 2**80)


def test_sqrt_exact_square():
    assert sqrt_enclosure(Fraction(9, 4), 64) == AlgebraicBound.exact(Fraction(3, 2))
    assert sqrt_enclosure(0, 64).width == 0


def test_sqrt_negative_rejected():
    with pytest.raises(ValueError, match="negative radicand"):
        sqrt_enclosure(-1, 64)


def test_quadratic_root_known_surds():
    # y^2 - 2y - 1 has roots 1 +- sqrt(2).
    plus = quadratic_root_enclosure(1, -2, -1, "+", 100)
    minus = quadratic_root_enclosure(1, -2, -1, "-", 100)
    s2 = sqrt_enclosure(2, 120)
    assert plus.contains((1 + s2).midpoint) or plus.lo <= (1 + s2).hi
    assert (1 + s2).lo <= plus.hi and plus.lo <= (1 + s2).hi
    assert (1 - s2).lo <= minus.hi and minus.lo <= (1 - s2).hi
    assert plus.width <= Fraction(1, 2**100)


def test_quadratic_root_is_a_root():
    # The enclosure must contain an exact root: the quadratic evaluated
    # over the interval straddles zero.
    a, b, c = Fraction(3), Fraction(-5), Fraction(-7)
    for branch in "+-":
        y = quadratic_root_enclosure(a, b, c, branch, 90)
        value = a * (y * y) + b * y + AlgebraicBound.exact(c)
        assert value.contains(0)


def test_quadratic_root_errors():
    with pytest.raises(ZeroDivisionError):
        quadratic_root_enclosure(0, 1, 1, "+", 64)
    with pytest.raises(ValueError, match="negative discriminant"):
        quadratic_root_enclosure(1, 0, 1, "+", 64)
    with pytest.raises(ValueError, match="branch"):
        quadratic_root_enclosure(1, 0, -1, "?", 64)
