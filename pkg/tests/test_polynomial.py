from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from treemaps.polynomial import (
    Polynomial,
    binomial_int,
    binomial_poly,
    double_factorial,
    factorial,
    interpolate,
    reciprocal_factorial,
    rising_factorial,
)

coeff_lists = st.lists(st.fractions(max_denominator=7).map(Fraction), max_size=6)
polys = coeff_lists.map(Polynomial)


def test_factorials():
    assert [factorial(m) for m in range(6)] == [1, 1, 2, 6, 24, 120]
    assert double_factorial(-1) == 1
    assert double_factorial(9) == 945
    assert reciprocal_factorial(-3) == 0
    assert reciprocal_factorial(4) == Fraction(1, 24)
    with pytest.raises(ValueError):
        factorial(-1)


@given(st.integers(0, 30), st.integers(-3, 33))
def test_binomial_int_matches_math_comb(n, k):
    expected = comb(n, k) if k >= 0 else 0
    assert binomial_int(n, k) == expected


def test_binomial_int_negative_top():
    # (-1 choose k) = (-1)^k
    assert [binomial_int(-1, k) for k in range(5)] == [1, -1, 1, -1, 1]


def test_zero_polynomial_and_degree():
    assert Polynomial().degree == -1
    assert Polynomial([0, 0]).is_zero()
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial.x().degree == 1


def test_string_forms():
    p = Polynomial([0, 1, 0, 2])
    assert str(p) == "2*x^3 + x"
    assert repr(p) == "Polynomial([0, 1, 0, 2])"
    assert str(Polynomial([Fraction(-1, 2), 0, 1])) == "x^2 - 1/2"
    assert str(Polynomial()) == "0"


@given(polys, polys, st.integers(-5, 5))
def test_ring_operations_evaluate_pointwise(p, q, t):
    assert (p + q)(t) == p(t) + q(t)
    assert (p - q)(t) == p(t) - q(t)
    assert (p * q)(t) == p(t) * q(t)


@given(polys, st.integers(0, 3), st.integers(-4, 4))
def test_power_and_shift(p, e, t):
    assert (p**e)(t) == p(t) ** e
    assert p.shift(2)(t) == p(t + 2)


@given(polys)
def test_interpolation_recovers_polynomial(p):
    pts = [(k, p(k)) for k in range(1, p.degree + 2)] if p.degree >= 0 else [(1, 0)]
    assert interpolate(pts) == p


def test_interpolate_rejects_bad_input():
    with pytest.raises(ValueError):
        interpolate([])
    with pytest.raises(ValueError):
        interpolate([(1, 2), (1, 3)])


@given(st.integers(0, 7), st.integers(0, 15))
def test_binomial_poly_at_integers(k, K):
    assert binomial_poly(k)(K) == comb(K, k)


def test_rising_factorial():
    x = Polynomial.x()
    assert rising_factorial(x, 0) == 1
    assert rising_factorial(x, 3)(2) == 2 * 3 * 4
    assert rising_factorial(x - 4, 3)(2) == 0


def test_dict_round_trip_and_integrality():
    p = Polynomial.from_dict({3: 2, 1: 1})
    assert p.to_dict() == {1: 1, 3: 2}
    assert p.int_coeffs() == {1: 1, 3: 2}
    assert p.is_integral()
    assert not (p / 2).is_integral()
