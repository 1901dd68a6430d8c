from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from intpolyopt.exactnum import (
    TruncatedSeries,
    bernoulli,
    bernoulli_poly,
    integer_kth_root_ceil,
    integer_kth_root_floor,
    iroot,
    rational_kth_root_interval,
    series_exp,
    series_inv_one_minus_exp,
    todd_coefficients,
)


def bernoulli_by_recurrence(n):
    # sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


@pytest.mark.parametrize("n", range(0, 25))
def test_bernoulli_matches_recurrence(n):
    assert bernoulli(n) == bernoulli_by_recurrence(n)


def test_bernoulli_known_values():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(13) == 0


@given(st.integers(0, 12), st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_bernoulli_poly_difference(n, x):
    # B_n(x + 1) - B_n(x) = n x^(n-1)
    lhs = bernoulli_poly(n, x + 1) - bernoulli_poly(n, x)
    assert lhs == (n * x ** (n - 1) if n else 0)


def test_todd_is_x_over_expm1():
    h = todd_coefficients(10)
    # (e^x - 1)/x * h(x) = 1
    e = [Fraction(1, factorial(j + 1)) for j in range(11)]
    prod = [sum(e[i] * h[n - i] for i in range(n + 1)) for n in range(11)]
    assert prod == [1] + [0] * 10


def test_series_exp_coefficients():
    s = series_exp(Fraction(3, 2), 6)
    assert [s.coefficient(j) for j in range(7)] == [Fraction(3, 2) ** j / factorial(j) for j in range(7)]
    with pytest.raises(ValueError):
        s.coefficient(7)


@pytest.mark.parametrize("c", [1, -1, 3, Fraction(-2, 5)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_inverse_series_times_base_is_one(c, m):
    order = 6
    inv = series_inv_one_minus_exp(c, m, order)
    base = TruncatedSeries(1, tuple(-Fraction(c) ** j / factorial(j) for j in range(1, 20)), order + m + 2)
    prod = inv
    for _ in range(m):
        prod = prod * base
    for n in range(0, order + 1):
        assert prod.coefficient(n) == (1 if n == 0 else 0)


def test_inverse_series_rejects_zero():
    with pytest.raises(ValueError):
        series_inv_one_minus_exp(0, 1, 3)


@given(st.integers(0, 10**40), st.integers(1, 9))
def test_iroot_definition(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@given(st.fractions(min_value=0, max_value=10**12), st.integers(1, 7))
def test_rational_roots(q, k):
    lo = integer_kth_root_floor(q, k)
    hi = integer_kth_root_ceil(q, k)
    assert lo**k <= q < (lo + 1) ** k
    assert hi**k >= q and (hi == 0 or (hi - 1) ** k < q)


@given(st.fractions(min_value=0, max_value=10**9, max_denominator=1000), st.integers(1, 6))
def test_root_interval_brackets(q, k):
    iv = rational_kth_root_interval(q, k, Fraction(1, 10**12))
    assert iv.lower**k <= q <= iv.upper**k
    assert iv.width <= Fraction(1, 10**12)


def test_root_interval_exact_for_perfect_powers():
    iv = rational_kth_root_interval(Fraction(8, 27), 3, Fraction(1, 10**6))
    assert iv.exact and iv.lower == Fraction(2, 3)


def test_negative_radicands_rejected():
    with pytest.raises(ValueError):
        iroot(-1, 2)
    with pytest.raises(ValueError):
        rational_kth_root_interval(-1, 3, Fraction(1, 10))
