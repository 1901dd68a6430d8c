"""Exact numeric kernel.

Rationals are :class:`fractions.Fraction`. On top of that this module provides
truncated Laurent series in one formal variable ``s``, the Bernoulli-number
expansion of ``1/(1 - e^{cs})`` and integer k-th roots that never touch
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = [
    "TruncatedSeries",
    "RootInterval",
    "series_exp",
    "series_inv_one_minus_exp",
    "bernoulli",
    "bernoulli_poly",
    "todd_coefficients",
    "iroot",
    "integer_kth_root_floor",
    "integer_kth_root_ceil",
    "rational_kth_root_interval",
]


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum(coeffs[i] * s**(start + i))`` known exactly up to ``s**order``.

    Coefficients past ``order`` are unknown, never zero-filled, and no
    operation reads them.
    """

    start: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        n = max(self.order - self.start + 1, 0)
        cs = tuple(Fraction(c) for c in self.coeffs[:n])
        if len(cs) < n:
            cs = cs + (Fraction(0),) * (n - len(cs))
        object.__setattr__(self, "coeffs", cs)

    def coefficient(self, n: int) -> Fraction:
        if n > self.order:
            raise ValueError(f"coefficient of s^{n} is beyond truncation order {self.order}")
        if n < self.start:
            return Fraction(0)
        return self.coeffs[n - self.start]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.start, self.coeffs, order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        start = min(self.start, other.start)
        return TruncatedSeries(
            start,
            tuple(self.coefficient(n) + other.coefficient(n) for n in range(start, order + 1)),
            order,
        )

    def __neg__(self):
        return TruncatedSeries(self.start, tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.start, tuple(c * x for x in self.coeffs), self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        # each factor's unknown tail meets the other's lowest term
        order = min(self.order + other.start, other.order + self.start)
        start = self.start + other.start
        out = [Fraction(0)] * max(order - start + 1, 0)
        a, b = self.coeffs, other.coeffs
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(min(len(b), len(out) - i)):
                out[i + j] += x * b[j]
        return TruncatedSeries(start, tuple(out), order)

    __rmul__ = scale

    def __pow__(self, m: int) -> "TruncatedSeries":
        if m < 0:
            raise ValueError("negative powers are not supported")
        result = TruncatedSeries(0, (Fraction(1),), self.order - self.start)
        for _ in range(m):
            result = result * self
        return result


@lru_cache(maxsize=None)
def _todd_table(n: int) -> tuple:
    # h(x) = x/(e^x - 1); h(x) * (e^x - 1)/x = 1 gives h_n = -sum_{j<n} h_j/(n-j+1)!
    h = [Fraction(1)]
    for m in range(1, n + 1):
        h.append(-sum(h[j] * Fraction(1, factorial(m - j + 1)) for j in range(m)))
    return tuple(h)


def todd_coefficients(n: int) -> tuple:
    """Taylor coefficients ``h_0..h_n`` of ``x/(e^x - 1)``."""
    # grow in blocks so the cache is shared between nearby requests
    size = max(16, 1 << (max(n, 1) - 1).bit_length())
    return _todd_table(size)[: n + 1]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with the convention ``B_1 = -1/2``."""
    return todd_coefficients(n)[n] * factorial(n)


@lru_cache(maxsize=4096)
def bernoulli_poly(n: int, x) -> Fraction:
    """Bernoulli polynomial ``B_n(x)`` at a rational point."""
    x = Fraction(x)
    h = todd_coefficients(n)
    total = Fraction(0)
    xp = Fraction(1)
    # B_n(x) = sum_i C(n, i) B_i x^(n-i); walk i downward so powers of x build up
    for i in range(n, -1, -1):
        if h[i]:
            total += comb(n, i) * h[i] * factorial(i) * xp
        xp *= x
    return total


def series_exp(c, order: int) -> TruncatedSeries:
    """Truncation of ``exp(c*s)`` at ``s**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    c = Fraction(c)
    coeffs = []
    term = Fraction(1)
    for j in range(order + 1):
        coeffs.append(term)
        term = term * c / (j + 1)
    return TruncatedSeries(0, tuple(coeffs), order)


def series_inv_one_minus_exp(c, m: int, order: int) -> TruncatedSeries:
    """Laurent expansion of ``(1 - e^{cs})^{-m}`` around ``s = 0`` up to ``s**order``.

    Uses ``1/(1 - e^{x}) = -(1/x) * h(x)`` with ``h(x) = x/(e^x - 1)``.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("degenerate denominator direction")
    if m < 1:
        raise ValueError("multiplicity must be positive")
    base_order = order + m - 1
    h = todd_coefficients(base_order + 1)
    # coefficient of s^(j-1) is -h_j c^(j-1)
    coeffs = []
    cp = 1 / c
    for j in range(base_order + 2):
        coeffs.append(-h[j] * cp)
        cp *= c
    base = TruncatedSeries(-1, tuple(coeffs), base_order)
    result = base
    for _ in range(m - 1):
        result = result * base
    return result


def iroot(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for integers ``n >= 0``, ``k >= 1``."""
    if n < 0:
        raise ValueError("negative radicand")
    if k < 1:
        raise ValueError("root index must be positive")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def integer_kth_root_floor(q, k: int) -> int:
    """Largest integer ``n >= 0`` with ``n**k <= q``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    # n**k is an integer, so n**k <= q iff n**k <= floor(q)
    return iroot(q.numerator // q.denominator, k)


def integer_kth_root_ceil(q, k: int) -> int:
    """Smallest integer ``n >= 0`` with ``n**k >= q``."""
    q = Fraction(q)
    n = integer_kth_root_floor(q, k)
    return n if n**k >= q else n + 1


@dataclass(frozen=True)
class RootInterval:
    """Rational bracket ``lower <= radicand**(1/k) <= upper``."""

    lower: Fraction
    upper: Fraction
    k: int
    radicand: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


def _exact_root(q: Fraction, k: int) -> Fraction | None:
    a = iroot(q.numerator, k)
    if a**k != q.numerator:
        return None
    b = iroot(q.denominator, k)
    if b**k != q.denominator:
        return None
    return Fraction(a, b)


def rational_kth_root_interval(q, k: int, precision) -> RootInterval:
    """Bracket ``q**(1/k)`` by dyadic rationals at most ``precision`` apart."""
    q = Fraction(q)
    precision = Fraction(precision)
    if q < 0:
        raise ValueError("negative radicand")
    if precision <= 0:
        raise ValueError("precision must be positive")
    exact = _exact_root(q, k)
    if exact is not None:
        return RootInterval(exact, exact, k, q)
    p = 0
    while precision * (1 << p) < 1:
        p += 1
    scale = 1 << p
    a = integer_kth_root_floor(q * scale**k, k)
    return RootInterval(Fraction(a, scale), Fraction(a + 1, scale), k, q)
