"""Weighted generating functions ``sum f(a) z^a`` and their values at ``z = 1``.

Two routes compute the same numbers.

* The operator route lifts every cone term to a :class:`GeneralizedTerm` and
  applies the Euler operators ``z_r d/dz_r`` once per unit of degree. It is
  literal and slow; tests use it as a cross-check.
* :class:`PowerSumEvaluator` works in the coordinates of each unimodular cone,
  where the weighted cone series factors into one-dimensional sums whose
  Laurent coefficients are Bernoulli polynomial values. This is what the
  optimizer calls.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from . import _linalg as la
from .conedecomp import RationalFunctionSum, generic_direction
from .errors import IntPolyOptError
from .exactnum import series_exp, series_inv_one_minus_exp, todd_coefficients
from .polynomial import Monomial, Polynomial, poly_pow

__all__ = [
    "GeneralizedTerm",
    "GeneralizedTermSum",
    "lift",
    "apply_euler_operator",
    "apply_monomial",
    "apply_polynomial",
    "specialize_at_one",
    "poly_pow",
    "PowerSumEvaluator",
]


@dataclass(frozen=True)
class GeneralizedTerm:
    """``sum_i c_i z^{a_i} / prod_j (1 - z^{v_j})^{m_j}``."""

    numerator: tuple  # ((coefficient, exponent), ...)
    denominator: tuple  # ((ray, multiplicity), ...)

    def __post_init__(self):
        rays = [v for v, _ in self.denominator]
        if len(set(rays)) != len(rays):
            raise ValueError("denominator rays must be distinct")
        if any(m < 1 for _, m in self.denominator):
            raise ValueError("multiplicities must be positive")

    @property
    def signature(self) -> tuple:
        return self.denominator

    @property
    def pole_order(self) -> int:
        return sum(m for _, m in self.denominator)


@dataclass(frozen=True)
class GeneralizedTermSum:
    terms: tuple
    dim: int

    def __len__(self):
        return len(self.terms)

    def rays(self) -> set:
        return {v for t in self.terms for v, _ in t.denominator}


def _merge(terms, dim) -> GeneralizedTermSum:
    """Add numerators of terms with the same denominator; drop zero terms."""
    buckets: dict[tuple, dict] = {}
    for t in terms:
        num = buckets.setdefault(t.denominator, {})
        for c, a in t.numerator:
            num[a] = num.get(a, 0) + c
    out = []
    for den, num in buckets.items():
        items = tuple((c, a) for a, c in sorted(num.items()) if c != 0)
        if items:
            out.append(GeneralizedTerm(items, den))
    return GeneralizedTermSum(tuple(out), dim)


def lift(G: RationalFunctionSum) -> GeneralizedTermSum:
    terms = tuple(
        GeneralizedTerm(((Fraction(t.sign), tuple(t.u)),), tuple((tuple(v), 1) for v in t.rays)) for t in G.terms
    )
    return GeneralizedTermSum(terms, G.dim)


def apply_euler_operator(T: GeneralizedTerm, r: int) -> list[GeneralizedTerm]:
    out = []
    num = tuple((c * a[r], a) for c, a in T.numerator if a[r] != 0)
    if num:
        out.append(GeneralizedTerm(num, T.denominator))
    for j, (v, m) in enumerate(T.denominator):
        if v[r] == 0:
            continue
        factor = m * v[r]
        shifted = tuple((c * factor, tuple(x + y for x, y in zip(a, v))) for c, a in T.numerator)
        den = T.denominator[:j] + ((v, m + 1),) + T.denominator[j + 1 :]
        out.append(GeneralizedTerm(shifted, den))
    return out


def apply_monomial(S: GeneralizedTermSum, mono: Monomial) -> GeneralizedTermSum:
    current = S
    for r, e in enumerate(mono.exponents):
        for _ in range(e):
            nxt = []
            for t in current.terms:
                nxt.extend(apply_euler_operator(t, r))
            current = _merge(nxt, S.dim)
    c = Fraction(mono.coefficient)
    scaled = [GeneralizedTerm(tuple((c * x, a) for x, a in t.numerator), t.denominator) for t in current.terms]
    return _merge(scaled, S.dim)


def apply_polynomial(S: GeneralizedTermSum, f: Polynomial) -> GeneralizedTermSum:
    if f.dim != S.dim:
        raise ValueError("polynomial and generating function dimensions differ")
    parts = []
    for mono in f.monomials():
        parts.extend(apply_monomial(S, mono).terms)
    return _merge(parts, S.dim)


def _term_constant(term: GeneralizedTerm, lam) -> Fraction:
    M = term.pole_order
    num = None
    for c, a in term.numerator:
        s = series_exp(la.dot(lam, a), M).scale(c)
        num = s if num is None else num + s
    series = num
    for v, m in term.denominator:
        series = series * series_inv_one_minus_exp(la.dot(lam, v), m, M - m)
    return series.coefficient(0)


def specialize_at_one(S: GeneralizedTermSum, direction=None) -> Fraction:
    """Exact value of the encoded sum at ``z = (1, ..., 1)``."""
    if not S.terms:
        return Fraction(0)
    lam = direction if direction is not None else generic_direction(S.rays(), S.dim)
    if any(la.dot(lam, v) == 0 for v in S.rays()):
        raise IntPolyOptError("specialization direction is orthogonal to a ray")
    return sum((_term_constant(t, lam) for t in S.terms), Fraction(0))


# -- fast route -----------------------------------------------------------------


class _BernoulliRow:
    """``B_n(mu)`` for one integer ``mu`` and ``n = 0..N``, extended on demand."""

    __slots__ = ("mu", "values")

    def __init__(self, mu: int):
        self.mu = mu
        self.values: list[Fraction] = []

    def upto(self, n: int) -> list[Fraction]:
        if len(self.values) <= n:
            size = max(n + 1, 2 * len(self.values))
            h = todd_coefficients(size)
            B = [h[i] * factorial(i) for i in range(size + 1)]
            mu = self.mu
            vals = []
            for m in range(size + 1):
                total = Fraction(0)
                mp = 1
                # B_m(mu) = sum_i C(m, i) B_i mu^(m-i), summed from i = m downward
                binom = 1
                for i in range(m, -1, -1):
                    if B[i]:
                        total += binom * B[i] * mp
                    mp *= mu
                    binom = binom * i // (m - i + 1) if i else binom
                vals.append(total)
            self.values = vals
        return self.values


_WIDTH = 16  # bits per exponent in packed monomial keys
_MASK = (1 << _WIDTH) - 1


def _packed(poly: Polynomial) -> tuple[dict, int]:
    """Integer numerators keyed by packed exponents, and their common denominator."""
    den = 1
    for c in poly.terms.values():
        den = lcm(den, Fraction(c).denominator)
    out = {}
    for e, c in poly.terms.items():
        if max(e, default=0) > _MASK:
            raise IntPolyOptError("exponent too large for the power-sum evaluator")
        key = 0
        for i, x in enumerate(e):
            key |= x << (_WIDTH * i)
        c = Fraction(c)
        out[key] = c.numerator * (den // c.denominator)
    return out, den


class _ConeData:
    __slots__ = ("sign", "mu", "c", "p", "den", "q", "k")

    def __init__(self, sign, mu, c, packed):
        self.sign = sign
        self.mu = mu
        self.c = c
        self.p = list(packed[0].items())
        self.den = packed[1]
        self.q = None
        self.k = 0


class PowerSumEvaluator:
    """Exact ``sum_{a in P ∩ Z^d} g(a)`` for polynomials ``g``, typically ``f**k``.

    In the coordinates ``t`` of a unimodular cone with rays ``v_j`` and apex
    point ``u = sum mu_j v_j``, the weighted cone series is
    ``sum_{t >= mu} q(t) exp(s * sum_j c_j t_j)`` with ``c_j = <lam, v_j>``. For
    each monomial ``t^a`` this is a product of one-dimensional sums whose
    Laurent coefficients are

    * ``-(-1)^a a! c^(-a-1)`` at ``s^(-a-1)``,
    * ``-B_{m+a+1}(mu) c^m / ((m+a+1) m!)`` at ``s^m`` for ``m >= 0``,

    and nothing else. The value at ``z = 1`` is the sum of constant terms.
    """

    def __init__(self, G: RationalFunctionSum, f: Polynomial, direction=None):
        if f.dim != G.dim:
            raise ValueError("polynomial and generating function dimensions differ")
        self.G = G
        self.f = f
        self.dim = G.dim
        self.direction = direction if direction is not None else generic_direction(G.rays(), G.dim)
        self._rows: dict[int, _BernoulliRow] = {}
        self._tables_cache: dict[tuple, tuple] = {}
        self._cones = []
        for t in G.terms:
            mu = la.solve(la.transpose(t.rays), t.u)
            mu = tuple(int(x) for x in mu)
            c = tuple(la.dot(self.direction, v) for v in t.rays)
            if any(x == 0 for x in c):
                raise IntPolyOptError("specialization direction is orthogonal to a ray")
            self._cones.append(_ConeData(t.sign, mu, c, _packed(self._in_cone(t, f))))
        self._cache: dict[int, int | Fraction] = {}

    def _in_cone(self, term, g: Polynomial) -> Polynomial:
        # x_r = sum_j t_j (v_j)_r
        M = [[term.rays[j][r] for j in range(self.dim)] for r in range(self.dim)]
        return g.compose_linear(M, self.dim)

    def _row(self, mu: int, n: int) -> list[Fraction]:
        row = self._rows.get(mu)
        if row is None:
            row = self._rows[mu] = _BernoulliRow(mu)
        return row.upto(n)

    def _q(self, cone: _ConeData, k: int) -> dict:
        if cone.q is None or cone.k > k:
            cone.q, cone.k = {0: 1}, 0
        while cone.k < k:
            out: dict[int, object] = {}
            get = out.get
            for k1, c1 in cone.q.items():
                for k2, c2 in cone.p:
                    key = k1 + k2
                    out[key] = get(key, 0) + c1 * c2
            cone.q = {key: c for key, c in out.items() if c}
            cone.k += 1
        return cone.q

    def power_sum(self, k: int):
        """``sum f(a)**k`` over the lattice points (``k = 0`` gives the count)."""
        if k < 0:
            raise ValueError("power must be non-negative")
        if k not in self._cache:
            total = Fraction(0)
            for cone in self._cones:
                total += cone.sign * self._cone_value(cone, self._q(cone, k)) / cone.den**k
            self._cache[k] = _as_number(total)
        return self._cache[k]

    def weighted_sum(self, g: Polynomial):
        """``sum g(a)`` over the lattice points."""
        total = Fraction(0)
        for t, cone in zip(self.G.terms, self._cones):
            q, den = _packed(self._in_cone(t, g))
            total += cone.sign * self._cone_value(cone, q) / den
        return _as_number(total)

    def _cone_value(self, cone: _ConeData, q: dict) -> Fraction:
        d = self.dim
        shifts = [_WIDTH * j for j in range(d)]
        monos = [(tuple((key >> sh) & _MASK for sh in shifts), coef) for key, coef in q.items()]
        deg = max((sum(a) for a, _ in monos), default=0)
        pos, pole, den = [], [], 1
        for j in range(d):
            P, Q, dj = self._tables(cone.mu[j], cone.c[j], deg, d)
            pos.append(P)
            pole.append(Q)
            den *= dj
        total = 0
        if d == 1:
            p0, q0 = pos[0], pole[0]
            for (a,), coef in monos:
                total += coef * p0[a][0]
        elif d == 2:
            p0, p1 = pos
            q0, q1 = pole
            for (a0, a1), coef in monos:
                x, y = p0[a0], p1[a1]
                acc = x[0] * y[0] + q0[a0] * y[a0 + 1] + q1[a1] * x[a1 + 1]
                total += coef * acc
        else:
            subsets = [S for S in itertools.product((False, True), repeat=d) if not all(S)]
            for a, coef in monos:
                acc = 0
                for S in subsets:
                    base = 1
                    excess = 0
                    free = []
                    for j in range(d):
                        if S[j]:
                            base *= pole[j][a[j]]
                            excess += a[j] + 1
                        else:
                            free.append(pos[j][a[j]])
                    acc += base * _distribute(free, excess)
                total += coef * acc
        return Fraction(total) / den

    def _tables(self, mu: int, c: int, deg: int, d: int):
        """Integer numerators of the one-dimensional Laurent coefficients and their common denominator.

        ``pos[a][m]`` is the ``s^m`` coefficient and ``pole[a]`` the ``s^(-a-1)``
        coefficient of ``sum_{t >= mu} t^a exp(c t s)``. Tables are built for a
        power-of-two degree cap and reused for every smaller degree.
        """
        key = (mu, c, d)
        hit = self._tables_cache.get(key)
        if hit is not None and hit[0] >= deg:
            return hit[1:]
        cap = 1 << max(deg, 1).bit_length() if deg > 8 else 8
        B = self._row(mu, 2 * cap + d + 1)
        pos_f, pole_f = [], []
        inv_fact = [Fraction(1, factorial(m)) for m in range(cap + d + 1)]
        for a in range(cap + 1):
            row = []
            cm = 1
            for m in range(cap - a + d):
                n = m + a + 1
                row.append(-B[n] * cm * inv_fact[m] / n)
                cm *= c
            pos_f.append(row)
            v = Fraction(factorial(a), c ** (a + 1))
            pole_f.append(v if a % 2 else -v)
        den = 1
        for row in pos_f:
            for x in row:
                den = lcm(den, x.denominator)
        for x in pole_f:
            den = lcm(den, x.denominator)
        pos = [[x.numerator * (den // x.denominator) for x in row] for row in pos_f]
        pole = [x.numerator * (den // x.denominator) for x in pole_f]
        self._tables_cache[key] = (cap, pos, pole, den)
        return pos, pole, den


def _distribute(free, excess):
    """``sum over m >= 0 with sum m = excess of prod_j free[j][m_j]``."""
    if len(free) == 1:
        return free[0][excess]
    if len(free) == 2:
        x, y = free
        total = 0
        for m in range(excess + 1):
            total += x[m] * y[excess - m]
        return total
    head, rest = free[0], free[1:]
    return sum(head[m] * _distribute(rest, excess - m) for m in range(excess + 1))


def _as_number(x: Fraction):
    return int(x) if x.denominator == 1 else x
