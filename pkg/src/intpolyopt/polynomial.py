"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["Monomial", "Polynomial", "poly_pow"]


def _normalize_coeff(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else c


def _pack_width(*degrees) -> int:
    return max(sum(degrees), 1).bit_length() + 1


def _pack(e, width):
    key = 0
    for i, x in enumerate(e):
        key |= x << (width * i)
    return key


def _unpack(key, width, dim):
    mask = (1 << width) - 1
    return tuple((key >> (width * i)) & mask for i in range(dim))


@dataclass(frozen=True)
class Monomial:
    coefficient: object
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficient", _normalize_coeff(self.coefficient))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self) -> int:
        return sum(self.exponents)


class Polynomial:
    """Immutable sparse polynomial in ``dim`` variables.

    Terms are kept in a dict from exponent tuples to nonzero coefficients
    (``int`` when integral, ``Fraction`` otherwise).
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | Iterable[Monomial] = (), dim: int | None = None):
        collected: dict[tuple, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m.exponents, m.coefficient) for m in terms)
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if dim is None:
                dim = len(exps)
            elif len(exps) != dim:
                raise ValueError("exponent vector length does not match dimension")
            if any(e < 0 for e in exps):
                raise ValueError("exponents must be non-negative")
            collected[exps] = collected.get(exps, 0) + Fraction(c)
        if dim is None:
            raise ValueError("dimension of an empty polynomial must be given")
        self.dim = dim
        self._terms = {e: _normalize_coeff(c) for e, c in collected.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, dim: int) -> "Polynomial":
        """Trusted constructor: exponent tuples of length ``dim``, coefficients ``int`` or ``Fraction``."""
        obj = cls.__new__(cls)
        obj.dim = dim
        clean = {}
        for e, c in terms.items():
            if c:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                clean[e] = c
        obj._terms = clean
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def constant(cls, c, dim: int) -> "Polynomial":
        return cls({(0,) * dim: c}, dim)

    @classmethod
    def variable(cls, i: int, dim: int) -> "Polynomial":
        e = [0] * dim
        e[i] = 1
        return cls({tuple(e): 1}, dim)

    @classmethod
    def from_monomials(cls, monomials: Sequence, dim: int | None = None):
        """From ``Monomial`` objects or ``(coefficient, exponents)`` pairs; repeats are summed."""
        return cls([m if isinstance(m, Monomial) else Monomial(m[0], tuple(m[1])) for m in monomials], dim)

    # views
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return [Monomial(c, e) for e, c in self.items()]

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def max_abs_coefficient(self):
        return max((abs(c) for c in self._terms.values()), default=0)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def degree_in(self, variables: Iterable[int]) -> int:
        vs = list(variables)
        return max((sum(e[i] for i in vs) for e in self._terms), default=0)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ValueError("polynomials live in different dimensions")
            return other
        return Polynomial.constant(other, self.dim)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(out, self.dim)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()}, self.dim)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        # exponent vectors packed into one integer add without carries
        width = _pack_width(self.degree, other.degree)
        a = [(_pack(e, width), c) for e, c in self._terms.items()]
        b = [(_pack(e, width), c) for e, c in other._terms.items()]
        out: dict[int, object] = {}
        get = out.get
        for k1, c1 in a:
            for k2, c2 in b:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        dim = self.dim
        return Polynomial._raw({_unpack(k, width, dim): c for k, c in out.items()}, dim)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return poly_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, x: Sequence):
        return self.evaluate(x)

    def evaluate(self, x: Sequence):
        if len(x) != self.dim:
            raise ValueError("point dimension does not match polynomial")
        total = 0
        for e, c in self._terms.items():
            t = c
            for xi, ei in zip(x, e):
                if ei:
                    t *= xi**ei
            total += t
        return total

    def scale(self, c) -> "Polynomial":
        c = _normalize_coeff(c)
        return Polynomial._raw({e: c * v for e, v in self._terms.items()}, self.dim)

    def compose_linear(self, matrix: Sequence[Sequence], new_dim: int | None = None) -> "Polynomial":
        """Substitute ``x_r = sum_j matrix[r][j] * y_j``; the result is a polynomial in ``y``."""
        if len(matrix) != self.dim:
            raise ValueError("substitution needs one row per variable")
        m = len(matrix[0]) if new_dim is None else new_dim
        forms = []
        for row in matrix:
            forms.append(Polynomial({tuple(1 if j == i else 0 for j in range(m)): a for i, a in enumerate(row) if a}, m))
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(1, m)} for _ in forms]

        def power(r, e):
            cache = powers[r]
            if e not in cache:
                cache[e] = power(r, e - 1) * forms[r]
            return cache[e]

        out = Polynomial({}, m)
        for e, c in self._terms.items():
            term = Polynomial.constant(c, m)
            for r, er in enumerate(e):
                if er:
                    term = term * power(r, er)
            out = out + term
        return out

    def restrict(self, fixed: Mapping[int, object]) -> "Polynomial":
        """Fix some variables to values; the remaining ones keep their order."""
        keep = [i for i in range(self.dim) if i not in fixed]
        out: dict[tuple, object] = {}
        for e, c in self._terms.items():
            t = c
            for i, v in fixed.items():
                t *= Fraction(v) ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + t
        return Polynomial(out, len(keep))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(f"x{i}^{p}" if p > 1 else f"x{i}" for i, p in enumerate(e) if p)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def poly_pow(f: Polynomial, k: int) -> Polynomial:
    """``f**k`` by repeated multiplication with ``f`` (cheap when ``f`` has few terms)."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = Polynomial.constant(1, f.dim)
    for _ in range(k):
        result = result * f
    return result
