"""Exact polyhedral geometry for polytopes given by integer inequalities ``A x <= b``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, gcd, lcm
from typing import Iterable, Sequence

from . import _linalg as la
from .errors import DegeneratePolytopeError, EmptyPolytopeError, UnboundedPolytopeError

__all__ = [
    "Polytope",
    "Cone",
    "Box",
    "vertices",
    "tangent_cone",
    "bounding_box",
    "lattice_box",
    "contains",
    "semi_dilate",
    "is_full_dimensional",
]


def _clear_row(coeffs: Sequence, rhs) -> tuple[tuple[int, ...], int]:
    fr = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


@dataclass(frozen=True)
class Polytope:
    """The set ``{x in R^d : A x <= b}`` with integer ``A`` and ``b``.

    Rows may be given with rational entries; they are scaled to coprime
    integers on construction. Zero rows are rejected.
    """

    A: tuple
    b: tuple

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError("A and b have different numbers of rows")
        if not self.A:
            raise ValueError("at least one inequality is required")
        d = len(self.A[0])
        if d < 1:
            raise ValueError("dimension must be at least 1")
        rows, rhs = [], []
        for row, r in zip(self.A, self.b):
            if len(row) != d:
                raise ValueError("ragged constraint matrix")
            if all(Fraction(v) == 0 for v in row):
                raise ValueError("constraint rows must be nonzero")
            a, c = _clear_row(row, r)
            rows.append(a)
            rhs.append(c)
        object.__setattr__(self, "A", tuple(rows))
        object.__setattr__(self, "b", tuple(rhs))

    @classmethod
    def from_constraints(cls, constraints: Iterable[tuple[Sequence, str, object]]) -> "Polytope":
        """Build from ``(coefficients, relation, rhs)`` with relation ``<=`` or ``>=``."""
        A, b = [], []
        for coeffs, rel, rhs in constraints:
            if rel == "<=":
                A.append(tuple(coeffs))
                b.append(rhs)
            elif rel == ">=":
                A.append(tuple(-Fraction(c) for c in coeffs))
                b.append(-Fraction(rhs))
            else:
                raise ValueError(f"unknown relation {rel!r}")
        return cls(tuple(A), tuple(b))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "Polytope":
        d = len(lower)
        A, b = [], []
        for i in range(d):
            e = [0] * d
            e[i] = -1
            A.append(tuple(e))
            b.append(-Fraction(lower[i]))
            e = [0] * d
            e[i] = 1
            A.append(tuple(e))
            b.append(Fraction(upper[i]))
        return cls(tuple(A), tuple(b))

    @property
    def dim(self) -> int:
        return len(self.A[0])

    @property
    def num_rows(self) -> int:
        return len(self.A)

    def with_rows(self, A: Sequence, b: Sequence) -> "Polytope":
        return Polytope(self.A + tuple(tuple(r) for r in A), self.b + tuple(b))

    @cached_property
    def _vertex_data(self):
        return _compute_vertices(self)


@dataclass(frozen=True)
class Cone:
    """Pointed cone ``apex + cone(generators)``, equivalently ``inequalities . (x - apex) <= 0``."""

    apex: tuple
    generators: tuple
    inequalities: tuple = ()
    open_facets: frozenset = field(default_factory=frozenset)

    @property
    def dim(self) -> int:
        return len(self.apex)


@dataclass(frozen=True)
class Box:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        if any(l > u for l, u in zip(self.lower, self.upper)):
            raise ValueError("box lower bound exceeds upper bound")

    @property
    def magnitude(self) -> int:
        """Largest absolute value among the corner coordinates."""
        return max(max(abs(v) for v in self.lower), max(abs(v) for v in self.upper))

    def volume(self) -> int:
        n = 1
        for l, u in zip(self.lower, self.upper):
            n *= u - l + 1
        return n


def _feasible(A, b) -> bool:
    """Nonemptiness of ``{x : A x <= b}`` for an arbitrary (possibly non-pointed) system."""
    d = len(A[0])
    r = la.rank(A)
    if r == 0:
        return all(v >= 0 for v in b)
    if r < d:
        # the column space is spanned by r independent columns; restrict to them
        cols = []
        for j in range(d):
            trial = cols + [j]
            if la.rank([[row[c] for c in trial] for row in A]) == len(trial):
                cols = trial
            if len(cols) == r:
                break
        A = [[row[c] for c in cols] for row in A]
        d = r
    return bool(_pointed_vertices(A, b, d))


def _pointed_vertices(A, b, d):
    found = {}
    for idx in itertools.combinations(range(len(A)), d):
        x = la.solve([A[i] for i in idx], [b[i] for i in idx])
        if x is None:
            continue
        if x in found:
            continue
        if all(la.dot(row, x) <= r for row, r in zip(A, b)):
            found[x] = None
    return list(found)


def _has_recession_ray(A, d) -> bool:
    for idx in itertools.combinations(range(len(A)), d - 1):
        r = la.nullspace_vector([A[i] for i in idx], d)
        if r is None:
            continue
        for sgn in (1, -1):
            v = tuple(sgn * x for x in r)
            if all(la.dot(row, v) <= 0 for row in A):
                return True
    return False


def _compute_vertices(P: Polytope):
    A, b, d = P.A, P.b, P.dim
    if la.rank(A) < d:
        if _feasible(A, b):
            raise UnboundedPolytopeError("polytope required: the system contains a line")
        return []
    verts = _pointed_vertices(A, b, d)
    if not verts:
        return []
    if _has_recession_ray(A, d):
        raise UnboundedPolytopeError("polytope required: the system is unbounded")
    return sorted(verts)


def vertices(P: Polytope) -> list[tuple]:
    """All vertices of ``P`` as tuples of Fractions, sorted; ``[]`` when ``P`` is empty."""
    return list(P._vertex_data)


def is_full_dimensional(P: Polytope) -> bool:
    vs = vertices(P)
    if not vs:
        return False
    base = vs[0]
    diffs = [[a - c for a, c in zip(v, base)] for v in vs[1:]]
    return la.rank(diffs) == P.dim if diffs else P.dim == 0


def tight_rows(P: Polytope, v: Sequence) -> list[int]:
    return [i for i, (row, r) in enumerate(zip(P.A, P.b)) if la.dot(row, v) == r]


def tangent_cone(P: Polytope, v: Sequence) -> Cone:
    """Cone of feasible directions of ``P`` at the vertex ``v``."""
    v = tuple(Fraction(x) for x in v)
    if len(v) != P.dim:
        raise ValueError("dimension mismatch")
    if not contains(P, v):
        raise ValueError("point is not in the polytope")
    tight = tight_rows(P, v)
    T = [P.A[i] for i in tight]
    d = P.dim
    if la.rank(T) < d:
        raise ValueError("point is not a vertex of the polytope")
    gens = {}
    for idx in itertools.combinations(range(len(T)), d - 1):
        r = la.nullspace_vector([T[i] for i in idx], d)
        if r is None:
            continue
        for sgn in (1, -1):
            g = tuple(sgn * x for x in r)
            if all(la.dot(row, g) <= 0 for row in T):
                gens[g] = None
    return Cone(apex=v, generators=tuple(sorted(gens)), inequalities=tuple(T))


def bounding_box(P: Polytope) -> Box:
    """Integer box containing all of ``P`` (min rounded down, max rounded up)."""
    vs = vertices(P)
    if not vs:
        raise EmptyPolytopeError("empty polytope has no bounding box")
    d = P.dim
    lower = tuple(floor(min(v[i] for v in vs)) for i in range(d))
    upper = tuple(ceil(max(v[i] for v in vs)) for i in range(d))
    return Box(lower, upper)


def lattice_box(P: Polytope) -> Box | None:
    """Smallest integer box containing ``P ∩ Z^d``'s coordinate ranges, ``None`` if it is empty."""
    vs = vertices(P)
    if not vs:
        return None
    d = P.dim
    lower = tuple(ceil(min(v[i] for v in vs)) for i in range(d))
    upper = tuple(floor(max(v[i] for v in vs)) for i in range(d))
    if any(l > u for l, u in zip(lower, upper)):
        return None
    return Box(lower, upper)


def contains(P: Polytope, x: Sequence) -> bool:
    if len(x) != P.dim:
        raise ValueError(f"point has dimension {len(x)}, polytope has {P.dim}")
    return all(la.dot(row, x) <= r for row, r in zip(P.A, P.b))


def semi_dilate(P: Polytope, n: int, continuous_vars: Iterable[int]) -> Polytope:
    """Rows ``A x + B y <= b`` become ``n A x + B y <= n b`` (``y`` = continuous coordinates).

    Integer points of the result correspond to points of ``P`` whose continuous
    coordinates lie on the grid ``(1/n) Z``.
    """
    if n < 1:
        raise ValueError("dilation factor must be positive")
    cont = set(continuous_vars)
    if any(not 0 <= j < P.dim for j in cont):
        raise ValueError("continuous variable index out of range")
    A = tuple(tuple(a if j in cont else n * a for j, a in enumerate(row)) for row in P.A)
    b = tuple(n * r for r in P.b)
    return Polytope(A, b)


def require_full_dimensional(P: Polytope) -> None:
    if not vertices(P):
        raise EmptyPolytopeError("polytope is empty")
    if not is_full_dimensional(P):
        raise DegeneratePolytopeError("polytope is not full-dimensional")
