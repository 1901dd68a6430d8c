"""Small exact linear algebra over the rationals.

Dimensions here are tiny (the ambient dimension is fixed and small), so plain
Gaussian elimination on :class:`fractions.Fraction` entries is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple


def _to_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Sequence[Sequence]) -> int:
    m = _to_fraction_matrix(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """Solve the square system ``rows @ x = rhs``; ``None`` when singular."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(rows, rhs)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return None
        m[c], m[pivot] = m[pivot], m[c]
        inv = 1 / m[c][c]
        m[c] = [a * inv for a in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def nullspace_vector(rows: Sequence[Sequence], ncols: int) -> tuple | None:
    """A primitive integer vector spanning the kernel, if the kernel is a line.

    Returns ``None`` unless ``rank(rows) == ncols - 1``.
    """
    m = _to_fraction_matrix(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if r != ncols - 1:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -m[i][free]
    return primitive(x)


def primitive(vec: Sequence) -> tuple:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(v // g for v in ints)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix (Bareiss fraction-free elimination)."""
    m = [list(map(int, row)) for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def adjugate_int(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Adjugate of a square integer matrix, so that ``M @ adj(M) = det(M) I``."""
    n = len(rows)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * det_int(minor)
    return adj


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matvec(rows, vec):
    return tuple(sum(a * b for a, b in zip(row, vec)) for row in rows)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))
