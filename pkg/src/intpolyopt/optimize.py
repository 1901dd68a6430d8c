"""Bounds, exact optimum, FPTAS and point recovery for integer polynomial maximisation.

Everything here reduces to two exact integers per polytope: the lattice point
count ``N`` and the power sum ``S_k = sum f(a)**k``. The bounds are
``L_k = (S_k / N)**(1/k)`` and ``U_k = S_k**(1/k)``.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from .conedecomp import generating_function
from .errors import DegeneratePolytopeError, EmptyPolytopeError, IntPolyOptError
from .exactnum import RootInterval, integer_kth_root_ceil, iroot, rational_kth_root_interval
from .genfun import PowerSumEvaluator
from .geometry import Polytope, bounding_box, contains, lattice_box, semi_dilate
from .polynomial import Polynomial

__all__ = [
    "ShiftInfo",
    "BoundsReport",
    "ExactResult",
    "FptasResult",
    "MixedIntegerEntry",
    "normalize",
    "bounds",
    "optimize_exact",
    "fptas",
    "fptas_k",
    "recover_point",
    "mixed_integer_sequence",
    "PowerSums",
]

DEFAULT_PRECISION = Fraction(1, 10**12)


@dataclass(frozen=True)
class ShiftInfo:
    M: int
    C: int
    r: int
    D: int
    L: int
    U: int
    shifted: bool

    @property
    def offset(self) -> int:
        """Amount added to ``f`` to obtain the normalised objective."""
        return -self.L if self.shifted else 0


@dataclass(frozen=True)
class BoundsReport:
    k: int
    count: int
    power_sum: int
    lower: RootInterval
    upper: RootInterval
    floor_upper: int
    ceil_lower: int

    @property
    def converged(self) -> bool:
        return self.floor_upper - self.ceil_lower < 1


@dataclass
class ExactResult:
    value: int | None
    status: str
    trace: list = field(default_factory=list)
    shift: ShiftInfo | None = None
    point: tuple | None = None
    stopped_by: str | None = None
    bracket: tuple | None = None

    def __iter__(self):
        return iter((self.value, self.trace))


@dataclass(frozen=True)
class FptasResult:
    epsilon: Fraction
    k_used: int
    count: int
    lower_bound: RootInterval
    upper_bound: RootInterval
    guarantee: Fraction
    certified_point: tuple | None = None
    certified_value: int | None = None

    @property
    def certified(self) -> bool | None:
        if self.certified_value is None:
            return None
        return self.certified_value >= self.guarantee


@dataclass(frozen=True)
class MixedIntegerEntry:
    n: int
    value: Fraction
    scaled_value: int
    point: tuple | None
    scale: int


class PowerSums:
    """Count and power sums of one objective over one polytope, computed once and cached."""

    def __init__(self, P: Polytope, f: Polynomial):
        if f.dim != P.dim:
            raise ValueError("objective and polytope dimensions differ")
        self.P = P
        self.f = f
        try:
            G = generating_function(P)
        except DegeneratePolytopeError:
            # only happens for the half-integer cuts of recover_point, which hold no lattice points
            G = None
        self.evaluator = PowerSumEvaluator(G, f) if G is not None and G.terms else None

    @property
    def count(self) -> int:
        return 0 if self.evaluator is None else self.evaluator.power_sum(0)

    def power_sum(self, k: int):
        return 0 if self.evaluator is None else self.evaluator.power_sum(k)


def normalize(P: Polytope, f: Polynomial, known_nonnegative: bool = False) -> tuple[Polynomial, ShiftInfo]:
    box = bounding_box(P)
    M = max(1, box.magnitude)
    C = f.max_abs_coefficient
    r = f.num_terms
    D = f.degree
    bound = ceil(Fraction(r * C * M**D))
    if known_nonnegative:
        return f, ShiftInfo(M, C, r, D, -bound, bound, False)
    return f + bound, ShiftInfo(M, C, r, D, -bound, bound, True)


def _report(k, N, S, precision) -> BoundsReport:
    if N == 0:
        raise EmptyPolytopeError("empty feasible set: the polytope has no lattice points")
    if S < 0:
        raise IntPolyOptError("negative power sum: the objective is not non-negative on the polytope")
    upper = rational_kth_root_interval(S, k, precision)
    lower = rational_kth_root_interval(Fraction(S, N), k, precision)
    return BoundsReport(k, N, S, lower, upper, iroot(S, k), integer_kth_root_ceil(Fraction(S, N), k))


def bounds(P: Polytope, fbar: Polynomial, k: int, precision=DEFAULT_PRECISION, sums: PowerSums | None = None) -> BoundsReport:
    """``L_k``/``U_k`` for a non-negative objective; ``floor_upper``/``ceil_lower`` are exact."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    sums = sums or PowerSums(P, fbar)
    N = sums.count
    if N == 0:
        raise EmptyPolytopeError("empty feasible set: the polytope has no lattice points")
    S = sums.power_sum(k)
    if not isinstance(S, int):
        raise IntPolyOptError("power sum is not an integer; the objective must have integer coefficients")
    return _report(k, N, S, Fraction(precision))


def optimize_exact(
    P: Polytope,
    f: Polynomial,
    known_nonnegative: bool = False,
    k_max: int = 200,
    certificate: bool = True,
    precision=DEFAULT_PRECISION,
    verify_budget: int = 256,
) -> ExactResult:
    """Maximum of ``f`` over ``P ∩ Z^d``.

    Raises ``k`` until ``floor(U_k) == ceil(L_k)``. With ``certificate`` set,
    at ``k = 2, 4, 8, ...`` a point is recovered by bisection; its value is
    optimal if it reaches ``floor(U_k)``, or if every box of a bounded
    bisection has ``floor(U_k)`` at most that value. Either way the loop stops
    early with an exact answer.
    """
    fbar, info = normalize(P, f, known_nonnegative)
    sums = PowerSums(P, fbar)
    if sums.count == 0:
        raise EmptyPolytopeError("empty feasible set: the polytope has no lattice points")
    trace: list[BoundsReport] = []
    next_attempt = 2
    for k in range(1, k_max + 1):
        rep = bounds(P, fbar, k, precision, sums)
        trace.append(rep)
        if rep.converged:
            return ExactResult(rep.floor_upper + info.L * info.shifted, "optimal", trace, info, None, "bounds")
        if certificate and k >= next_attempt:
            next_attempt *= 2
            point, value = _descend(P, fbar, k, sums)
            if value != rep.floor_upper:
                found = _verify(P, fbar, k, sums, value, point, verify_budget)
                if found is None:
                    continue
                value, point = found
            return ExactResult(value + info.L * info.shifted, "optimal", trace, info, point, "certificate")
    last = trace[-1]
    off = info.L * info.shifted
    return ExactResult(None, "unconverged", trace, info, None, None, (last.ceil_lower + off, last.floor_upper + off))


def fptas_k(epsilon, N: int) -> int:
    """``max(1, ceil((1 + 1/epsilon) * ln N))`` evaluated with enough digits to round correctly."""
    eps = Fraction(epsilon)
    if N <= 1:
        return 1
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        factor = decimal.Decimal((1 + 1 / eps).numerator) / decimal.Decimal((1 + 1 / eps).denominator)
        val = factor * decimal.Decimal(N).ln()
        return max(1, int(val.to_integral_value(rounding=decimal.ROUND_CEILING)))


def fptas(
    P: Polytope,
    f: Polynomial,
    epsilon,
    recover: bool = False,
    precision=DEFAULT_PRECISION,
    sums: PowerSums | None = None,
) -> FptasResult:
    """``L_k`` with ``k = ceil((1 + 1/eps) ln N)``, a ``(1 - eps)``-approximation of the maximum.

    ``f`` must be non-negative on ``P``; a negative power sum or recovered value
    is reported as an error.
    """
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    sums = sums or PowerSums(P, f)
    N = sums.count
    if N == 0:
        raise EmptyPolytopeError("empty feasible set: the polytope has no lattice points")
    if sums.power_sum(1) < 0:
        raise IntPolyOptError("objective is negative on the polytope; use a shifted objective")
    k = fptas_k(eps, N)
    rep = bounds(P, f, k, precision, sums)
    guarantee = (1 - eps) * rep.floor_upper
    point = value = None
    if recover:
        point, value = _descend(P, f, k, sums)
        if value < 0:
            raise IntPolyOptError("objective is negative on the polytope; use a shifted objective")
    return FptasResult(eps, k, N, rep.lower, rep.upper, guarantee, point, value)


def _box_rows(d, lo, hi):
    # half-integer cuts: the boundary never holds lattice points
    A, b = [], []
    for i in range(d):
        e = [0] * d
        e[i] = 2
        A.append(tuple(e))
        b.append(2 * hi[i] + 1)
        e = [0] * d
        e[i] = -2
        A.append(tuple(e))
        b.append(-2 * lo[i] + 1)
    return A, b


def _next_axis(lo, hi, axis):
    d = len(lo)
    while lo[axis] == hi[axis]:
        axis = (axis + 1) % d
    return axis


def _lower_half(P, fbar, k, lo, hi, axis):
    """Bounds and ``(N, S_k)`` of the lower half of the box split at the midpoint of ``axis``."""
    mid = (lo[axis] + hi[axis]) // 2
    hi1 = list(hi)
    hi1[axis] = mid
    A, b = _box_rows(len(lo), lo, hi1)
    half = PowerSums(P.with_rows(A, b), fbar)
    return hi1, mid, half.count, half.power_sum(k)


def _descend(P: Polytope, fbar: Polynomial, k: int, sums: PowerSums):
    box = lattice_box(P)
    lo, hi = list(box.lower), list(box.upper)
    N, S = sums.count, sums.power_sum(k)
    axis = 0
    while any(l < h for l, h in zip(lo, hi)):
        axis = _next_axis(lo, hi, axis)
        hi1, mid, N1, S1 = _lower_half(P, fbar, k, lo, hi, axis)
        N2, S2 = N - N1, S - S1
        # compare the means S1/N1 and S2/N2; an empty half never wins
        take_lower = N2 == 0 or (N1 > 0 and S1 * N2 >= S2 * N1)
        if take_lower:
            hi, N, S = hi1, N1, S1
        else:
            lo = list(lo)
            lo[axis] = mid + 1
            N, S = N2, S2
        axis = (axis + 1) % len(lo)
    point = tuple(lo)
    if N != 1 or not contains(P, point):  # pragma: no cover - guarded by exact counting
        raise IntPolyOptError("bisection lost track of the lattice points")
    return point, fbar.evaluate(point)


def _verify(P: Polytope, fbar: Polynomial, k: int, sums: PowerSums, value: int, point, budget: int):
    """Prove ``max fbar <= value`` by splitting boxes until each has ``floor(U_k) <= value``.

    A box whose only lattice point beats ``value`` raises the incumbent. Returns
    the certified ``(value, point)``, or ``None`` once ``budget`` boxes have
    been evaluated.
    """
    box = lattice_box(P)
    stack = [(list(box.lower), list(box.upper), sums.count, sums.power_sum(k), 0)]
    spent = 0
    while stack:
        lo, hi, N, S, axis = stack.pop()
        if N == 0 or iroot(S, k) <= value:
            continue
        if N == 1 and all(l == h for l, h in zip(lo, hi)):
            # a single lattice point whose value is above the incumbent
            value, point = iroot(S, k), tuple(lo)
            continue
        if spent >= budget:
            return None
        spent += 1
        axis = _next_axis(lo, hi, axis)
        hi1, mid, N1, S1 = _lower_half(P, fbar, k, lo, hi, axis)
        lo2 = list(lo)
        lo2[axis] = mid + 1
        nxt = (axis + 1) % len(lo)
        stack.append((lo2, list(hi), N - N1, S - S1, nxt))
        stack.append((list(lo), hi1, N1, S1, nxt))
    return value, point


def recover_point(P: Polytope, fbar: Polynomial, epsilon, sums: PowerSums | None = None) -> tuple[tuple, int]:
    """A lattice point of ``P`` whose value is at least ``L_k`` for the FPTAS ``k``.

    Bisects the lattice box, keeping the half with the larger ``L_k``.
    """
    sums = sums or PowerSums(P, fbar)
    if sums.count == 0:
        raise EmptyPolytopeError("empty feasible set: the polytope has no lattice points")
    k = fptas_k(epsilon, sums.count)
    return _descend(P, fbar, k, sums)


def _scale_continuous(f: Polynomial, cont: Sequence[int], n: int) -> tuple[Polynomial, int]:
    Dc = f.degree_in(cont)
    out = {}
    for e, c in f.terms.items():
        g = sum(e[j] for j in cont)
        out[e] = c * n ** (Dc - g)
    return Polynomial(out, f.dim), n**Dc


def mixed_integer_sequence(
    P: Polytope,
    f: Polynomial,
    integer_vars: Sequence[int],
    grid: Sequence[int],
    epsilon=None,
    known_nonnegative: bool = False,
) -> list[MixedIntegerEntry]:
    """Optimal values of ``f`` over the grids ``Z^I x (1/n) Z^J`` inside ``P``.

    Each grid problem is the integer problem ``n^Dc * f(x, y/n)`` over the
    semi-dilated polytope; values are reported in the original scale. With
    ``epsilon`` the FPTAS lower bound is reported instead of the exact optimum.
    """
    ints = set(integer_vars)
    cont = [j for j in range(P.dim) if j not in ints]
    if not cont:
        grid = [1]
    out = []
    for n in grid:
        if n < 1:
            raise ValueError("grid values must be positive integers")
        Gn = semi_dilate(P, n, cont)
        gn, scale = _scale_continuous(f, cont, n)
        if epsilon is None:
            res = optimize_exact(Gn, gn, known_nonnegative)
            if res.value is None:
                raise IntPolyOptError(f"grid {n}: bounds did not converge")
            scaled, point = res.value, res.point
        else:
            fr = fptas(Gn, gn, epsilon, recover=True)
            scaled, point = fr.certified_value, fr.certified_point
        if point is not None:
            point = tuple(Fraction(v, n) if j in cont else Fraction(v) for j, v in enumerate(point))
        out.append(MixedIntegerEntry(n, Fraction(scaled, scale), scaled, point, scale))
    return out
