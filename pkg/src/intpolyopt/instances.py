"""Instance builders: the two worked examples, the quartic residue family and random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Polytope
from .polynomial import Polynomial

__all__ = ["InstanceBundle", "example1", "nvs04", "nvs04_original_objective", "an1_instance", "random_instance"]

NVS04_FLIP = 165 * 10**9
NVS04_SCALE = 100


@dataclass(frozen=True)
class InstanceBundle:
    polytope: Polytope
    objective: Polynomial
    name: str
    provenance: str = ""
    known_optimum: int | None = None
    nonnegative: bool = False
    sense: str = "max"
    metadata: dict = field(default_factory=dict, compare=True, hash=False)

    def __post_init__(self):
        if self.polytope.dim != self.objective.dim:
            raise ValueError("polytope and objective dimensions differ")
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")

    @property
    def dim(self) -> int:
        return self.polytope.dim


def example1() -> InstanceBundle:
    """Two lattice points, ``(1, 1)`` and ``(2, 1000)``; ``x^3 y`` peaks at 8000."""
    P = Polytope.from_constraints(
        [
            ((3996, -4), ">=", 3991),
            ((3996, -4), "<=", 3993),
            ((1, 0), ">=", Fraction(1, 2)),
            ((1, 0), "<=", Fraction(5, 2)),
        ]
    )
    f = Polynomial({(3, 1): 1})
    return InstanceBundle(P, f, "example1", "two-point polytope with a monomial objective", 8000, True, "max", {})


def nvs04_original_objective() -> Polynomial:
    """``100 (1/2 + i2 - (3/5 + i1)^2)^2 + (2/5 - i1)^2`` with exact rational coefficients."""
    i1 = Polynomial.variable(0, 2)
    i2 = Polynomial.variable(1, 2)
    inner = i2 + Fraction(1, 2) - (i1 + Fraction(3, 5)) * (i1 + Fraction(3, 5))
    tail = i1 - Fraction(2, 5)
    return inner * inner * 100 + tail * tail


def nvs04() -> InstanceBundle:
    """Box ``[0, 200]^2`` with the flipped and integerised nvs04 objective.

    The pipeline objective is ``100 * (165e9 - g)`` where ``g`` is the original
    minimisation objective; ``100 * g`` has integer coefficients. The
    original optimum is ``g(1, 2) = 18/25``.
    """
    P = Polytope.box((0, 0), (200, 200))
    g = nvs04_original_objective()
    F = (Polynomial.constant(NVS04_FLIP, 2) - g).scale(NVS04_SCALE)
    if not F.is_integral:  # pragma: no cover - fixed data
        raise AssertionError("integerised objective has fractional coefficients")
    g_opt = Fraction(18, 25)
    opt = NVS04_SCALE * (NVS04_FLIP - g_opt)
    meta = {
        "original_sense": "min",
        "original_optimum": str(g_opt),
        "original_argmin": [1, 2],
        "scale": NVS04_SCALE,
        "flip_constant": NVS04_FLIP,
        "transformed_optimum_integer_scale": int(opt),
        "transformed_optimum_original_scale": str(NVS04_FLIP - g_opt),
        "reported_transformed_optimum": "164999999999.28",
    }
    return InstanceBundle(P, F, "nvs04", "MINLPLIB nvs04, flipped to maximisation and scaled by 100", int(opt), True, "max", meta)


def an1_instance(a: int, b: int, c: int) -> InstanceBundle:
    """Minimise ``(x^2 - a - b y)^2`` over ``1 <= x <= c - 1``, ``1 - a <= b y <= (c-1)^2 - a``.

    The minimum is 0 exactly when ``x^2 = a (mod b)`` for some ``0 < x < c``.
    """
    if a < 1 or b < 1 or c < 1:
        raise ValueError("a, b, c must be positive integers")
    if c <= 1:
        raise ValueError("c must exceed 1, otherwise the x-range is empty")
    P = Polytope.from_constraints(
        [
            ((1, 0), ">=", 1),
            ((1, 0), "<=", c - 1),
            ((0, b), ">=", 1 - a),
            ((0, b), "<=", (c - 1) ** 2 - a),
        ]
    )
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    inner = x * x - y.scale(b) - a
    return InstanceBundle(
        P, inner * inner, f"an1-{a}-{b}-{c}", "quadratic residue quartic", None, True, "min", {"a": a, "b": b, "c": c}
    )


def _random_objective(rng: random.Random, d: int, degree: int, nonnegative: bool) -> Polynomial:
    lo = 1 if nonnegative else -9
    terms = {}
    count = rng.randint(1, 4)
    for i in range(count):
        total = degree if i == 0 else rng.randint(0, degree)
        e = [0] * d
        for _ in range(total):
            e[rng.randrange(d)] += 1
        c = 0
        while c == 0:
            c = rng.randint(lo, 9)
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    f = Polynomial(terms, d)
    if f.is_zero():
        f = Polynomial({(0,) * d: 1}, d)
    return f


def random_instance(d: int, degree: int, radius: int, seed: int, nonnegative: bool = False) -> InstanceBundle:
    """Box ``[-R, R]^d`` cut by a few random inequalities that keep the origin interior.

    With ``nonnegative`` the box is ``[0, R]^d``, the cuts keep its centre
    interior and the objective has positive coefficients.
    """
    if d < 1 or degree < 0 or radius < 1:
        raise ValueError("need d >= 1, degree >= 0, radius >= 1")
    rng = random.Random(seed)
    lower = [0] * d if nonnegative else [-radius] * d
    cons = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        cons.append((tuple(e), ">=", lower[i]))
        cons.append((tuple(e), "<=", radius))
    for _ in range(rng.randint(0, d + 1)):
        a = [rng.randint(-5, 5) for _ in range(d)]
        if not any(a):
            a[rng.randrange(d)] = 1
        # value of the row at the box centre (doubled to stay integral)
        centre2 = sum(ai * (lower[i] + radius) for i, ai in enumerate(a))
        rhs = centre2 // 2 + rng.randint(1, max(1, radius * sum(abs(v) for v in a) // 2))
        cons.append((tuple(a), "<=", rhs))
    P = Polytope.from_constraints(cons)
    f = _random_objective(rng, d, degree, nonnegative)
    meta = {"d": d, "degree": degree, "radius": radius, "seed": seed}
    return InstanceBundle(P, f, f"random-d{d}-D{degree}-R{radius}-s{seed}", "seeded random instance", None, nonnegative, "max", meta)
