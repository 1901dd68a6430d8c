"""Brute-force ground truth by scanning the lattice box."""

from __future__ import annotations

from dataclasses import dataclass

from . import _accel
from .errors import BudgetExceededError
from .geometry import Polytope, lattice_box
from .polynomial import Polynomial

__all__ = ["EnumerationBudget", "enumerate_points", "enumerate", "brute_count", "brute_power_sum", "brute_max", "brute_min"]

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class EnumerationBudget:
    max_points: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_points < 1:
            raise ValueError("budget must be positive")


def enumerate_points(P: Polytope, budget: EnumerationBudget | None = None) -> list[tuple[int, ...]]:
    """All lattice points of ``P`` in lexicographic order."""
    budget = budget or EnumerationBudget()
    box = lattice_box(P)
    if box is None:
        return []
    volume = box.volume()
    if volume > budget.max_points:
        raise BudgetExceededError(f"lattice box holds {volume} points, budget is {budget.max_points}")
    return _accel.scan_members(P.A, P.b, box.lower, box.upper)


enumerate = enumerate_points  # noqa: A001 - name used by callers and the CLI


def brute_count(P: Polytope, budget: EnumerationBudget | None = None) -> int:
    return len(enumerate_points(P, budget))


def brute_power_sum(P: Polytope, f: Polynomial, k: int, budget: EnumerationBudget | None = None):
    return sum(f.evaluate(a) ** k for a in enumerate_points(P, budget))


def brute_max(P: Polytope, f: Polynomial, budget: EnumerationBudget | None = None):
    """``(max value, lexicographically least maximiser)``, or ``None`` with no lattice points."""
    best = None
    for a in enumerate_points(P, budget):
        v = f.evaluate(a)
        if best is None or v > best[0]:
            best = (v, a)
    return best


def brute_min(P: Polytope, f: Polynomial, budget: EnumerationBudget | None = None):
    best = None
    for a in enumerate_points(P, budget):
        v = f.evaluate(a)
        if best is None or v < best[0]:
            best = (v, a)
    return best
