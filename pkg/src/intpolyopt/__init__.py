"""Exact integer polynomial optimisation over polytopes via short generating functions."""

__version__ = "0.1.0"

from .conedecomp import count_lattice_points, generating_function, specialize_count
from .errors import (
    BudgetExceededError,
    DegeneratePolytopeError,
    EmptyPolytopeError,
    InstanceParseError,
    IntPolyOptError,
    NotConvergedError,
    UnboundedPolytopeError,
)
from .genfun import PowerSumEvaluator, apply_polynomial, lift, specialize_at_one
from .geometry import Polytope, vertices
from .instances import InstanceBundle, an1_instance, example1, nvs04, random_instance
from .optimize import bounds, fptas, mixed_integer_sequence, normalize, optimize_exact, recover_point
from .polynomial import Polynomial

__all__ = [
    "Polytope",
    "Polynomial",
    "vertices",
    "generating_function",
    "count_lattice_points",
    "specialize_count",
    "lift",
    "apply_polynomial",
    "specialize_at_one",
    "PowerSumEvaluator",
    "normalize",
    "bounds",
    "optimize_exact",
    "fptas",
    "recover_point",
    "mixed_integer_sequence",
    "InstanceBundle",
    "example1",
    "nvs04",
    "an1_instance",
    "random_instance",
    "IntPolyOptError",
    "EmptyPolytopeError",
    "UnboundedPolytopeError",
    "DegeneratePolytopeError",
    "BudgetExceededError",
    "NotConvergedError",
    "InstanceParseError",
]
