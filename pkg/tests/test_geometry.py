from fractions import Fraction

import pytest

from intpolyopt.errors import EmptyPolytopeError, UnboundedPolytopeError
from intpolyopt.geometry import (
    Polytope,
    bounding_box,
    contains,
    is_full_dimensional,
    lattice_box,
    semi_dilate,
    tangent_cone,
    vertices,
)
from intpolyopt.instances import example1


def test_square_vertices():
    P = Polytope.box((0, 0), (2, 3))
    assert sorted(vertices(P)) == [(0, 0), (0, 3), (2, 0), (2, 3)]
    assert is_full_dimensional(P)


def test_rational_vertices_and_boxes():
    P = Polytope.from_constraints([((2, 0), "<=", 5), ((-2, 0), "<=", 1), ((0, 1), "<=", 1), ((0, -1), "<=", 0)])
    vs = sorted(vertices(P))
    assert vs[0] == (Fraction(-1, 2), 0)
    assert bounding_box(P).lower == (-1, 0) and bounding_box(P).upper == (3, 1)
    assert lattice_box(P).lower == (0, 0) and lattice_box(P).upper == (2, 1)


def test_rows_are_integerised():
    P = Polytope.from_constraints([((Fraction(1, 2), Fraction(1, 3)), "<=", Fraction(5, 6))])
    assert P.A == ((3, 2),) and P.b == (5,)


def test_example1_vertices():
    P = example1().polytope
    assert len(vertices(P)) == 4
    assert contains(P, (1, 1)) and contains(P, (2, 1000))
    assert not contains(P, (2, 999))


def test_tangent_cone_generators_point_inward():
    P = Polytope.box((0, 0), (1, 1))
    C = tangent_cone(P, (0, 0))
    assert sorted(C.generators) == [(0, 1), (1, 0)]


def test_empty_polytope():
    P = Polytope.from_constraints([((1,), "<=", 0), ((1,), ">=", 1)])
    assert vertices(P) == []
    assert lattice_box(P) is None
    with pytest.raises(EmptyPolytopeError):
        bounding_box(P)


def test_unbounded_polytope_rejected():
    P = Polytope.from_constraints([((1, 0), ">=", 0), ((0, 1), ">=", 0)])
    with pytest.raises(UnboundedPolytopeError):
        vertices(P)


def test_lower_dimensional_detected():
    P = Polytope.from_constraints([((1, 0), "<=", 1), ((1, 0), ">=", 1), ((0, 1), "<=", 2), ((0, 1), ">=", 0)])
    assert not is_full_dimensional(P)


def test_semi_dilate():
    P = Polytope.box((0, 0), (1, 1))
    G = semi_dilate(P, 4, [1])
    assert lattice_box(G).upper == (1, 4)


def test_zero_row_rejected():
    with pytest.raises(ValueError):
        Polytope(((0, 0),), (1,))


def test_triangle_tangent_cone():
    P = Polytope.from_constraints([((1, 0), ">=", 0), ((0, 1), ">=", 0), ((1, 1), "<=", 2)])
    assert sorted(tangent_cone(P, (2, 0)).generators) == [(-1, 0), (-1, 1)]


def test_example1_vertex_from_tight_rows():
    vs = vertices(example1().polytope)
    assert (Fraction(1, 2), Fraction(3996 * Fraction(1, 2) - 3993, 4)) in vs
