import itertools
import random
from fractions import Fraction

import pytest

from intpolyopt import _linalg as la
from intpolyopt.conedecomp import (
    SimplicialCone,
    barvinok_decompose,
    cone_index,
    count_lattice_points,
    generating_function,
    mark_half_open,
    specialize_count,
    triangulate,
)
from intpolyopt.errors import DegeneratePolytopeError
from intpolyopt.geometry import Polytope, tangent_cone
from intpolyopt.instances import example1, random_instance
from intpolyopt.oracle import brute_count


def in_cone(C, x):
    beta = la.solve(la.transpose(C.rays), tuple(Fraction(a) - b for a, b in zip(x, C.apex)))
    return all(b > 0 if j in C.open_facets else b >= 0 for j, b in enumerate(beta))


def random_cone(rng, d):
    while True:
        rays = tuple(tuple(rng.randint(-6, 6) for _ in range(d)) for _ in range(d))
        if la.det_int(rays) != 0:
            return SimplicialCone((0,) * d, rays)


def generic_for(cones, d):
    # first moment-curve point with no zero ray coordinate in any cone
    for t in itertools.count(2):
        y = tuple(t**i for i in range(d))
        if all(all(la.solve(la.transpose(C.rays), y)) for C in cones):
            return y


@pytest.mark.parametrize("seed", range(25))
def test_barvinok_pieces_are_unimodular_and_sum_pointwise(seed):
    rng = random.Random(seed)
    d = 2 + seed % 2
    C = random_cone(rng, d)
    pieces = barvinok_decompose(C)
    y = generic_for([C, *pieces], d)
    pieces = [mark_half_open(p, y) for p in pieces]
    closed = mark_half_open(C, y)
    assert all(cone_index(p) == 1 for p in pieces)
    for x in itertools.product(range(-4, 5), repeat=d):
        lhs = sum(p.sign for p in pieces if in_cone(p, x))
        assert lhs == (1 if in_cone(closed, x) else 0), x


def test_index_of_cone():
    assert cone_index(SimplicialCone((0, 0), ((1, 0), (1, 5)))) == 5
    with pytest.raises(ValueError):
        cone_index(SimplicialCone((0, 0), ((1, 2), (2, 4))))


def test_triangulate_square_pyramid_vertex():
    P = Polytope.from_constraints(
        [((1, 0, 0), ">=", 0), ((0, 1, 0), ">=", 0), ((1, 0, 1), "<=", 2), ((0, 1, 1), "<=", 2), ((0, 0, 1), ">=", 0)]
    )
    # apex (0, 0, 2) of the pyramid has four incident edges
    C = tangent_cone(P, (0, 0, 2))
    assert len(C.generators) == 4
    assert len(triangulate(C)) == 2


def test_example1_count():
    assert specialize_count(generating_function(example1().polytope)) == 2


def test_count_independent_of_direction():
    P = random_instance(2, 1, 5, 11).polytope
    G = generating_function(P)
    n = brute_count(P)
    for lam in [(1, 7), (3, -11), (13, 2)]:
        if all(la.dot(lam, r) for r in G.rays()):
            assert specialize_count(G, lam) == n


def test_count_empty_lattice_set():
    P = Polytope.from_constraints([((1,), ">=", Fraction(1, 4)), ((1,), "<=", Fraction(3, 4))])
    assert count_lattice_points(P) == 0


def test_lower_dimensional_rejected():
    P = Polytope.from_constraints([((1, 0), "<=", 1), ((1, 0), ">=", 1), ((0, 1), "<=", 2), ((0, 1), ">=", 0)])
    with pytest.raises(DegeneratePolytopeError):
        generating_function(P)


@pytest.mark.parametrize("seed", range(30))
def test_random_counts(seed):
    P = random_instance(1 + seed % 3, 1, 1 + seed % 6, seed).polytope
    assert count_lattice_points(P) == brute_count(P)


def test_direction_search_when_interior_point_lies_on_a_piece_facet():
    # sum of the generators at one vertex is (-1, 6); an untilted first coordinate hits the normal (1, 0)
    P = random_instance(2, 1, 6, 1106).polytope
    assert count_lattice_points(P) == brute_count(P)
