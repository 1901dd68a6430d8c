"""Hypothesis checks of the algebraic and geometric invariants."""

import itertools
import json
from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from intpolyopt import _linalg as la
from intpolyopt.cli import main, render_root
from intpolyopt.conedecomp import generating_function, specialize_count
from intpolyopt.exactnum import TruncatedSeries, integer_kth_root_floor, series_inv_one_minus_exp
from intpolyopt.genfun import apply_polynomial, lift, specialize_at_one
from intpolyopt.geometry import Polytope, bounding_box, contains, lattice_box, semi_dilate, tangent_cone, tight_rows, vertices
from intpolyopt.instancefile import parse_instance
from intpolyopt.instances import an1_instance, random_instance
from intpolyopt.optimize import bounds, normalize, optimize_exact
from intpolyopt.oracle import brute_max, brute_min, brute_power_sum, enumerate_points
from intpolyopt.polynomial import Polynomial

slow = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
instances = st.builds(random_instance, st.integers(1, 3), st.integers(0, 2), st.integers(1, 3), st.integers(0, 10**6))
rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)


@given(rationals, rationals)
def test_rational_exactness(a, b):
    assert (a + b) - b == a
    if a:
        assert a * (1 / a) == 1


@given(rationals.filter(bool), st.integers(0, 8))
def test_inverse_series(c, T):
    inv = series_inv_one_minus_exp(c, 1, T)
    from math import factorial

    base = TruncatedSeries(1, tuple(-c**j / factorial(j) for j in range(1, T + 4)), T + 2)
    prod = inv * base
    assert [prod.coefficient(n) for n in range(T + 1)] == [1] + [0] * T


@given(st.integers(1, 10**12), st.integers(1, 40))
def test_root_floor_of_powers(n, k):
    assert integer_kth_root_floor(n**k, k) == n
    assert integer_kth_root_floor(n**k - 1, k) == n - 1


@slow
@given(instances)
def test_vertices_and_cones(b):
    P = b.polytope
    for v in vertices(P):
        assert contains(P, v)
        rows = [P.A[i] for i in tight_rows(P, v)]
        assert la.rank(rows) == P.dim
        C = tangent_cone(P, v)
        for g in C.generators:
            assert all(la.dot(r, g) <= 0 for r in rows)
    box = bounding_box(P)
    for a in enumerate_points(P):
        assert all(l <= x <= u for l, x, u in zip(box.lower, a, box.upper))


@slow
@given(instances)
def test_enumeration_closed_under_membership(b):
    P = b.polytope
    box = lattice_box(P)
    pts = set(enumerate_points(P))
    for x in itertools.product(*(range(l, u + 1) for l, u in zip(box.lower, box.upper))):
        assert (x in pts) == contains(P, x)


@slow
@given(instances)
def test_semi_dilate_identity(b):
    P = b.polytope
    assert sorted(vertices(semi_dilate(P, 1, range(P.dim)))) == sorted(vertices(P))


@given(st.integers(1, 3), st.integers(1, 5))
@settings(deadline=None)
def test_ehrhart_of_cube(d, n):
    P = Polytope.box((0,) * d, (n,) * d)
    assert specialize_count(generating_function(P)) == (n + 1) ** d


@slow
@given(instances)
def test_count_direction_independent(b):
    G = generating_function(b.polytope)
    n = len(enumerate_points(b.polytope))
    seen = 0
    for t in itertools.count(2):
        lam = tuple((t * 7 + 1) ** i * (-1) ** (i * t) for i in range(G.dim))
        if all(la.dot(lam, r) for r in G.rays()):
            assert specialize_count(G, lam) == n
            seen += 1
        if seen == 3:
            break


@slow
@given(instances, st.integers(0, 10**6))
def test_operator_linearity_and_directions(b, seed):
    g = random_instance(b.dim, 1, 1, seed).objective
    S = lift(generating_function(b.polytope))
    f = b.objective
    both = specialize_at_one(apply_polynomial(S, f + g))
    assert both == specialize_at_one(apply_polynomial(S, f)) + specialize_at_one(apply_polynomial(S, g))
    assert both == sum((f + g).evaluate(a) for a in enumerate_points(b.polytope))
    assert both.denominator == 1
    T = apply_polynomial(S, f)
    ref = specialize_at_one(T)
    seen = 0
    for t in itertools.count(3):
        lam = tuple(t**i + i for i in range(b.dim))
        if all(la.dot(lam, v) for v in T.rays()):
            assert specialize_at_one(T, lam) == ref
            seen += 1
        if seen == 3:
            break


@slow
@given(instances)
def test_bound_laws(b):
    P = b.polytope
    fbar, info = normalize(P, b.objective)
    best = brute_max(P, fbar)[0]
    prev = None
    for k in range(1, 6):
        rep = bounds(P, fbar, k)
        assert rep.lower.radicand * rep.count == rep.power_sum
        assert rep.ceil_lower <= best <= rep.floor_upper
        assert rep.lower.lower <= rep.upper.upper
        if prev is not None:
            N = rep.count
            assert (Fraction(rep.power_sum, N)) ** (k - 1) >= Fraction(prev.power_sum, N) ** k
            assert rep.power_sum ** (k - 1) <= prev.power_sum**k
        prev = rep
    for a in enumerate_points(P):
        assert info.L <= b.objective.evaluate(a) <= info.U


@slow
@given(instances)
def test_shift_equivariance(b):
    fbar, info = normalize(b.polytope, b.objective)
    direct = optimize_exact(b.polytope, b.objective).value
    shifted = optimize_exact(b.polytope, fbar, known_nonnegative=True).value
    assert direct == shifted - info.offset == brute_max(b.polytope, b.objective)[0]


@given(st.integers(1, 12), st.integers(1, 12), st.integers(2, 12))
@settings(deadline=None)
def test_an1_residue(a, b, c):
    B = an1_instance(a, b, c)
    residue = any((x * x - a) % b == 0 for x in range(1, c))
    best = brute_min(B.polytope, B.objective)
    # an empty lattice set (y range holds no integer) means no residue either
    assert (best is not None and best[0] == 0) == residue


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4), st.integers(1, 6), st.integers(0, 8))
def test_rendering_within_one_ulp(q, k, digits):
    r = Fraction(render_root(q, k, digits))
    ulp = Fraction(1, 10**digits)
    assert max(r - ulp, 0) ** k <= q <= (r + ulp) ** k


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 6), st.integers(0, 10**6), st.booleans())
def test_generate_round_trip(d, degree, radius, seed, nonneg):
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        argv = ["generate", "random", "--d", str(d), "--degree", str(degree), "--radius", str(radius), "--seed", str(seed)]
        assert main(argv + (["--nonnegative"] if nonneg else [])) == 0
    assert parse_instance(buf.getvalue()) == random_instance(d, degree, radius, seed, nonneg)
    json.loads(buf.getvalue())
