from fractions import Fraction

import pytest

from intpolyopt.conedecomp import generating_function
from intpolyopt.genfun import (
    GeneralizedTerm,
    PowerSumEvaluator,
    apply_euler_operator,
    apply_polynomial,
    lift,
    specialize_at_one,
)
from intpolyopt.geometry import Polytope
from intpolyopt.instances import example1, random_instance
from intpolyopt.oracle import brute_power_sum, enumerate_points
from intpolyopt.polynomial import Polynomial, poly_pow


def test_euler_operator_one_dimensional():
    # z/(1 - z) = sum_{n >= 1} z^n;  z d/dz gives sum n z^n = z/(1-z)^2
    T = GeneralizedTerm(((Fraction(1), (1,)),), (((1,), 1),))
    out = apply_euler_operator(T, 0)
    num = {}
    for t in out:
        assert t.denominator in ((((1,), 1),), (((1,), 2),))
    # put everything over (1-z)^2: z(1-z) + z^2 = z
    total = {}
    for t in out:
        for c, a in t.numerator:
            if t.denominator == (((1,), 1),):
                total[a] = total.get(a, 0) + c
                total[(a[0] + 1,)] = total.get((a[0] + 1,), 0) - c
            else:
                total[a] = total.get(a, 0) + c
    assert {a: c for a, c in total.items() if c} == {(1,): 1}


def test_literal_route_interval():
    P = Polytope.box((-3,), (5,))
    x = Polynomial.variable(0, 1)
    S = apply_polynomial(lift(generating_function(P)), x * x * x)
    assert specialize_at_one(S) == sum(n**3 for n in range(-3, 6))


@pytest.mark.parametrize("seed", range(12))
def test_literal_and_fast_routes_match_oracle(seed):
    b = random_instance(1 + seed % 3, 1 + seed % 2, 2, 300 + seed)
    G = generating_function(b.polytope)
    ev = PowerSumEvaluator(G, b.objective)
    for k in (0, 1, 2):
        expect = brute_power_sum(b.polytope, b.objective, k)
        assert ev.power_sum(k) == expect
        if k:
            assert specialize_at_one(apply_polynomial(lift(G), poly_pow(b.objective, k))) == expect
        else:
            assert specialize_at_one(lift(G)) == expect


def test_fast_route_cache_is_order_independent():
    b = random_instance(2, 2, 3, 7)
    G = generating_function(b.polytope)
    up = PowerSumEvaluator(G, b.objective)
    down = PowerSumEvaluator(G, b.objective)
    ks = [1, 2, 3, 4, 5, 6]
    a = [up.power_sum(k) for k in ks]
    c = [down.power_sum(k) for k in reversed(ks)][::-1]
    assert a == c == [brute_power_sum(b.polytope, b.objective, k) for k in ks]


def test_weighted_sum_rational_weights():
    b = random_instance(2, 1, 3, 21)
    G = generating_function(b.polytope)
    g = Polynomial({(1, 1): Fraction(1, 3), (0, 0): Fraction(-2, 7)}, 2)
    expect = sum(g.evaluate(a) for a in enumerate_points(b.polytope))
    assert PowerSumEvaluator(G, b.objective).weighted_sum(g) == expect


def test_example1_power_sums():
    b = example1()
    ev = PowerSumEvaluator(generating_function(b.polytope), b.objective)
    assert ev.power_sum(0) == 2
    assert ev.power_sum(1) == 8001
    assert ev.power_sum(30) == 1 + 8000**30


def test_negative_power_rejected():
    b = example1()
    with pytest.raises(ValueError):
        PowerSumEvaluator(generating_function(b.polytope), b.objective).power_sum(-1)
