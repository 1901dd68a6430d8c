from fractions import Fraction

import pytest

from intpolyopt.instances import an1_instance, example1, nvs04, nvs04_original_objective, random_instance
from intpolyopt.oracle import brute_count


def test_example1_bundle():
    b = example1()
    assert b.known_optimum == 8000 and b.nonnegative


def test_nvs04_scaling():
    b = nvs04()
    g = nvs04_original_objective()
    assert g.evaluate((1, 2)) == Fraction(18, 25)
    assert b.objective.is_integral
    for x in [(0, 0), (1, 2), (200, 200), (7, 13)]:
        assert b.objective.evaluate(x) == 100 * (165 * 10**9 - g.evaluate(x))
    assert b.known_optimum == 16499999999928
    assert b.metadata["reported_transformed_optimum"] == "164999999999.28"


def test_an1_validation():
    with pytest.raises(ValueError):
        an1_instance(1, 2, 1)
    b = an1_instance(2, 7, 5)
    assert b.sense == "min"


def test_random_instances_are_reproducible_and_nonempty():
    for seed in range(20):
        a = random_instance(2, 2, 3, seed)
        b = random_instance(2, 2, 3, seed)
        assert a == b
        assert brute_count(a.polytope) > 0
        c = random_instance(2, 2, 3, seed, nonnegative=True)
        assert all(v > 0 for v in c.objective.terms.values())
