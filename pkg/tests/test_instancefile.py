import json

import pytest

from intpolyopt.errors import InstanceParseError
from intpolyopt.instancefile import dump_instance, instance_digest, load_instance, parse_instance
from intpolyopt.instances import an1_instance, example1, nvs04, random_instance


@pytest.mark.parametrize("bundle", [example1(), nvs04(), an1_instance(3, 7, 6), random_instance(3, 2, 4, 1)])
def test_round_trip(bundle):
    again = parse_instance(dump_instance(bundle))
    assert again.polytope == bundle.polytope
    assert again.objective == bundle.objective
    assert (again.sense, again.nonnegative, again.known_optimum) == (bundle.sense, bundle.nonnegative, bundle.known_optimum)
    assert instance_digest(again) == instance_digest(bundle)


def test_float_literal_located():
    text = '{"dimension": 1,\n "constraints": [{"coefficients": [1], "relation": "<=", "rhs": 2.5}],\n "objective": []}'
    with pytest.raises(InstanceParseError) as info:
        parse_instance(text, "x.json")
    err = info.value
    second = text.splitlines()[1]
    assert (err.line, err.column) == (2, second.index("2.5") + 1)
    assert "2.5" in str(err)
    assert err.exit_code == 2


def test_syntax_error_located():
    with pytest.raises(InstanceParseError) as info:
        parse_instance('{"dimension": 1,\n  "constraints": [}')
    assert info.value.line == 2


@pytest.mark.parametrize(
    "patch, needle",
    [
        ({"dimension": 0}, "dimension"),
        ({"constraints": []}, "constraints"),
        ({"constraints": [{"coefficients": [0], "relation": "<=", "rhs": 1}]}, "all zero"),
        ({"constraints": [{"coefficients": [1], "relation": "<", "rhs": 1}]}, "relation"),
        ({"constraints": [{"coefficients": [1], "relation": "<=", "rhs": "1/0"}]}, "zero denominator"),
        ({"objective": [{"coefficient": 1, "exponents": [-1]}]}, "at least 0"),
        ({"objective": [{"coefficient": True, "exponents": [1]}]}, "boolean"),
        ({"metadata": {"sense": "maximise"}}, "sense"),
    ],
)
def test_semantic_errors(patch, needle):
    doc = {
        "dimension": 1,
        "constraints": [{"coefficients": [1], "relation": "<=", "rhs": 3}, {"coefficients": [1], "relation": ">=", "rhs": 0}],
        "objective": [{"coefficient": 1, "exponents": [1]}],
    }
    doc.update(patch)
    with pytest.raises(InstanceParseError, match=needle):
        parse_instance(json.dumps(doc))


def test_rational_strings_accepted():
    doc = {
        "dimension": 1,
        "constraints": [{"coefficients": ["1/2"], "relation": "<=", "rhs": "-7/3"}, {"coefficients": [1], "relation": ">=", "rhs": -9}],
        "objective": [{"coefficient": "3/4", "exponents": [2]}],
    }
    b = parse_instance(json.dumps(doc))
    assert b.polytope.A[0] == (3,) and b.polytope.b[0] == -14


def test_missing_file(tmp_path):
    with pytest.raises(InstanceParseError):
        load_instance(str(tmp_path / "nope.json"))
