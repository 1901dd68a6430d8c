"""Instance files: JSON with exact numbers.

Numbers are JSON integers or strings ``"p/q"`` (also ``"-7"``); JSON floats
are rejected so nothing passes through binary floating point. Layout::

    {
      "dimension": 2,
      "constraints": [{"coefficients": [3996, -4], "relation": ">=", "rhs": 3991}, ...],
      "objective": [{"coefficient": 1, "exponents": [3, 1]}],
      "metadata": {"name": "example1", "sense": "max", "nonnegative": true}
    }
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction

from .errors import InstanceParseError
from .geometry import Polytope
from .instances import InstanceBundle
from .polynomial import Polynomial

__all__ = ["parse_instance", "load_instance", "dump_instance", "instance_digest", "format_number"]

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")
_RESERVED_META = {"name", "provenance", "known_optimum", "nonnegative", "sense"}


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def format_number(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _number(value, where: str, path) -> Fraction:
    if isinstance(value, bool):
        raise InstanceParseError(f"{where}: expected a number, got a boolean", path=path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise InstanceParseError(f"{where}: zero denominator in {value!r}", path=path)
        return Fraction(int(num), int(den) if den else 1)
    raise InstanceParseError(f"{where}: expected an integer or a 'p/q' string, got {value!r}", path=path)


def _integer(value, where: str, path, minimum=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceParseError(f"{where}: expected an integer, got {value!r}", path=path)
    if minimum is not None and value < minimum:
        raise InstanceParseError(f"{where}: must be at least {minimum}", path=path)
    return value


def parse_instance(text: str, path: str | None = None) -> InstanceBundle:
    floats: list[str] = []

    def reject_float(token):
        floats.append(token)
        return None

    try:
        doc = json.loads(text, parse_float=reject_float, parse_constant=reject_float)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(exc.msg, exc.lineno, exc.colno, path) from None
    if floats:
        m = re.search(r"(?<![\w\".])" + re.escape(floats[0]) + r"(?![\w.])", text)
        line, col = _line_col(text, m.start()) if m else (None, None)
        raise InstanceParseError(
            f"floating-point literal {floats[0]} is not allowed; write it as a 'p/q' string", line, col, path
        )
    if not isinstance(doc, dict):
        raise InstanceParseError("top level must be an object", 1, 1, path)
    for key in ("dimension", "constraints", "objective"):
        if key not in doc:
            raise InstanceParseError(f"missing required key {key!r}", path=path)
    d = _integer(doc["dimension"], "dimension", path, minimum=1)

    cons = doc["constraints"]
    if not isinstance(cons, list) or not cons:
        raise InstanceParseError("constraints: expected a non-empty list", path=path)
    rows = []
    for i, c in enumerate(cons):
        where = f"constraints[{i}]"
        if not isinstance(c, dict):
            raise InstanceParseError(f"{where}: expected an object", path=path)
        for key in ("coefficients", "relation", "rhs"):
            if key not in c:
                raise InstanceParseError(f"{where}: missing key {key!r}", path=path)
        coeffs = c["coefficients"]
        if not isinstance(coeffs, list) or len(coeffs) != d:
            raise InstanceParseError(f"{where}.coefficients: expected a list of length {d}", path=path)
        coeffs = [_number(v, f"{where}.coefficients[{j}]", path) for j, v in enumerate(coeffs)]
        if not any(coeffs):
            raise InstanceParseError(f"{where}.coefficients: all zero", path=path)
        rel = c["relation"]
        if rel not in ("<=", ">="):
            raise InstanceParseError(f"{where}.relation: expected '<=' or '>=', got {rel!r}", path=path)
        rows.append((coeffs, rel, _number(c["rhs"], f"{where}.rhs", path)))

    obj = doc["objective"]
    if not isinstance(obj, list):
        raise InstanceParseError("objective: expected a list of monomials", path=path)
    terms: dict[tuple, Fraction] = {}
    for i, m in enumerate(obj):
        where = f"objective[{i}]"
        if not isinstance(m, dict) or "coefficient" not in m or "exponents" not in m:
            raise InstanceParseError(f"{where}: expected an object with 'coefficient' and 'exponents'", path=path)
        exps = m["exponents"]
        if not isinstance(exps, list) or len(exps) != d:
            raise InstanceParseError(f"{where}.exponents: expected a list of length {d}", path=path)
        e = tuple(_integer(v, f"{where}.exponents[{j}]", path, minimum=0) for j, v in enumerate(exps))
        terms[e] = terms.get(e, 0) + _number(m["coefficient"], f"{where}.coefficient", path)
    f = Polynomial(terms, d)

    meta = doc.get("metadata", {}) or {}
    if not isinstance(meta, dict):
        raise InstanceParseError("metadata: expected an object", path=path)
    sense = meta.get("sense", "max")
    if sense not in ("max", "min"):
        raise InstanceParseError(f"metadata.sense: expected 'max' or 'min', got {sense!r}", path=path)
    nonneg = meta.get("nonnegative", False)
    if not isinstance(nonneg, bool):
        raise InstanceParseError("metadata.nonnegative: expected true or false", path=path)
    known = meta.get("known_optimum")
    if known is not None:
        known = _integer(known, "metadata.known_optimum", path)
    extra = {k: v for k, v in meta.items() if k not in _RESERVED_META}
    try:
        P = Polytope.from_constraints(rows)
    except ValueError as exc:
        raise InstanceParseError(f"constraints: {exc}", path=path) from None
    return InstanceBundle(
        P, f, str(meta.get("name", "")), str(meta.get("provenance", "")), known, nonneg, sense, extra
    )


def load_instance(path: str) -> InstanceBundle:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceParseError(f"cannot read instance file: {exc.strerror}", path=path) from None
    return parse_instance(text, path)


def _document(bundle: InstanceBundle) -> dict:
    P, f = bundle.polytope, bundle.objective
    # free-form entries never shadow the reserved keys
    meta = {k: v for k, v in bundle.metadata.items() if k not in _RESERVED_META}
    meta.update(name=bundle.name, sense=bundle.sense, nonnegative=bundle.nonnegative)
    if bundle.provenance:
        meta["provenance"] = bundle.provenance
    if bundle.known_optimum is not None:
        meta["known_optimum"] = bundle.known_optimum
    return {
        "dimension": P.dim,
        "constraints": [
            {"coefficients": [format_number(v) for v in row], "relation": "<=", "rhs": format_number(r)}
            for row, r in zip(P.A, P.b)
        ],
        "objective": [{"coefficient": format_number(c), "exponents": list(e)} for e, c in f.items()],
        "metadata": meta,
    }


def dump_instance(bundle: InstanceBundle) -> str:
    return json.dumps(_document(bundle), indent=2) + "\n"


def instance_digest(bundle: InstanceBundle) -> str:
    canonical = json.dumps(_document(bundle), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()
