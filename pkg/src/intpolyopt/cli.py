"""Command line front end: ``intpolyopt <command> [options]``.

Exit codes: 0 success, 1 internal error, 2 parse or usage error, 3 empty
feasible set, 4 unbounded or lower-dimensional polytope, 5 enumeration budget
exceeded, 6 bounds did not converge within ``--k-max``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .conedecomp import count_lattice_points
from .errors import IntPolyOptError, NotConvergedError
from .exactnum import iroot
from .instancefile import dump_instance, format_number, instance_digest, load_instance
from .instances import an1_instance, example1, nvs04, random_instance
from .optimize import PowerSums, bounds, fptas, mixed_integer_sequence, normalize, optimize_exact
from .oracle import EnumerationBudget, brute_max, brute_min, enumerate_points

__all__ = ["main", "build_parser", "render_root"]


def render_root(q, k: int, digits: int) -> str:
    """``q**(1/k)`` rounded half-up to ``digits`` decimals, computed exactly."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    scale = 2 * 10**digits
    y = q * scale**k
    m = iroot(y.numerator // y.denominator, k)  # floor(2 * 10^digits * q^(1/k))
    n = (m + 1) // 2
    s = str(n).rjust(digits + 1, "0")
    return s if digits == 0 else f"{s[:-digits]}.{s[-digits:]}"


def render_rational(x, digits: int) -> str:
    x = Fraction(x)
    if x < 0:
        return "-" + render_root(-x, 1, digits)
    return render_root(x, 1, digits)


def _interval(iv, digits):
    return {
        "lower": format_number(iv.lower),
        "upper": format_number(iv.upper),
        "radicand": format_number(iv.radicand),
        "k": iv.k,
        "decimal": render_root(iv.radicand, iv.k, digits),
    }


def _row(rep, digits):
    return {
        "k": rep.k,
        "N": rep.count,
        "S_k": str(rep.power_sum),
        "L_k": _interval(rep.lower, digits),
        "U_k": _interval(rep.upper, digits),
        "floorU": rep.floor_upper,
        "ceilL": rep.ceil_lower,
        "converged": rep.converged,
    }


def _parse_ks(text: str) -> list[int]:
    ks = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            ks.extend(range(int(a), int(b) + 1))
        else:
            ks.append(int(part))
    if not ks or any(k < 1 for k in ks):
        raise ValueError
    return ks


def _k_list(text):
    try:
        return _parse_ks(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected k >= 1 as 'K', 'A-B' or a comma list") from None


def _epsilon(text):
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}") from None
    if not 0 < eps <= 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1]")
    return eps


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _oriented(bundle):
    """Objective in maximisation form, and whether it is known to be non-negative."""
    if bundle.sense == "min":
        return -bundle.objective, False
    return bundle.objective, bundle.nonnegative


def _header(args, bundle):
    return {
        "command": args.command,
        "instance": {"name": bundle.name, "digest": instance_digest(bundle), "dimension": bundle.dim},
        "sense": bundle.sense,
        "solved_as": "max",
    }


def cmd_count(args, bundle):
    n = count_lattice_points(bundle.polytope)
    return {"result": {"count": n}, "status": "ok"}, f"{n}"


def cmd_bounds(args, bundle):
    f, nonneg = _oriented(bundle)
    fbar, info = normalize(bundle.polytope, f, nonneg or args.assume_nonnegative)
    sums = PowerSums(bundle.polytope, fbar)
    precision = Fraction(1, 10 ** (args.precision_digits + 2))
    rows = [bounds(bundle.polytope, fbar, k, precision, sums) for k in args.k]
    doc = {
        "shift": _shift(info),
        "rows": [_row(r, args.precision_digits) for r in rows],
        "status": "ok",
    }
    lines = [_table(rows, args.precision_digits)]
    if info.shifted:
        lines.append(f"objective shifted by {-info.L}; bounds refer to the shifted objective")
    return doc, "\n".join(lines)


def _shift(info):
    return {"shifted": info.shifted, "L": str(info.L), "U": str(info.U), "M": info.M, "C": format_number(info.C), "r": info.r, "D": info.D}


def _table(rows, digits):
    head = ["k", "N", "L_k", "U_k", "ceil L_k", "floor U_k", "converged"]
    body = [
        [
            str(r.k),
            str(r.count),
            render_root(r.lower.radicand, r.k, digits),
            render_root(r.upper.radicand, r.k, digits),
            str(r.ceil_lower),
            str(r.floor_upper),
            "yes" if r.converged else "no",
        ]
        for r in rows
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(head)]
    out = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
    out += ["  ".join(c.rjust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(out)


def cmd_optimize(args, bundle):
    f, nonneg = _oriented(bundle)
    res = optimize_exact(bundle.polytope, f, nonneg or args.assume_nonnegative, args.k_max, not args.no_certificate)
    sign = -1 if bundle.sense == "min" else 1
    doc = {
        "shift": _shift(res.shift),
        "rows": [_row(r, args.precision_digits) for r in res.trace],
        "status": res.status,
    }
    if res.status != "optimal":
        lo, hi = res.bracket
        doc["result"] = {"bracket": [str(lo), str(hi)] if sign > 0 else [str(-hi), str(-lo)]}
        raise _Unconverged(doc, _table(res.trace, args.precision_digits), lo, hi, args.k_max)
    value = res.value * sign
    doc["result"] = {
        "optimum": str(value),
        "k": res.trace[-1].k,
        "stopped_by": res.stopped_by,
        "point": list(res.point) if res.point is not None else None,
    }
    text = f"optimum {value} (k = {res.trace[-1].k}, {res.stopped_by})"
    if res.point is not None:
        text += f" at {tuple(res.point)}"
    return doc, text


class _Unconverged(NotConvergedError):
    def __init__(self, doc, text, lo, hi, k_max):
        super().__init__(f"bounds did not meet within k = {k_max}; optimum of the solved problem lies in [{lo}, {hi}]")
        self.document = doc
        self.text = text


def cmd_fptas(args, bundle):
    f, nonneg = _oriented(bundle)
    info = None
    if args.shift:
        f, info = normalize(bundle.polytope, f, nonneg)
    elif bundle.sense == "min":
        raise IntPolyOptError("minimisation instances need --shift for the approximation scheme")
    res = fptas(bundle.polytope, f, args.epsilon, recover=args.recover_point, precision=Fraction(1, 10 ** (args.precision_digits + 2)))
    d = args.precision_digits
    result = {
        "epsilon": format_number(res.epsilon),
        "k_used": res.k_used,
        "N": res.count,
        "L_k": _interval(res.lower_bound, d),
        "U_k": _interval(res.upper_bound, d),
        "guarantee": format_number(res.guarantee),
        "guarantee_decimal": render_rational(res.guarantee, d),
    }
    lines = [
        f"k = {res.k_used}, N = {res.count}",
        f"L_k = {render_root(res.lower_bound.radicand, res.k_used, d)} (>= (1 - eps) * optimum)",
        f"guarantee (1 - eps) * floor(U_k) = {render_rational(res.guarantee, d)}",
    ]
    if args.recover_point:
        result["point"] = list(res.certified_point)
        result["value"] = str(res.certified_value)
        result["certified"] = res.certified
        lines.append(f"point {tuple(res.certified_point)} value {res.certified_value}")
    doc = {"shift": _shift(info) if info else None, "result": result, "status": "ok"}
    if info is not None and info.shifted:
        lines.append(f"objective shifted by {-info.L}; values refer to the shifted objective")
    return doc, "\n".join(lines)


def cmd_oracle(args, bundle):
    budget = EnumerationBudget(args.budget)
    pts = enumerate_points(bundle.polytope, budget)
    result = {"count": len(pts)}
    lines = [f"count {len(pts)}"]
    if pts:
        vmax, amax = brute_max(bundle.polytope, bundle.objective, budget)
        vmin, amin = brute_min(bundle.polytope, bundle.objective, budget)
        result.update(max=str(vmax), argmax=list(amax), min=str(vmin), argmin=list(amin))
        lines.append(f"max {vmax} at {amax}")
        lines.append(f"min {vmin} at {amin}")
    if args.list_points:
        result["points"] = [list(p) for p in pts]
    return {"result": result, "status": "ok"}, "\n".join(lines)


def cmd_mixed(args, bundle):
    f, nonneg = _oriented(bundle)
    ints = [] if not args.integer_vars else [int(v) for v in args.integer_vars.split(",")]
    seq = mixed_integer_sequence(bundle.polytope, f, ints, args.grid, args.epsilon, nonneg or args.assume_nonnegative)
    sign = -1 if bundle.sense == "min" else 1
    d = args.precision_digits
    entries = [
        {
            "n": e.n,
            "value": format_number(sign * e.value),
            "decimal": render_rational(sign * e.value, d),
            "point": [format_number(v) for v in e.point] if e.point is not None else None,
        }
        for e in seq
    ]
    text = "\n".join(f"n = {e['n']}: {e['value']} ({e['decimal']})" for e in entries)
    return {"result": {"sequence": entries}, "status": "ok"}, text


def cmd_generate(args):
    if args.builder == "example1":
        b = example1()
    elif args.builder == "nvs04":
        b = nvs04()
    elif args.builder == "an1":
        b = an1_instance(args.a, args.b, args.c)
    else:
        b = random_instance(args.d, args.degree, args.radius, args.seed, args.nonnegative)
    return dump_instance(b)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intpolyopt", description="Exact integer polynomial optimisation over polytopes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="instance file (JSON)")
        sp.add_argument("--json", action="store_true", help="emit the machine-readable result document")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time in the result document")
        sp.add_argument("--precision-digits", type=_nonneg_int, default=6, help="decimal digits in renderings")
        return sp

    instance_cmd("count", "number of lattice points")
    sp = instance_cmd("bounds", "power-sum bounds L_k and U_k")
    sp.add_argument("--k", type=_k_list, default=[1], help="K, A-B or comma list (default 1)")
    sp.add_argument("--assume-nonnegative", action="store_true", help="skip the shift even if not flagged in the file")
    sp = instance_cmd("optimize", "exact optimum by raising k")
    sp.add_argument("--k-max", type=_positive, default=200)
    sp.add_argument("--no-certificate", action="store_true", help="stop only when ceil L_k = floor U_k")
    sp.add_argument("--assume-nonnegative", action="store_true")
    sp = instance_cmd("fptas", "(1 - eps)-approximation")
    sp.add_argument("--epsilon", type=_epsilon, required=True, help="exact value in (0, 1], e.g. 1/10 or 0.1")
    sp.add_argument("--recover-point", action="store_true", help="find a point by bisection")
    sp.add_argument("--shift", action="store_true", help="shift the objective to be non-negative first")
    sp = instance_cmd("oracle", "brute-force enumeration")
    sp.add_argument("--budget", type=_positive, default=10**7, help="maximum number of box points to scan")
    sp.add_argument("--list-points", action="store_true")
    sp = instance_cmd("mixed", "optimum over refining grids for continuous variables")
    sp.add_argument("--integer-vars", default="", help="comma-separated indices of integer variables")
    sp.add_argument("--grid", type=lambda s: _parse_ks(s), default=[1, 2, 4, 8])
    sp.add_argument("--epsilon", type=_epsilon, default=None)
    sp.add_argument("--assume-nonnegative", action="store_true")

    g = sub.add_parser("generate", help="write an instance file to stdout")
    gs = g.add_subparsers(dest="builder", required=True)
    gs.add_parser("example1")
    gs.add_parser("nvs04")
    a = gs.add_parser("an1")
    a.add_argument("--a", type=_positive, required=True)
    a.add_argument("--b", type=_positive, required=True)
    a.add_argument("--c", type=_positive, required=True)
    r = gs.add_parser("random")
    r.add_argument("--d", type=_positive, default=2)
    r.add_argument("--degree", type=_nonneg_int, default=2)
    r.add_argument("--radius", type=_positive, default=5)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--nonnegative", action="store_true")
    return p


_COMMANDS = {
    "count": cmd_count,
    "bounds": cmd_bounds,
    "optimize": cmd_optimize,
    "fptas": cmd_fptas,
    "oracle": cmd_oracle,
    "mixed": cmd_mixed,
}


def _emit(args, bundle, doc, text, started):
    if args.json:
        full = _header(args, bundle)
        full.update(doc)
        if args.timing:
            full["timing_seconds"] = round(time.perf_counter() - started, 6)
        sys.stdout.write(json.dumps(full, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            sys.stdout.write(cmd_generate(args))
            return 0
        started = time.perf_counter()
        bundle = load_instance(args.file)
        try:
            doc, text = _COMMANDS[args.command](args, bundle)
        except _Unconverged as exc:
            _emit(args, bundle, exc.document, exc.text, started)
            raise
        _emit(args, bundle, doc, text, started)
        return 0
    except IntPolyOptError as exc:
        print(f"intpolyopt: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"intpolyopt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
