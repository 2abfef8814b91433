"""Command-line entry point.

    desing --mode binomial --in ideal.txt --format json --out tree.json
    desing --mode toric --in fan.txt --format text
    desing --mode curve --embedded --in curve.txt --format dot
    desing --mode coeff-check --main-var z --in poly.txt
    desing verify tree.json

Exit codes: 0 success, 1 other errors, 2 parse/usage errors, 3 budget
exceeded (partial result still written), 4 invariant violation or failed
verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .algebra import FieldSpec, PolyRing, parse_polynomial, split_generators
from .binomial import DEFAULT_MAX_STEPS, resolve_binomial
from .blowup import check_order_equivalence, coefficient_ideal
from .curves import resolve_plane_curve
from .errors import BudgetExceeded, DesingError, InvariantViolation, ParseError, PreconditionError
from .lattice import cone_multiplicity, format_fan, parse_fan
from .toric import resolve_fan
from .tree import ChartTree, collect_divisors, export_tree, load_tree
from .verify import verify_tree

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="desing", description="Resolve binomial ideals, toric fans and plane curves by blow-ups.")
    p.add_argument("--mode", choices=("binomial", "toric", "curve", "coeff-check"), default="binomial")
    p.add_argument("--char", type=int, default=0, help="0 for Q or a prime p for F_p")
    p.add_argument("--in", dest="input", default="-", help="input file ('-' = stdin)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("dot", "json", "text"), default="json")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                   help=f"blow-up / subdivision budget (default {DEFAULT_MAX_STEPS})")
    p.add_argument("--transform", choices=("strict", "weak"), default="strict")
    p.add_argument("--embedded", action="store_true", help="curve mode: also reach normal crossings")
    p.add_argument("--vars", default=None, help="comma-separated ring variables (default: those in the input)")
    p.add_argument("--main-var", default=None, help="coeff-check mode: the variable z")
    return p


def build_verify_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="desing verify", description="Re-check a stored JSON chart tree.")
    p.add_argument("tree", help="JSON tree written by --format json")
    p.add_argument("--points", type=int, default=20, help="random points per chart")
    p.add_argument("--seed", type=int, default=0)
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _ring(texts: Sequence[str], args, minimum: int) -> PolyRing:
    field = FieldSpec(args.char)
    if args.vars:
        names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        return PolyRing(names, field)
    return PolyRing.from_text(*texts, field=field, minimum=minimum)


def _check_flags(args) -> None:
    if args.max_steps < 1:
        raise _UsageError("--max-steps must be positive")
    if args.embedded and args.mode != "curve":
        raise _UsageError("--embedded only applies to --mode curve")
    if args.main_var and args.mode != "coeff-check":
        raise _UsageError("--main-var only applies to --mode coeff-check")
    if args.transform != "strict" and args.mode not in ("binomial", "curve"):
        raise _UsageError("--transform only applies to binomial and curve modes")
    if args.mode == "toric" and (args.char or args.vars):
        raise _UsageError("--char and --vars do not apply to --mode toric")
    if args.mode == "toric" and args.format == "dot":
        raise _UsageError("toric mode writes json or text")


def _tree_summary(tree: ChartTree, elapsed: float) -> str:
    return (
        f"{tree.mode}: charts={len(tree)} final={len(tree.finals())} "
        f"blowups={tree.blowup_count()} elapsed={elapsed:.3f}s"
    )


def _run_tree(args, text: str) -> tuple[ChartTree, str]:
    gens = split_generators(text)
    if not gens:
        raise ParseError("no polynomial in input", 0)
    if args.mode == "binomial":
        ring = _ring(gens, args, 1)
        ideal = [parse_polynomial(g, ring) for g in gens]
        return resolve_binomial(ideal, max_steps=args.max_steps, transform=args.transform), ""
    if len(gens) != 1:
        raise ParseError("curve mode expects exactly one polynomial", 0)
    ring = _ring(gens, args, 2)
    f = parse_polynomial(gens[0], ring)
    tree = resolve_plane_curve(f, embedded=args.embedded, max_steps=args.max_steps, transform=args.transform)
    return tree, ""


def _fan_doc(fan, history) -> dict:
    return {
        "cones": [[list(r) for r in c.rays] for c in fan.cones],
        "multiplicities": fan.multiplicities(),
        "inserted_rays": [list(r) for r in history.rays],
    }


def _run_toric(args, text: str) -> tuple[str, str]:
    fan = parse_fan(text)
    try:
        out, history = resolve_fan(fan, max_steps=args.max_steps)
    except BudgetExceeded as exc:
        partial, history = exc.partial
        _write(args.out, _format_fan(args, partial, history))
        raise
    return _format_fan(args, out, history), f"cones: {len(out.cones)} subdivisions: {len(history)}"


def _format_fan(args, fan, history) -> str:
    if args.format == "json":
        return json.dumps(_fan_doc(fan, history), indent=1, sort_keys=True) + "\n"
    return format_fan(fan)


def _run_coeff(args, text: str) -> tuple[str, str]:
    gens = split_generators(text)
    if len(gens) != 1:
        raise ParseError("coeff-check mode expects exactly one polynomial", 0)
    ring = _ring(gens, args, 1)
    f = parse_polynomial(gens[0], ring)
    z = args.main_var or ring.variables[0]
    if z not in ring.variables:
        raise _UsageError(f"--main-var {z} is not a ring variable")
    data = coefficient_ideal(f, z)
    holds = check_order_equivalence(f, z)
    orders = ["inf" if o == float("inf") else int(o) for o in data.powered_orders()]
    doc = {
        "polynomial": str(f),
        "main_variable": z,
        "k": data.k,
        "coefficients": [str(a) for a in data.coefficients],
        "exponents": list(data.exponents),
        "powered_orders": orders,
        "threshold": data.threshold,
        "order": f.order(),
        "equivalence_holds": holds,
    }
    if args.format == "json":
        body = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        lines = [f"f = {f}", f"k = {data.k} (in {z})"]
        for i, (a, e, o) in enumerate(zip(data.coefficients, data.exponents, orders), 1):
            lines.append(f"a_{i} = {a}   exponent {e}   ord(a_{i}^{e}) = {o}")
        lines += [f"ord(f) = {f.order()}", f"threshold k! = {data.threshold}", f"equivalence holds: {str(holds).lower()}"]
        body = "\n".join(lines) + "\n"
    return body, f"coeff-check: k={data.k} equivalence={'ok' if holds else 'FAILED'}"


def execute(args) -> int:
    _check_flags(args)
    if args.mode == "coeff-check" and args.format == "dot":
        raise _UsageError("coeff-check mode writes json or text")
    FieldSpec(args.char)
    text = _read(args.input)
    start = time.perf_counter()
    if args.mode == "toric":
        body, summary = _run_toric(args, text)
        summary += f" elapsed={time.perf_counter() - start:.3f}s"
    elif args.mode == "coeff-check":
        body, summary = _run_coeff(args, text)
    else:
        try:
            tree, _ = _run_tree(args, text)
        except BudgetExceeded as exc:
            tree = exc.partial
            _write(args.out, export_tree(tree, collect_divisors(tree), args.format))
            raise
        body = export_tree(tree, collect_divisors(tree), args.format)
        summary = _tree_summary(tree, time.perf_counter() - start)
    _write(args.out, body)
    print(summary)
    return EXIT_OK


def run_verify(args) -> int:
    tree = load_tree(_read(args.tree))
    report = verify_tree(tree, points=args.points, seed=args.seed)
    for problem in report.problems:
        print(problem, file=sys.stderr)
    status = "ok" if report.ok else f"FAILED ({len(report.problems)} problems)"
    print(f"verify: charts={report.checked_charts} points={report.checked_points} {status}")
    return EXIT_OK if report.ok else EXIT_INVARIANT


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "verify":
            return run_verify(build_verify_parser().parse_args(argv[1:]))
        return execute(build_parser().parse_args(argv))
    except (_UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc} (partial result written)", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (DesingError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
