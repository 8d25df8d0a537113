"""Command-line front end.

    boxspline count  --input problem.json [--output spline.json]
    boxspline eval   --input spline.json --point 2,3
    boxspline verify --input problem-or-spline.json --bound 40 [--jobs 4]
    boxspline show   --input problem-or-spline.json
    boxspline show   --schema boxspline

Exit status: 0 success, 1 verification found mismatches, 2 unreadable or
schema-invalid input, 3 a construction precondition failed, 4 the evaluation
point is outside the domain.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import schemas
from .arrangement import NATURAL, DomainError
from .diophantine import PreconditionError
from .oracle import ContractViolation, diff_test
from .serialize import (SchemaError, boxspline_to_json, dumps, format_rational, load_document,
                        read_json)
from .spline import BoxSpline, bs_eval

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_DOMAIN = 4


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_point(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in s.replace(" ", "").split(",") if v != "")
    except ValueError:
        raise SchemaError(f"--point expects comma-separated integers, got {s!r}") from None


def cmd_count(args) -> int:
    kind, obj = load_document(read_json(args.input))
    if kind != "problem":
        raise SchemaError("count expects a problem file (kind + payload)")
    F = obj.build()
    _emit(dumps(boxspline_to_json(F, obj)), args.output)
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.point is None:
        raise SchemaError("eval needs --point")
    kind, obj = load_document(read_json(args.input))
    F = obj.build() if kind == "problem" else obj[0]
    print(format_rational(bs_eval(F, _parse_point(args.point))))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.bound is None or args.bound < 0:
        raise SchemaError("verify needs a non-negative --bound")
    kind, obj = load_document(read_json(args.input))
    if kind == "problem":
        report = diff_test(obj, args.bound, jobs=args.jobs)
    else:
        F, problem = obj
        if problem is None:
            raise SchemaError("this box spline does not record its problem, so it cannot be replayed")
        report = diff_test(problem, args.bound, jobs=args.jobs, symbolic=F)
    _emit(dumps(report.to_json()), args.output)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _describe_spline(F: BoxSpline) -> list[str]:
    arr = F.arrangement
    names = [f"x{i + 1}" for i in range(arr.dim)]
    regions = F.regions()
    lines = [f"box spline over {arr.domain}^{arr.dim}: {len(arr.planes)} hyperplanes, "
             f"{len(regions)} regions, {len(F.pieces)} nonzero pieces", "hyperplanes:"]
    for i, h in enumerate(arr.planes):
        lines.append(f"  h{i + 1}: {h.to_str(names)} = 0")
    rel = {"+": ">", "0": "=", "-": "<"}
    for r in regions:
        conds = []
        for h, s in zip(arr.planes, r.sign_vector):
            if arr.domain == NATURAL and h.is_coordinate() and s == "+":
                continue
            conds.append(f"{h.to_str(names)} {rel[s]} 0")
        point = ", ".join(str(v) for v in r.point)
        lines.append(f"region {r.sign_vector}  (contains ({point}))")
        lines.append(f"  where {' and '.join(conds) if conds else 'everywhere in the domain'}")
        q = F.pieces.get(r.sign_vector)
        if q is None:
            lines.append("  value 0")
        elif q.lattice.index == 1:
            lines.append(f"  value {next(iter(q.table.values())).to_str(names)}")
        else:
            basis = [list(row) for row in q.lattice.basis]
            lines.append(f"  quasi-polynomial: x modulo the lattice spanned by {basis}")
            for res, p in sorted(q.table.items()):
                lines.append(f"    x = {list(res)}: {p.to_str(names)}")
            lines.append("    other classes: 0")
    return lines


def cmd_show(args) -> int:
    if args.schema:
        if args.schema not in schemas.ALL:
            raise SchemaError(f"unknown schema {args.schema!r}; choose from {', '.join(schemas.ALL)}")
        print(json.dumps(schemas.ALL[args.schema], indent=2, sort_keys=True))
        return EXIT_OK
    if not args.input:
        raise SchemaError("show needs --input or --schema")
    kind, obj = load_document(read_json(args.input))
    lines = []
    if kind == "problem":
        lines.append(f"problem: {obj.describe()}")
        F = obj.build()
    else:
        F, problem = obj
        if problem is not None:
            lines.append(f"problem: {problem.describe()}")
    lines.extend(_describe_spline(F))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boxspline", description="Exact counting functions as box splines.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="build the box spline of a problem file")
    c.add_argument("--input", required=True)
    c.add_argument("--output")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("eval", help="evaluate a box spline (or a problem) at one point")
    e.add_argument("--input", required=True)
    e.add_argument("--point", help='comma-separated integers, e.g. "2,3"')
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="compare against brute-force counting on a grid")
    v.add_argument("--input", required=True)
    v.add_argument("--bound", type=int, required=True)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("show", help="print regions and quasi-polynomials readably")
    s.add_argument("--input")
    s.add_argument("--schema", help="print a JSON schema instead: " + ", ".join(schemas.ALL))
    s.add_argument("--output")
    s.set_defaults(func=cmd_show)
    return p


def _glue_negative_point(argv: list[str]) -> list[str]:
    """argparse reads "--point -1,2" as two options; rewrite it as "--point=-1,2"."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--point" and i + 1 < len(argv) and argv[i + 1][:2].lstrip("-")[:1].isdigit():
            out.append(f"--point={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_point(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits 2 on usage errors, which matches our input-error code
        return int(e.code or 0)
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, ContractViolation) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
