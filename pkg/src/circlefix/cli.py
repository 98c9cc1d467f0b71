"""Command line interface: ``circlefix verify | enumerate | example | graph``.

Exit codes: 0 verified (or expected search result), 1 a constraint failed
or the search disagreed with the classification, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from . import constraints as C
from . import search
from .errors import (
    ClassificationFailure,
    ConstraintViolation,
    InvalidDataError,
    NotDescribableError,
    TheoremContradiction,
    UnsupportedShapeError,
)
from .fpdata import (
    FixedPointData,
    build_multigraph,
    cp2_family,
    hp2_family,
    hp2_from_projective,
    pattern_from_data,
    sphere_rotation,
    validate,
)
from .serialize import dumps, loads, to_dot

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: Any = None

    def as_dict(self) -> dict:
        return {"constraint": self.name, "outcome": "pass" if self.passed else "fail", "detail": self.detail}


def verify_data(data: FixedPointData, order: int | None = None) -> list[CheckOutcome]:
    """Run every applicable constraint on ``data``; stops early only if validation fails."""
    problems = validate(data)
    out = [CheckOutcome("validate", not problems, problems or None)]
    if problems:
        return out

    try:
        total = C.sign_sum(data)
        out.append(CheckOutcome("sign-sum", True, total))
    except ConstraintViolation as exc:
        total = sum(p.sign for p in data.points)
        out.append(CheckOutcome("sign-sum", False, str(exc)))

    out.append(CheckOutcome("dim-mod4", C.dim_mod4_check(data), data.dim))
    out.append(CheckOutcome("weight-parity", C.weight_parity(data)))
    out.append(CheckOutcome("min-weight-balance", C.min_weight_balance(data)))

    sig = C.signature_series(data, order)
    if sig.constant:
        out.append(CheckOutcome("signature-series", sig.value == total, {"value": sig.value}))
    else:
        out.append(
            CheckOutcome("signature-series", False, {"first_nonconstant_degree": sig.first_nonconstant_degree})
        )

    integral = C.integral_of_one(data)
    out.append(CheckOutcome("integral-one", integral == 0, str(integral)))

    forced = [m for m in range(1, data.half_dim + 1) if data.dim >= 4 * data.k * m]
    bad = [m for m in forced if not C.vandermonde_vanishing(data, m).all_zero]
    out.append(CheckOutcome("pontryagin-vanishing", not bad, {"forced_degrees": forced, "violated": bad}))

    if data.k == 3:
        out.extend(_three_point_checks(data))
    return out


def _three_point_checks(data: FixedPointData) -> list[CheckOutcome]:
    patterns = pattern_from_data(data)
    out = [CheckOutcome("triple-pattern", bool(patterns), [str(p) for p in patterns])]
    if not patterns:
        return out
    passing = [p for p in patterns if C.prop42_checks(p)]
    out.append(CheckOutcome("prop42", bool(passing), [str(p) for p in passing]))
    if not passing:
        return out
    n = patterns[0].n
    if n == 2:
        rel = [p for p in passing if C.dim8_relation(p)]
        out.append(CheckOutcome("dim8-relation", bool(rel), [str(p) for p in rel]))
    elif n == 3:
        certs = [C.dim12_chain(p) for p in patterns]
        ok = any(c.admissible for c in certs)
        out.append(CheckOutcome("dim12-chain", ok, {str(c.candidate): c.verdict for c in certs}))
    return out


# ------------------------------------------------------------------ commands


def _emit(text: str, out=None) -> None:
    (out or sys.stdout).write(text)


def _format_checks_text(path: str, checks: list[CheckOutcome]) -> str:
    lines = [f"circlefix {__version__} verify {path}"]
    for c in checks:
        detail = "" if c.detail is None else f"  {json.dumps(c.detail)}"
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}{detail}")
    failed = [c.name for c in checks if not c.passed]
    lines.append("verified" if not failed else f"violated: {failed[0]}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    try:
        with open(args.path) as fh:
            data = loads(fh.read())
    except (OSError, InvalidDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    checks = verify_data(data, args.truncation)
    failed = [c.name for c in checks if not c.passed]
    if args.format == "json":
        report = {
            "version": __version__,
            "command": "verify",
            "flags": {"path": args.path, "truncation": args.truncation},
            "checks": [c.as_dict() for c in checks],
            "status": "verified" if not failed else "violated",
            "first_failure": failed[0] if failed else None,
        }
        _emit(json.dumps(report, indent=2) + "\n")
    else:
        _emit(_format_checks_text(args.path, checks))
    return EXIT_FAIL if failed else EXIT_OK


def _format_report_text(report: search.SearchReport, flags: dict, match: bool, error: str | None) -> str:
    lines = [
        f"circlefix {__version__} enumerate {json.dumps(flags, sort_keys=True)}",
        f"dim {report.dim}, n {report.n}, max weight {report.bound}",
        f"candidates generated: {report.total_generated}",
    ]
    for stage, k in report.kills_per_stage.items():
        lines.append(f"  killed at {stage}: {k}")
    lines.append(f"survivors: {len(report.survivors)}")
    for cert in report.survivors:
        lines.append(f"  {cert.candidate}")
    lines.append(f"wall time: {report.wall_time:.2f}s")
    if error:
        lines.append(f"MISMATCH: {error}")
    lines.append("matches classification" if match else "does NOT match classification")
    return "\n".join(lines) + "\n"


def cmd_enumerate(args) -> int:
    dim, bound = args.dim, args.max_weight
    stages = search.stage_names(dim)
    if args.until is not None and (dim != 12 or args.until not in stages):
        print(f"error: --until needs --dim 12 and one of {', '.join(C.DIM12_STAGES)}", file=sys.stderr)
        return EXIT_INPUT
    if bound < 1 or args.workers < 1:
        print("error: --max-weight and --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    flags = {
        "dim": dim,
        "max_weight": bound,
        "until": args.until,
        "workers": args.workers,
        "primitive": args.primitive,
    }
    space = search.SearchSpace(dim, bound, args.until, args.primitive)
    report = search.parallel_partition(space, args.workers)
    error = None
    if args.until is None:
        try:
            search.check_classification(report)
        except (ClassificationFailure, TheoremContradiction) as exc:
            error = str(exc)
    match = error is None
    if args.format == "json":
        doc = {"version": __version__, "command": "enumerate", "flags": flags}
        doc.update(report.as_dict())
        doc["matches_classification"] = match
        doc["error"] = error
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        _emit(_format_report_text(report, flags, match, error))
    return EXIT_OK if match else EXIT_FAIL


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a number like 3 or 5/2, got {text!r}") from exc


def cmd_example(args) -> int:
    try:
        fam = args.family
        if fam == "hp2":
            data = hp2_family(*_need(args, "a", "b", "c"))
        elif fam == "cp2":
            data = cp2_family(*_need(args, "b", "c"))
        elif fam == "sphere":
            if not args.weights:
                raise InvalidDataError("--weights is required for the sphere family")
            data = sphere_rotation(args.weights)
        else:
            data = hp2_from_projective(*_need(args, "d", "e", "f"))
    except InvalidDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(data)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        _emit(text)
    return EXIT_OK


def _need(args, *names):
    values = [getattr(args, n) for n in names]
    missing = [f"--{n}" for n, v in zip(names, values) if v is None]
    if missing:
        raise InvalidDataError(f"family {args.family} needs {', '.join(missing)}")
    return values


def cmd_graph(args) -> int:
    try:
        with open(args.path) as fh:
            data = loads(fh.read())
    except (OSError, InvalidDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    problems = validate(data)
    if problems:
        print(f"error: {'; '.join(problems)}", file=sys.stderr)
        return EXIT_INPUT
    try:
        graph = build_multigraph(data)
    except (NotDescribableError, UnsupportedShapeError) as exc:
        print(f"not describable: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(to_dot(graph))
    return EXIT_OK


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FPD_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlefix",
        description="Check and enumerate fixed point data of circle actions with isolated fixed points.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every applicable constraint on a data file")
    p.add_argument("path")
    p.add_argument("--truncation", type=int, default=None, help="series truncation order (default 4*max+1)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="exhaustive search over 3-fixed-point patterns")
    p.add_argument("--dim", type=int, choices=(4, 8, 12), required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--until", choices=C.DIM12_STAGES, default=None, help="stop the dim-12 pipeline after this stage")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--primitive", action="store_true", help="only patterns whose entries have gcd 1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("example", help="write fixed point data of a known example")
    p.add_argument("--family", choices=("hp2", "cp2", "sphere", "hp2-projective"), required=True)
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=int)
    for name in ("d", "e", "f"):
        p.add_argument(f"--{name}", type=_fraction)
    p.add_argument("--weights", type=_int_list)
    p.add_argument("--out")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("graph", help="emit the describing multigraph as DOT")
    p.add_argument("path")
    p.add_argument("--format", choices=("dot",), default="dot")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help/--version
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
