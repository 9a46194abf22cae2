"""Command-line front end.

Exit codes: 0 when every theorem-level check passed, 1 when at least one
failed, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, TextIO

from .construction import DEFAULT_SIZE_CAP, build_R, gap_identity, gap_identity_exact, iterate_R, predicted_parameters
from .errors import HypothesisViolation, MalformedGraph6, RamanujanError
from .generators import generate
from .graph import Graph, complement, emit_dot, line_graph, parse_graph6, read_graph6_lines
from .report import (
    DEFAULT_EXACT_CAP,
    VerificationReport,
    csv_header,
    error_report,
    fmt_float,
    fmt_rational,
    report_csv,
    report_json,
    stage_dict,
    stage_text,
    verify_graph,
)
from .spectral import char_poly, eigenvalues

CAP_ENV = "RAMANUJAN_RG_CAP"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _default_cap() -> int:
    value = os.environ.get(CAP_ENV)
    if value is None:
        return DEFAULT_SIZE_CAP
    try:
        return int(value)
    except ValueError:
        raise InputError(f"{CAP_ENV} must be an integer, got {value!r}") from None


def _add_common(p: argparse.ArgumentParser, *, exact: bool = True) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--cap", type=int, default=None,
                   help=f"largest R(G) order built explicitly (default {DEFAULT_SIZE_CAP}, or ${CAP_ENV})")
    p.add_argument("--eigensolver", choices=("jacobi", "lapack"), default="jacobi")
    if exact:
        p.add_argument("--exact", action="store_true", help="certify verdicts with exact Sturm counts")
        p.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP,
                       help="largest order for exact certification (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramanujan-rg",
        description="Build and verify R(G) = L(L(G)^c)^c for connected regular graphs G.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify the theorem for generated or graph6 inputs")
    p.add_argument("--gen", action="append", default=[], metavar="SPEC",
                   help="generator spec, e.g. petersen, cycle:5, random:10,3,seed=1 (repeatable)")
    p.add_argument("--graph6", action="append", default=[], metavar="G6", help="graph6 string (repeatable)")
    p.add_argument("--stdin", action="store_true", help="read graph6 lines from standard input")
    p.add_argument("--dot", metavar="PATH", help="write R(G) of a single input as DOT")
    _add_common(p)

    p = sub.add_parser("predict", help="closed-form parameters of R(G) from (n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--json", action="store_true", help="shorthand for --format json")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("iterate", help="follow the sequence R(G), R(R(G)), ...")
    p.add_argument("--gen", required=True, metavar="SPEC")
    p.add_argument("--depth", type=int, default=2)
    _add_common(p)

    p = sub.add_parser("corpus", help="verify every graph6 line of a corpus")
    p.add_argument("path", nargs="?", help="graph6 file (default: standard input)")
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("spectrum", help="spectrum of a graph, its complement or its line graph")
    p.add_argument("--gen", metavar="SPEC")
    p.add_argument("--graph6", metavar="G6")
    p.add_argument("--of", choices=("graph", "complement", "line"), default="graph")
    p.add_argument("--charpoly", action="store_true", help="also print the exact characteristic polynomial")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--eigensolver", choices=("jacobi", "lapack"), default="jacobi")
    return parser


# helpers ----------------------------------------------------------------------

def _load_gen(spec: str) -> Graph:
    try:
        return generate(spec)
    except RamanujanError as exc:
        raise InputError(f"bad generator spec {spec!r}: {exc}") from None


def _load_g6(text: str) -> Graph:
    try:
        return parse_graph6(text)
    except MalformedGraph6 as exc:
        raise InputError(f"bad graph6 {text!r}: {exc}") from None


class _Emitter:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt, self.out = fmt, out
        self._header_done = False

    def __call__(self, rep: VerificationReport) -> None:
        if self.fmt == "json":
            print(report_json(rep), file=self.out)
        elif self.fmt == "csv":
            if not self._header_done:
                print(csv_header(), file=self.out)
                self._header_done = True
            print(report_csv(rep), file=self.out)
        else:
            print(rep.to_text(), file=self.out)


def _verify_kwargs(args) -> dict:
    return dict(
        size_cap=args.cap if args.cap is not None else _default_cap(),
        exact=args.exact,
        exact_cap=args.exact_cap,
        eigensolver=args.eigensolver,
    )


# subcommands ------------------------------------------------------------------

def cmd_verify(args, out: TextIO) -> int:
    inputs: list[tuple[str, Graph]] = []
    for spec in args.gen:
        g = _load_gen(spec)
        inputs.append((g.label or spec, g))
    for text in args.graph6:
        inputs.append((text, _load_g6(text)))
    if args.stdin:
        for lineno, text in read_graph6_lines(sys.stdin):
            try:
                inputs.append((f"line {lineno}", parse_graph6(text)))
            except MalformedGraph6 as exc:
                raise InputError(f"line {lineno}: {exc}") from None
    if not inputs:
        raise InputError("nothing to verify: give --gen, --graph6 or --stdin")
    if args.dot and len(inputs) != 1:
        raise InputError("--dot needs exactly one input")

    kwargs = _verify_kwargs(args)
    emit = _Emitter(args.format, out)
    failed = False
    for input_id, g in inputs:
        rep = verify_graph(g, input_id, **kwargs)
        emit(rep)
        failed |= rep.status == "fail"
        if args.dot and rep.status in ("pass", "fail"):
            with open(args.dot, "w") as fh:
                fh.write(emit_dot(build_R(g, kwargs["size_cap"]), name="R"))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_predict(args, out: TextIO) -> int:
    try:
        p = predicted_parameters(args.n, args.k)
    except RamanujanError as exc:
        raise InputError(str(exc)) from None
    gap = gap_identity(args.n, args.k)
    squares, displayed = gap_identity_exact(args.n, args.k)
    record = {
        "n": p.n,
        "k": p.k,
        "m_R": p.order,
        "d": p.degree,
        "lambda2_claim": fmt_rational(p.lambda2_claim),
        "lambda_min_claim": fmt_rational(p.lambda_min_claim),
        "lambda_star_claim": fmt_rational(p.lambda_star_claim),
        "bound": fmt_float(p.bound),
        "gap_lhs": fmt_float(gap.lhs),
        "gap_rhs": fmt_float(gap.rhs),
        "gap_nonneg": gap.nonneg,
        "gap_numerator_exact": fmt_rational(displayed),
        "gap_identity_exact": squares == displayed,
    }
    if args.json or args.format == "json":
        print(json.dumps(record), file=out)
    else:
        print(
            f"n={p.n} k={p.k}  m_R={p.order} d={p.degree}  λ2={record['lambda2_claim']} "
            f"λ_min={record['lambda_min_claim']} λ*={record['lambda_star_claim']}\n"
            f"bound 2sqrt(d-1)={record['bound']}  gap={record['gap_lhs']} "
            f"(rationalised {record['gap_rhs']}, nonneg={gap.nonneg})",
            file=out,
        )
    return EXIT_OK


def cmd_iterate(args, out: TextIO) -> int:
    g = _load_gen(args.gen)
    if args.depth < 1:
        raise InputError("--depth must be positive")
    kwargs = _verify_kwargs(args)
    try:
        records = iterate_R(g, args.depth, size_cap=kwargs["size_cap"], eigensolver=args.eigensolver,
                            exact=args.exact, exact_cap=args.exact_cap)
    except HypothesisViolation as exc:
        if args.format == "json":
            print(json.dumps({"input_id": g.label, "status": "skipped", "reason": str(exc)}), file=out)
        else:
            print(f"{g.label}: SKIPPED ({exc})", file=out)
        return EXIT_OK
    failed = False
    if args.format == "csv":
        cols = list(stage_dict(records[0]))
        print(",".join(cols), file=out)
    for rec in records:
        row = stage_dict(rec)
        if args.format == "json":
            print(json.dumps(row), file=out)
        elif args.format == "csv":
            print(",".join("" if v is None else str(v) for v in row.values()), file=out)
        else:
            print(stage_text(rec), file=out)
        if rec.mode == "explicit":
            failed |= not rec.verified
        else:
            failed |= not rec.is_ramanujan
    return EXIT_FAIL if failed else EXIT_OK


def _verify_line(item):
    lineno, text, kwargs = item
    try:
        g = parse_graph6(text)
    except MalformedGraph6 as exc:
        return error_report(f"line {lineno}", f"malformed graph6: {exc}")
    return verify_graph(g, f"line {lineno}", **kwargs)


def cmd_corpus(args, out: TextIO, err: TextIO) -> int:
    kwargs = _verify_kwargs(args)
    if args.path:
        try:
            with open(args.path) as fh:
                lines = list(read_graph6_lines(fh))
        except OSError as exc:
            raise InputError(str(exc)) from None
    else:
        lines = list(read_graph6_lines(sys.stdin))
    items = [(lineno, text, kwargs) for lineno, text in lines]

    emit = _Emitter(args.format, out)
    counts = {"checked": 0, "passed": 0, "skipped": 0, "failed": 0, "malformed": 0}

    def results() -> Iterable[VerificationReport]:
        if args.jobs > 1 and not args.fail_fast:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                yield from pool.map(_verify_line, items, chunksize=4)
        else:
            yield from map(_verify_line, items)

    for rep in results():
        emit(rep)
        if rep.status == "error":
            counts["malformed"] += 1
            print(f"{rep.input_id}: {rep.reason}", file=err)
        elif rep.status == "skipped":
            counts["skipped"] += 1
        else:
            counts["checked"] += 1
            counts["passed" if rep.status == "pass" else "failed"] += 1
            if rep.status == "fail" and args.fail_fast:
                break

    summary = " ".join(f"{key}={value}" for key, value in counts.items())
    print(f"summary: {summary}", file=out if args.format == "text" else err)
    if lines and counts["malformed"] == len(lines):
        return EXIT_INPUT
    return EXIT_FAIL if counts["failed"] else EXIT_OK


def cmd_spectrum(args, out: TextIO) -> int:
    if bool(args.gen) == bool(args.graph6):
        raise InputError("give exactly one of --gen or --graph6")
    g = _load_gen(args.gen) if args.gen else _load_g6(args.graph6)
    if args.of == "complement":
        g = complement(g)
    elif args.of == "line":
        try:
            g, _ = line_graph(g)
        except RamanujanError as exc:
            raise InputError(str(exc)) from None
    spec = eigenvalues(g, args.eigensolver)
    poly = char_poly(g) if args.charpoly else None
    if args.format == "json":
        record = {
            "order": g.order,
            "spectrum": [[fmt_float(v), m] for v, m in spec.entries],
            "charpoly": [str(c) for c in poly.descending()] if poly is not None else None,
        }
        print(json.dumps(record), file=out)
    else:
        print(str(spec), file=out)
        if poly is not None:
            print(str(poly), file=out)
    return EXIT_OK


def main(argv: Optional[list[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "predict":
            return cmd_predict(args, out)
        if args.command == "iterate":
            return cmd_iterate(args, out)
        if args.command == "corpus":
            return cmd_corpus(args, out, err)
        return cmd_spectrum(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
