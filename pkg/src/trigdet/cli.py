"""Command-line entry point: ``trigdet <command> ...``.

Exit codes: 0 all reports pass, 1 some verification failed, 2 usage or I/O
error, 3 precision exhausted (some report skipped, none failed).
"""

from __future__ import annotations

import argparse
import sys

from mpmath import mp

from .dirichlet import all_characters
from .matrices import Indexing, Kind, TrigMatrixSpec, build, determinant, exact_determinant, integer_matrix
from .numerics import PrecisionError, short_string, to_decimal_string
from .special_values import relative_class_number
from .verify import IDENTITIES, MAX_PRECISION, REPORT_FIELDS, default_precision, scan, verify, write_reports

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _precision(value: str) -> int | None:
    if value == "auto":
        return None
    bits = int(value)
    if bits < 64:
        raise argparse.ArgumentTypeError("precision must be at least 64 bits")
    return bits


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=None, metavar="BITS",
                        help="working precision in bits, or 'auto' (default)")
    common.add_argument("--output", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="trigdet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify one identity at one n")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("scan", parents=[common], help="verify an identity over a range of n")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--from", dest="n_min", type=int, required=True)
    p.add_argument("--to", dest="n_max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("classnumber", parents=[common], help="relative class number of Q(zeta_n)")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("chars", parents=[common], help="list Dirichlet characters mod n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("det", parents=[common], help="determinant of one matrix family")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--indexing", choices=[i.value for i in Indexing], default=Indexing.PRODUCT.value)
    return parser


def _classnumber_row(n: int, precision: int | None) -> dict:
    bits = precision or default_precision(n)
    while True:
        try:
            data = relative_class_number(n, bits)
            break
        except PrecisionError:
            if precision is not None or bits >= MAX_PRECISION:
                raise
            bits = min(2 * bits, MAX_PRECISION)
    return {
        "n": n, "h_minus": data.h_minus, "Q": data.Q, "w": data.w,
        "conductor_product": data.conductor_product,
        "l_product": to_decimal_string(data.l_product),
        "precision_bits": data.precision_bits,
    }


def _char_rows(n: int) -> list[dict]:
    return [
        {
            "label": chi.label, "modulus": n,
            "exponents": "(" + ",".join(map(str, chi.exponents)) + ")",
            "conductor": chi.conductor, "parity": chi.parity, "order": chi.order,
        }
        for chi in all_characters(n)
    ]


def _det_row(kind: str, n: int, indexing: str, precision: int | None) -> dict:
    spec = TrigMatrixSpec(kind, n, indexing)
    bits = precision or default_precision(n)
    d = determinant(build(spec, bits))
    row = {
        "kind": spec.kind.value, "n": n, "indexing": spec.indexing.value,
        "dim": len(spec.index_set), "det": to_decimal_string(d.value),
        "error": short_string(d.error), "precision_bits": bits,
    }
    if spec.kind in (Kind.MAILLET_R, Kind.MAILLET_CENTERED):
        row["exact"] = str(exact_determinant(integer_matrix(spec)))
    return row


def _exit_code(statuses) -> int:
    statuses = list(statuses)
    if "fail" in statuses:
        return EXIT_FAIL
    if "skipped" in statuses:
        return EXIT_PRECISION
    return EXIT_OK


def run(args) -> tuple[list[dict], list[str] | None, int]:
    if args.command in ("verify", "scan"):
        if args.command == "verify":
            reports = [verify(args.identity, args.n, args.precision)]
        else:
            reports = scan(args.identity, args.n_min, args.n_max, args.precision, args.jobs)
        return [r.to_dict() for r in reports], REPORT_FIELDS, _exit_code(r.status for r in reports)
    if args.command == "classnumber":
        return [_classnumber_row(args.n, args.precision)], None, EXIT_OK
    if args.command == "chars":
        return _char_rows(args.n), None, EXIT_OK
    return [_det_row(args.kind, args.n, args.indexing, args.precision)], None, EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, columns, code = run(args)
    except ValueError as exc:
        print(f"trigdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"trigdet: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    try:
        if args.output == "-":
            write_reports(rows, sys.stdout, args.format, columns)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                write_reports(rows, fh, args.format, columns)
    except OSError as exc:
        print(f"trigdet: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
