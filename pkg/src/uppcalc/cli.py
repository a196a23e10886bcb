"""Command-line interface: ``uppcalc eval|plot|check|bench``.

Exit codes: 0 success (or a true property), 1 false property, 2 parse error
or unknown property, 3 unresolved reference, 4 domain error, 5 benchmark
mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from collections.abc import Callable, Sequence
from decimal import ROUND_HALF_EVEN, Context, Decimal
from enum import IntEnum
from pathlib import Path

from .bench import CASES, run_case
from .curve import Curve
from .errors import (
    BenchmarkMismatchError,
    ConstructionError,
    CurveError,
    DomainError,
    ExpressionError,
    OperationExecutionError,
    UnresolvedReferenceError,
)
from .events import attach_logging, get_event_bus
from .expressions import evaluate
from .properties import PROPERTY_NAMES, check_property
from .rational import ExtendedRational, rational
from .serialization import dumps, loads_curve, loads_definitions, loads_expression
from .settings import ComputationSettings, get_settings

logger = logging.getLogger("uppcalc")

_DECIMAL = Context(prec=10, rounding=ROUND_HALF_EVEN)


class ExitCode(IntEnum):
    OK = 0
    FALSE = 1
    PARSE_ERROR = 2
    UNRESOLVED = 3
    DOMAIN_ERROR = 4
    MISMATCH = 5


def _settings(args: argparse.Namespace) -> ComputationSettings:
    settings = get_settings()
    if args.sequential:
        settings = settings.model_copy(update={"use_parallelism": False})
    if args.workers is not None:
        settings = settings.with_workers(args.workers)
    return settings


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _decimal(value: ExtendedRational) -> str:
    if value.is_infinite:
        return str(value)
    fraction = value.fraction
    approximation = _DECIMAL.divide(Decimal(fraction.numerator), Decimal(fraction.denominator))
    return format(approximation, "f")


def plot_rows(curve: Curve, until: ExtendedRational) -> list[list[str]]:
    """``t, leftLimit, value, rightLimit, decimal`` rows at every breakpoint of ``[0, until]``."""

    horizon = until.fraction
    times = sorted({*curve.extend(horizon).breakpoints(), horizon})
    rows = []
    for t in times:
        left = "" if t == 0 else str(curve.left_limit_at(t))
        value = curve.value_at(t)
        rows.append([str(rational(t)), left, str(value), str(curve.right_limit_at(t)), _decimal(value)])
    return rows


def command_eval(args: argparse.Namespace) -> ExitCode:
    definitions = loads_definitions(args.defs.read_bytes())
    expression = loads_expression(args.expr.read_bytes())
    result = evaluate(expression, definitions, settings=_settings(args))
    if isinstance(result, ExtendedRational):
        print(result.to_fraction_string())
        if args.out is not None:
            _write(dumps(result), args.out)
        return ExitCode.OK
    _write(dumps(result), args.out)
    return ExitCode.OK


def command_plot(args: argparse.Namespace) -> ExitCode:
    until = rational(args.until)
    if not until.is_finite or until <= 0:
        raise DomainError.requires("plot", f"a finite horizon > 0, got {args.until}")
    curve = loads_curve(args.curve.read_bytes())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "leftLimit", "value", "rightLimit", "decimal"])
    writer.writerows(plot_rows(curve, until))
    _write(buffer.getvalue(), args.out)
    return ExitCode.OK


def command_check(args: argparse.Namespace) -> ExitCode:
    if args.property not in PROPERTY_NAMES:
        print(f"error: unknown property '{args.property}' (known: {', '.join(PROPERTY_NAMES)})", file=sys.stderr)
        return ExitCode.PARSE_ERROR
    curve = loads_curve(args.curve.read_bytes())
    holds = check_property(curve, args.property)
    print("true" if holds else "false")
    return ExitCode.OK if holds else ExitCode.FALSE


def command_bench(args: argparse.Namespace) -> ExitCode:
    report = run_case(args.case, args.runs, _settings(args))
    _write(report.model_dump_json(by_alias=True, indent=2) + "\n", args.out)
    return ExitCode.OK


def _add_execution_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sequential", action="store_true", help="disable parallel kernels")
    parser.add_argument("--workers", type=int, default=None, help="worker count for parallel kernels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uppcalc", description="Exact min-plus curve calculus.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log computation events to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate_cmd = commands.add_parser("eval", help="evaluate an expression over named curves")
    evaluate_cmd.add_argument("--defs", type=Path, required=True, help="JSON object of named curves")
    evaluate_cmd.add_argument("--expr", type=Path, required=True, help="JSON expression tree")
    evaluate_cmd.add_argument("--out", type=Path, default=None, help="result file (default: stdout)")
    _add_execution_flags(evaluate_cmd)
    evaluate_cmd.set_defaults(handler=command_eval)

    plot_cmd = commands.add_parser("plot", help="sample a curve as CSV")
    plot_cmd.add_argument("curve", type=Path)
    plot_cmd.add_argument("--until", required=True, help="horizon (rational)")
    plot_cmd.add_argument("--format", choices=("csv",), default="csv")
    plot_cmd.add_argument("--out", type=Path, default=None)
    plot_cmd.set_defaults(handler=command_plot)

    check_cmd = commands.add_parser("check", help="test a curve property")
    check_cmd.add_argument("curve", type=Path)
    check_cmd.add_argument("--property", required=True, help=", ".join(PROPERTY_NAMES))
    check_cmd.set_defaults(handler=command_check)

    bench_cmd = commands.add_parser("bench", help="time the convolution configurations")
    bench_cmd.add_argument("--case", choices=sorted(CASES), default="subadditive-conv-small")
    bench_cmd.add_argument("--runs", type=int, default=10)
    bench_cmd.add_argument("--out", type=Path, default=None)
    _add_execution_flags(bench_cmd)
    bench_cmd.set_defaults(handler=command_bench)
    return parser


def _exit_code(error: BaseException) -> ExitCode:
    if isinstance(error, OperationExecutionError):
        if isinstance(error.original, ConstructionError):
            return ExitCode.DOMAIN_ERROR
        return _exit_code(error.original)
    if isinstance(error, BenchmarkMismatchError):
        return ExitCode.MISMATCH
    if isinstance(error, UnresolvedReferenceError):
        return ExitCode.UNRESOLVED
    if isinstance(error, ValueError | TypeError | ConstructionError | ExpressionError | OSError):
        return ExitCode.PARSE_ERROR
    return ExitCode.DOMAIN_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], ExitCode] = args.handler

    detach = None
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")
        detach = attach_logging(get_event_bus(), logger)
    try:
        return int(handler(args))
    except (CurveError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(_exit_code(exc))
    finally:
        if detach is not None:
            detach()


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
