"""Command-line entry point for sweep-hand."""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from sweep_hand import __version__
from sweep_hand.config import Settings, get_settings, load_bench_config
from sweep_hand.exceptions import ConfigError, EmitError, SweepHandError
from sweep_hand.services.bench import aggregate, run_benchmark
from sweep_hand.services.checks import (
    ORDER_BASES,
    ORDER_FAMILIES,
    ORDER_GRID,
    CheckRun,
    analog_sweep,
    audit_gates,
    bench_checks,
    qdrift_bias,
    verify_order,
)
from sweep_hand.services.emit import write_csv, write_report, write_svg
from sweep_hand.services.reference_cache import ReferenceCache

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2


def _grid(value: str) -> list[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid step grid {value!r}") from e


def build_arg_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per experiment."""
    parser = argparse.ArgumentParser(
        prog="sweep-hand",
        description="Time-dependent Hamiltonian simulation benchmarks and checks",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log at DEBUG level"
    )
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help="Directory for CSV, SVG and HTML output (env: SWEEP_HAND_OUTPUT_DIR)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="Run a benchmark described by a TOML file")
    bench.add_argument("config", type=Path, help="Benchmark TOML file")
    bench.add_argument(
        "--no-timings",
        action="store_true",
        help="Leave the seconds column empty so the CSV is reproducible byte for byte",
    )

    order = sub.add_parser(
        "verify-order", help="Fit convergence slopes of the fourth-order schemes"
    )
    order.add_argument(
        "--bases", nargs="+", default=list(ORDER_BASES), help="Base splitting schemes"
    )
    order.add_argument(
        "--families",
        nargs="+",
        choices=["pointwise", "hdr", "iacs"],
        default=list(ORDER_FAMILIES),
        help="Product-formula families",
    )
    order.add_argument(
        "--grid",
        type=_grid,
        default=ORDER_GRID,
        help="Comma-separated step counts",
    )

    sub.add_parser("audit-gates", help="Compare gate sequences with closed-form counts")
    sub.add_parser("qdrift-bias", help="Check the randomized channels")
    sub.add_parser(
        "analog-sweep", help="Check clock-width scaling of the smeared state"
    )
    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _report(
    run: CheckRun,
    output_dir: Path,
    stem: str,
    guide_slope: float | None = None,
    timings: bool = True,
) -> int:
    """Print verdicts, write artifacts and map the outcome to an exit code."""
    if run.records:
        write_csv(run.records, output_dir / f"{stem}.csv", timings=timings)
        write_svg(run.records, output_dir / f"{stem}.svg", guide_slope)
    write_report(
        run.records, run.checks, output_dir / f"{stem}.html", run.title, guide_slope
    )

    for check in run.checks:
        print(f"[{check.status.upper()}] {check.name}: {check.detail}")
    passed = sum(1 for check in run.checks if check.passed)
    print(f"{run.title}: {passed}/{len(run.checks)} checks passed")
    return EXIT_OK if run.passed else EXIT_CHECKS_FAILED


def _run_bench(args: argparse.Namespace, settings: Settings) -> int:
    config = load_bench_config(args.config)
    records = aggregate(run_benchmark(config, settings))
    run = CheckRun(args.config.stem, bench_checks(config, records), records)
    return _report(
        run,
        settings.output_dir,
        config.run.output,
        guide_slope=config.run.expected_slope,
        timings=not args.no_timings,
    )


def _dispatch(args: argparse.Namespace, settings: Settings) -> int:
    if args.command == "bench":
        return _run_bench(args, settings)
    if args.command == "verify-order":
        run = verify_order(settings, args.bases, args.families, args.grid)
        return _report(run, settings.output_dir, run.title, guide_slope=-4.0)
    if args.command == "audit-gates":
        run = audit_gates()
    elif args.command == "qdrift-bias":
        run = qdrift_bias(settings)
    else:
        run = analog_sweep(settings)
    return _report(run, settings.output_dir, run.title)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code.

    Returns:
        0 when every check passed, 1 when a check failed, 2 for usage,
        configuration or output errors.
    """
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        settings = get_settings()
    except ValidationError as e:
        print(f"sweep-hand: invalid settings: {e}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose or settings.debug)
    if args.output_dir is not None:
        settings = settings.model_copy(update={"output_dir": args.output_dir})
    ReferenceCache.configure(settings.cache_size, settings.max_reference_steps)

    try:
        return _dispatch(args, settings)
    except (ConfigError, EmitError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except SweepHandError as e:
        logger.error("%s failed: %s", args.command, e)
        return EXIT_CHECKS_FAILED


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
