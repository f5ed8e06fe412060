"""Service layer for sweep-hand."""

from .bench import BenchRecord, aggregate, run_benchmark, scheme_series
from .checks import (
    CheckResult,
    CheckRun,
    analog_sweep,
    audit_gates,
    bench_checks,
    qdrift_bias,
    verify_order,
)
from .emit import render_csv, write_csv, write_report, write_svg
from .fitting import SlopeFit, fit_slope, ordering_fraction
from .reference_cache import CacheStats, ReferenceCache

__all__ = [
    "BenchRecord",
    "CacheStats",
    "CheckResult",
    "CheckRun",
    "ReferenceCache",
    "SlopeFit",
    "aggregate",
    "analog_sweep",
    "audit_gates",
    "bench_checks",
    "fit_slope",
    "ordering_fraction",
    "qdrift_bias",
    "render_csv",
    "run_benchmark",
    "scheme_series",
    "verify_order",
    "write_csv",
    "write_report",
    "write_svg",
]
