"""Utility functions for sweep-hand."""

import math
from typing import Literal

__all__ = [
    "CheckStatus",
    "format_error",
    "format_seconds",
    "format_gates",
    "format_slope",
    "get_slope_status",
    "get_fraction_status",
    "get_tolerance_status",
    "worst_status",
]

CheckStatus = Literal["pass", "warn", "fail"]

_STATUS_RANK: dict[CheckStatus, int] = {"pass": 0, "warn": 1, "fail": 2}

# A miss within this multiple of the tolerance is reported as a warning.
_WARN_FACTOR = 1.5


def format_error(value: float) -> str:
    """Format an error value in scientific notation.

    Args:
        value: Distance to the reference.

    Returns:
        Three significant digits, or "N/A" when the value is not finite.
    """
    if not math.isfinite(value):
        return "N/A"
    return f"{value:.2e}"


def format_seconds(seconds: float) -> str:
    """Format a wall time for human readability.

    Uses adaptive scaling: s -> ms -> us based on magnitude.

    Args:
        seconds: Wall time in seconds.

    Returns:
        Human-readable duration string with unit.
    """
    if seconds >= 1:
        return f"{seconds:.2f} s"
    elif seconds >= 0.001:
        return f"{seconds * 1000:.1f} ms"
    else:
        return f"{seconds * 1_000_000:.0f} µs"


def format_gates(count: int) -> str:
    return f"{count:,}"


def format_slope(slope: float) -> str:
    return f"{slope:+.3f}"


def get_slope_status(slope: float, expected: float, tolerance: float) -> CheckStatus:
    """Evaluate a fitted slope against its expected value.

    Args:
        slope: Fitted exponent.
        expected: Expected exponent.
        tolerance: Allowed absolute deviation.

    Returns:
        "pass" within tolerance, "warn" within 1.5× tolerance, else "fail".
    """
    deviation = abs(slope - expected)
    if deviation <= tolerance:
        return "pass"
    if deviation <= _WARN_FACTOR * tolerance:
        return "warn"
    return "fail"


def get_fraction_status(fraction: float, threshold: float) -> CheckStatus:
    """Evaluate a relative-ordering fraction against its pass threshold.

    Returns:
        "pass" at or above the threshold, "warn" above half of it, else "fail".
    """
    if fraction >= threshold:
        return "pass"
    if fraction >= 0.5 * threshold:
        return "warn"
    return "fail"


def get_tolerance_status(value: float, tolerance: float) -> CheckStatus:
    """Pass when a nonnegative discrepancy is within tolerance, fail otherwise."""
    if math.isfinite(value) and value <= tolerance:
        return "pass"
    return "fail"


def worst_status(statuses: list[CheckStatus]) -> CheckStatus:
    """The most severe status of a collection; "pass" when empty."""
    if not statuses:
        return "pass"
    return max(statuses, key=_STATUS_RANK.__getitem__)
