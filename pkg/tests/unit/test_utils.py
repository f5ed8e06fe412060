"""Tests for utility functions."""

import math

from sweep_hand.utils import (
    format_error,
    format_gates,
    format_seconds,
    format_slope,
    get_fraction_status,
    get_slope_status,
    get_tolerance_status,
    worst_status,
)


class TestFormatError:
    """Tests for format_error function."""

    def test_scientific(self) -> None:
        assert format_error(1.234e-5) == "1.23e-05"

    def test_large(self) -> None:
        assert format_error(2.0) == "2.00e+00"

    def test_nan(self) -> None:
        assert format_error(math.nan) == "N/A"

    def test_infinite(self) -> None:
        assert format_error(math.inf) == "N/A"


class TestFormatSeconds:
    """Tests for format_seconds function."""

    def test_seconds(self) -> None:
        assert format_seconds(2.5) == "2.50 s"

    def test_milliseconds(self) -> None:
        assert format_seconds(0.0123) == "12.3 ms"

    def test_microseconds(self) -> None:
        assert format_seconds(0.0005) == "500 µs"


class TestFormatGates:
    """Tests for format_gates function."""

    def test_thousands_separator(self) -> None:
        assert format_gates(1234567) == "1,234,567"

    def test_small(self) -> None:
        assert format_gates(7) == "7"


class TestFormatSlope:
    """Tests for format_slope function."""

    def test_negative(self) -> None:
        assert format_slope(-4.0123) == "-4.012"

    def test_positive_has_sign(self) -> None:
        assert format_slope(2) == "+2.000"


class TestGetSlopeStatus:
    """Tests for get_slope_status function."""

    def test_within_tolerance(self) -> None:
        assert get_slope_status(-4.3, -4.0, 0.5) == "pass"

    def test_boundary_passes(self) -> None:
        assert get_slope_status(-3.5, -4.0, 0.5) == "pass"

    def test_near_miss_warns(self) -> None:
        assert get_slope_status(-4.6, -4.0, 0.5) == "warn"

    def test_far_miss_fails(self) -> None:
        assert get_slope_status(-5.0, -4.0, 0.5) == "fail"


class TestGetFractionStatus:
    """Tests for get_fraction_status function."""

    def test_at_threshold(self) -> None:
        assert get_fraction_status(0.7, 0.7) == "pass"

    def test_above_half_threshold(self) -> None:
        assert get_fraction_status(0.4, 0.7) == "warn"

    def test_below_half_threshold(self) -> None:
        assert get_fraction_status(0.2, 0.7) == "fail"


class TestGetToleranceStatus:
    """Tests for get_tolerance_status function."""

    def test_within(self) -> None:
        assert get_tolerance_status(1e-13, 1e-12) == "pass"

    def test_exceeded(self) -> None:
        assert get_tolerance_status(1e-6, 1e-12) == "fail"

    def test_nan_fails(self) -> None:
        assert get_tolerance_status(math.nan, 1.0) == "fail"


class TestWorstStatus:
    """Tests for worst_status function."""

    def test_empty_is_pass(self) -> None:
        assert worst_status([]) == "pass"

    def test_warn_beats_pass(self) -> None:
        assert worst_status(["pass", "warn", "pass"]) == "warn"

    def test_fail_beats_all(self) -> None:
        assert worst_status(["warn", "fail", "pass"]) == "fail"
