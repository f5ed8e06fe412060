"""Tests for tooltip content definitions."""

import pytest

from sweep_hand.components.tooltips import (
    CHECK_TOOLTIPS,
    COLUMN_TOOLTIPS,
    TooltipContent,
)
from sweep_hand.services.emit import CSV_COLUMNS


class TestTooltipContent:
    """Tests for TooltipContent dataclass."""

    def test_defaults(self) -> None:
        tooltip = TooltipContent(description="Test description")
        assert tooltip.description == "Test description"
        assert tooltip.good_values is None
        assert tooltip.bad_values is None

    def test_is_frozen(self) -> None:
        tooltip = TooltipContent(description="Test")
        with pytest.raises(AttributeError):
            tooltip.description = "changed"  # type: ignore[misc]


class TestColumnTooltips:
    """Tests for record table tooltips."""

    def test_every_csv_column_has_a_tooltip(self) -> None:
        assert set(COLUMN_TOOLTIPS) == set(CSV_COLUMNS)

    def test_descriptions_are_sentences(self) -> None:
        for key, tooltip in COLUMN_TOOLTIPS.items():
            assert tooltip.description.endswith("."), key

    def test_error_has_guidance(self) -> None:
        tooltip = COLUMN_TOOLTIPS["error"]
        assert tooltip.good_values is not None
        assert tooltip.bad_values is not None


class TestCheckTooltips:
    """Tests for check verdict tooltips."""

    def test_bench_check_prefixes_covered(self) -> None:
        assert {"slope", "ordering", "records"} <= set(CHECK_TOOLTIPS)
