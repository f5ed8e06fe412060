"""Benchmark report page: chart, check verdicts and the record table."""

from collections.abc import Sequence

from htpy import (
    Element,
    div,
    footer,
    h1,
    h2,
    header,
    main,
    p,
    section,
    span,
    table,
    tbody,
    td,
    th,
    thead,
    tr,
)
from markupsafe import Markup

from sweep_hand.components.base import base_layout, tooltip_label
from sweep_hand.components.tooltips import CHECK_TOOLTIPS, COLUMN_TOOLTIPS
from sweep_hand.services.bench import BenchRecord
from sweep_hand.services.checks import CheckResult
from sweep_hand.utils import format_error, format_gates, format_seconds

__all__ = ["report_page", "checks_section", "records_table"]


def _header_with_tooltip(text: str, tooltip_key: str) -> Element | str:
    tooltip_content = COLUMN_TOOLTIPS.get(tooltip_key)
    if tooltip_content:
        return tooltip_label(text, tooltip_content)
    return text


def _check_name(name: str) -> Element | str:
    tooltip_content = CHECK_TOOLTIPS.get(name.split(" ", 1)[0])
    if tooltip_content:
        return tooltip_label(name, tooltip_content)
    return name


def checks_section(checks: Sequence[CheckResult]) -> Element:
    """Create the verdict table, one row per check.

    Args:
        checks: Check results in report order.

    Returns:
        htpy Element containing the checks section.
    """
    if not checks:
        return section(".checks-section")[
            h2(".section-title")["Checks"],
            div(".empty-message")["No checks configured"],
        ]
    return section(".checks-section")[
        h2(".section-title")["Checks"],
        table(".data-table")[
            thead[tr[th["Check"], th["Status"], th["Detail"]]],
            tbody[
                [
                    tr(".check-row")[
                        td(".check-name")[_check_name(check.name)],
                        td[span(f".status-{check.status}")[check.status.upper()]],
                        td(".check-detail")[check.detail],
                    ]
                    for check in checks
                ]
            ],
        ],
    ]


def _record_row(record: BenchRecord) -> Element:
    """Create a table row for one record; failed rows show the failure."""
    if not record.ok:
        return tr(".failed-row")[
            td[record.scheme],
            td[record.base],
            td[str(record.N)],
            td(colspan="3")[record.failure or "non-finite error"],
        ]
    return tr(".record-row")[
        td(".scheme")[record.scheme],
        td(".base")[record.base],
        td(".steps")[str(record.N)],
        td(".gates")[format_gates(record.gates)],
        td(".error")[format_error(record.error)],
        td(".seconds")[format_seconds(record.seconds)],
    ]


def records_table(records: Sequence[BenchRecord]) -> Element:
    """Create the record table section with tooltips on every column.

    Args:
        records: Records to list, usually seed-averaged.

    Returns:
        htpy Element containing the records section.
    """
    if not records:
        return section(".records-section")[
            h2(".section-title")["Records"],
            div(".empty-message")["No records"],
        ]
    return section(".records-section")[
        h2(".section-title")["Records"],
        table(".data-table")[
            thead[
                tr[
                    th[_header_with_tooltip("Scheme", "scheme")],
                    th[_header_with_tooltip("Base", "base")],
                    th[_header_with_tooltip("N", "N")],
                    th[_header_with_tooltip("Gates", "gates")],
                    th[_header_with_tooltip("Error", "error")],
                    th[_header_with_tooltip("Seconds", "seconds")],
                ]
            ],
            tbody[[_record_row(record) for record in records]],
        ],
    ]


def report_page(
    title_text: str,
    version: str,
    checks: Sequence[CheckResult],
    records: Sequence[BenchRecord],
    chart: Markup | None = None,
) -> Element:
    """Create the complete HTML report of one CLI run.

    Args:
        title_text: Run title, e.g. the subcommand or config stem.
        version: Application version string to display.
        checks: Check verdicts.
        records: Records for the table.
        chart: Optional inline SVG convergence chart.

    Returns:
        Complete HTML document as an htpy Element.
    """
    passed = sum(1 for check in checks if check.passed)
    content = div(".report")[
        header(".report-header")[
            h1[title_text],
            p(".subtitle")[f"{passed} of {len(checks)} checks passed"],
        ],
        main[
            section(".chart")[h2(".section-title")["Convergence"], chart]
            if chart is not None
            else None,
            checks_section(checks),
            records_table(records),
        ],
        footer(".report-footer")[p[f"sweep-hand {version}"]],
    ]
    return base_layout(f"{title_text} - sweep-hand", content)
