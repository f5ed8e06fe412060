"""Writers for benchmark artifacts: CSV table, SVG chart and HTML report."""

import csv
import io
import logging
from collections.abc import Sequence
from pathlib import Path

from sweep_hand import __version__
from sweep_hand.exceptions import EmitError
from sweep_hand.services.bench import GATE_COUNTING, BenchRecord, scheme_series
from sweep_hand.services.checks import CheckResult

__all__ = ["CSV_COLUMNS", "render_csv", "write_csv", "write_svg", "write_report"]

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("scheme", "base", "N", "gates", "error", "seconds")


def _require_records(records: Sequence[BenchRecord]) -> None:
    if not records:
        raise EmitError("refusing to emit an empty record list")


def _write(path: Path, content: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    except OSError as e:
        raise EmitError(f"cannot write {path}: {e.strerror or e}") from e
    logger.info("wrote %s", path)
    return path


def render_csv(records: Sequence[BenchRecord], timings: bool = True) -> str:
    """Render records as CSV text with a leading gate-counting comment.

    Args:
        records: Records in output order.
        timings: Write wall times; when False the seconds column is left
            empty so the output depends only on the config and seeds.

    Returns:
        The CSV document.

    Raises:
        EmitError: If there are no records.
    """
    _require_records(records)
    families = sorted({record.family for record in records})
    counting = "; ".join(f"{family}={GATE_COUNTING[family]}" for family in families)
    buffer = io.StringIO()
    buffer.write(f"# gates: {counting}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(
            [
                record.scheme,
                record.base,
                record.N,
                record.gates,
                repr(record.error),
                f"{record.seconds:.6f}" if timings else "",
            ]
        )
    return buffer.getvalue()


def write_csv(
    records: Sequence[BenchRecord], path: Path | str, timings: bool = True
) -> Path:
    """Write records to a CSV file, creating parent directories.

    Raises:
        EmitError: If there are no records or the path is unwritable.
    """
    return _write(Path(path), render_csv(records, timings))


def write_svg(
    records: Sequence[BenchRecord],
    path: Path | str,
    guide_slope: float | None = None,
) -> Path:
    """Write the log-log convergence chart of error against gate count.

    Raises:
        EmitError: If there are no records or the path is unwritable.
    """
    from sweep_hand.components.chart import convergence_chart

    _require_records(records)
    chart = convergence_chart(scheme_series(records), guide_slope)
    return _write(Path(path), str(chart) + "\n")


def write_report(
    records: Sequence[BenchRecord],
    checks: Sequence[CheckResult],
    path: Path | str,
    title_text: str,
    guide_slope: float | None = None,
) -> Path:
    """Write the self-contained HTML report with chart, verdicts and records.

    Unlike the CSV and SVG writers this accepts an empty record list, since
    some checks produce no records.

    Raises:
        EmitError: If the path is unwritable.
    """
    from sweep_hand.components.chart import convergence_chart
    from sweep_hand.components.report import report_page

    chart = convergence_chart(scheme_series(records), guide_slope) if records else None
    page = report_page(title_text, __version__, checks, records, chart)
    return _write(Path(path), str(page) + "\n")
