"""Log-log convergence chart rendered to standalone SVG with matplotlib."""

import io
import logging
from collections.abc import Mapping, Sequence

import matplotlib
from markupsafe import Markup
from matplotlib.figure import Figure

__all__ = ["SVG_NAMESPACE", "convergence_chart", "convergence_figure"]

logger = logging.getLogger(__name__)

SVG_NAMESPACE = "http://www.w3.org/2000/svg"

DPI = 96

# Text is emitted as <text> elements and the hash salt fixes element ids
# across runs.
CHART_STYLE = {
    "svg.fonttype": "none",
    "svg.hashsalt": "sweep-hand",
    "font.size": 9,
    "axes.linewidth": 0.5,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.markersize": 3,
}

Series = Mapping[str, Sequence[tuple[float, float]]]


def _cleaned(series: Series) -> dict[str, list[tuple[float, float]]]:
    return {
        name: sorted((float(x), float(y)) for x, y in points if x > 0 and y > 0)
        for name, points in series.items()
    }


def convergence_figure(
    series: Series,
    guide_slope: float | None = None,
    width: int = 760,
    height: int = 440,
    x_label: str = "gate count",
    y_label: str = "error",
) -> Figure:
    """Build a log-log plot of error against cost, one line per scheme.

    Non-positive points cannot be placed on log axes and are dropped. The
    axis limits are fixed by the data before the slope guide is drawn, so
    the guide is clipped to the plot instead of stretching it.

    Args:
        series: Points per scheme name, in plotting order.
        guide_slope: Slope of a dashed reference line anchored at the first
            point of the first non-empty series, or None for no guide.
        width: Figure width in pixels.
        height: Figure height in pixels.
        x_label: Horizontal axis label.
        y_label: Vertical axis label.

    Returns:
        A pyplot-free Figure with a single Axes.
    """
    cleaned = _cleaned(series)
    with matplotlib.rc_context(CHART_STYLE):
        figure = Figure(figsize=(width / DPI, height / DPI), dpi=DPI)
        ax = figure.add_subplot()
        if not any(cleaned.values()):
            ax.set_axis_off()
            ax.text(
                0.5, 0.5, "No data", transform=ax.transAxes, ha="center", va="center"
            )
            return figure

        for name, points in cleaned.items():
            if not points:
                continue
            xs, ys = zip(*points, strict=True)
            (line,) = ax.loglog(xs, ys, marker="o", linewidth=1.2, label=name)
            line.set_gid(f"series-{name}")

        if guide_slope is not None:
            ax.set_xlim(ax.get_xlim())
            ax.set_ylim(ax.get_ylim())
            anchor = next(points for points in cleaned.values() if points)
            (x0, y0), x1 = anchor[0], anchor[-1][0]
            if x1 <= x0:
                x1 = ax.get_xlim()[1]
            (guide,) = ax.plot(
                [x0, x1],
                [y0, y0 * (x1 / x0) ** guide_slope],
                linestyle="--",
                linewidth=0.8,
                color="#555555",
                label=f"slope {guide_slope:+g}",
            )
            guide.set_gid("guide")

        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.grid(True, which="major", color="#e4e4e8", linewidth=0.5)
        ax.legend(loc="center left", bbox_to_anchor=(1.02, 0.5), frameon=False)
    return figure


def convergence_chart(
    series: Series,
    guide_slope: float | None = None,
    width: int = 760,
    height: int = 440,
    x_label: str = "gate count",
    y_label: str = "error",
) -> Markup:
    """Render ``convergence_figure`` as an inline ``<svg>`` document.

    The XML prolog and doctype are stripped so the same text works as a
    standalone file and as an element inside the HTML report.

    Returns:
        SVG markup, safe to place directly in an htpy tree.
    """
    figure = convergence_figure(series, guide_slope, width, height, x_label, y_label)
    buffer = io.StringIO()
    with matplotlib.rc_context(CHART_STYLE):
        figure.savefig(
            buffer, format="svg", bbox_inches="tight", metadata={"Date": None}
        )
    rendered = buffer.getvalue()
    logger.debug(
        "rendered chart with %d series (%d bytes)", len(series), len(rendered)
    )
    return Markup(rendered[rendered.index("<svg") :])
