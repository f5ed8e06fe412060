"""htpy components for sweep-hand reports."""

from .base import base_layout, tooltip_label
from .chart import SVG_NAMESPACE, convergence_chart, convergence_figure
from .report import checks_section, records_table, report_page
from .tooltips import CHECK_TOOLTIPS, COLUMN_TOOLTIPS, TooltipContent

__all__ = [
    "base_layout",
    "checks_section",
    "convergence_chart",
    "convergence_figure",
    "records_table",
    "report_page",
    "tooltip_label",
    "SVG_NAMESPACE",
    "TooltipContent",
    "COLUMN_TOOLTIPS",
    "CHECK_TOOLTIPS",
]
