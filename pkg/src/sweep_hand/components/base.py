"""Base layout component for sweep-hand reports."""

import re
from functools import cache
from importlib import resources

from htpy import Element, body, head, html, meta, span, style, title

from sweep_hand.components.tooltips import TooltipContent

__all__ = ["base_layout", "tooltip_label"]


@cache
def _stylesheet() -> str:
    return resources.files("sweep_hand.data").joinpath("report.css").read_text()


def tooltip_label(text: str, tooltip: TooltipContent) -> Element:
    """Create a column or check label whose help text shows on hover and focus.

    Args:
        text: The visible label.
        tooltip: Description plus optional expected and suspicious ranges.

    Returns:
        A focusable span with the help text in ``data-tooltip`` and a
        screen-reader copy in a hidden span.
    """
    parts = [tooltip.description]
    if tooltip.good_values:
        parts.append(f"Expected: {tooltip.good_values}.")
    if tooltip.bad_values:
        parts.append(f"Investigate: {tooltip.bad_values}.")
    help_text = " ".join(parts)
    label_id = "tip-" + re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")

    return span(
        ".tooltip-trigger",
        tabindex="0",
        aria_describedby=label_id,
        **{"data-tooltip": help_text},
    )[
        text,
        span(id=label_id, role="tooltip", **{"class": "sr-only"})[help_text],
    ]


def base_layout(page_title: str, content: Element) -> Element:
    """Create a self-contained HTML document with the bundled stylesheet inlined.

    Args:
        page_title: The title to display in the browser tab.
        content: The main content element to render in the body.

    Returns:
        Complete HTML document as an htpy Element.
    """
    return html(lang="en")[
        head[
            meta(charset="utf-8"),
            meta(name="viewport", content="width=device-width, initial-scale=1"),
            title[page_title],
            style[_stylesheet()],
        ],
        body[content],
    ]
