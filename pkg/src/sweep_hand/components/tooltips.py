"""Tooltip content definitions for benchmark report columns and checks.

Centralized storage for the explanatory text shown in the HTML report.
"""

from dataclasses import dataclass

__all__ = [
    "TooltipContent",
    "COLUMN_TOOLTIPS",
    "CHECK_TOOLTIPS",
]


@dataclass(frozen=True)
class TooltipContent:
    """Container for tooltip text with optional threshold guidance."""

    description: str
    good_values: str | None = None
    bad_values: str | None = None


# Record table columns
COLUMN_TOOLTIPS: dict[str, TooltipContent] = {
    "scheme": TooltipContent(
        description=(
            "Scheme identifier: family, split index or variant, and base "
            "splitting scheme."
        ),
    ),
    "base": TooltipContent(
        description=(
            "Two-operator splitting lifted to the decomposition. "
            "Randomized and Taylor schemes have none."
        ),
    ),
    "N": TooltipContent(
        description="Number of uniform time steps over the simulation interval.",
    ),
    "gates": TooltipContent(
        description=(
            "Primitive single-term exponentials after merging. Multi-product "
            "rows sum over all branches, qDrift rows count one per step."
        ),
    ),
    "error": TooltipContent(
        description=(
            "Distance to the reference evolution: trace distance of the final "
            "states, or spectral norm of the propagator difference."
        ),
        good_values="< 1e-6",
        bad_values="> 1e-2 (outside the fit window)",
    ),
    "seconds": TooltipContent(
        description="Wall time of the evolution, excluding the reference solve.",
    ),
}

# Check names, keyed by prefix
CHECK_TOOLTIPS: dict[str, TooltipContent] = {
    "slope": TooltipContent(
        description=(
            "Least-squares slope of log error against log gate count, "
            "restricted to the error window."
        ),
        good_values="within the configured tolerance",
    ),
    "ordering": TooltipContent(
        description=(
            "Fraction of shared grid points where the first scheme is at "
            "least as accurate as the second."
        ),
        good_values="at or above the threshold",
    ),
    "records": TooltipContent(
        description="Grid points whose evolution or scoring raised an error.",
        good_values="0",
    ),
}
