"""Log-log slope fits and relative-ordering statistics."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import stats

from sweep_hand.exceptions import PreconditionError

__all__ = ["DEFAULT_WINDOW", "SlopeFit", "fit_slope", "ordering_fraction"]

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (1e-10, 1e-2)
MIN_POINTS = 3


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line through log-log points.

    Attributes:
        slope: Fitted exponent.
        intercept: Natural-log intercept.
        r_squared: Coefficient of determination.
        n_points: Points inside the window that entered the fit.
    """

    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def within(self, expected: float, tolerance: float) -> bool:
        return abs(self.slope - expected) <= tolerance


def fit_slope(
    points: Iterable[tuple[float, float]],
    window: tuple[float, float] | None = DEFAULT_WINDOW,
) -> SlopeFit:
    """Fit log(y) = slope·log(x) + intercept over points with y in the window.

    Args:
        points: (x, y) pairs, e.g. (gate count, error) or (dt, error).
        window: Inclusive bounds on y, or None to keep every positive point.

    Returns:
        The fitted line.

    Raises:
        PreconditionError: If fewer than three points remain.
    """
    kept = [
        (float(x), float(y))
        for x, y in points
        if x > 0 and y > 0 and (window is None or window[0] <= y <= window[1])
    ]
    if len(kept) < MIN_POINTS:
        raise PreconditionError(
            f"slope fit needs {MIN_POINTS} points in window {window}, got {len(kept)}"
        )
    log_x = np.log([x for x, _ in kept])
    log_y = np.log([y for _, y in kept])
    if np.ptp(log_x) == 0.0:
        raise PreconditionError("slope fit needs at least two distinct abscissae")
    result = stats.linregress(log_x, log_y)
    fit = SlopeFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue**2),
        n_points=len(kept),
    )
    logger.debug("slope fit %.4f (R²=%.4f, n=%d)", fit.slope, fit.r_squared, len(kept))
    return fit


def ordering_fraction(better: Sequence[float], worse: Sequence[float]) -> float:
    """Fraction of paired grid points where ``better`` ≤ ``worse``.

    Raises:
        PreconditionError: On empty or unequal-length inputs.
    """
    if not better or len(better) != len(worse):
        raise PreconditionError(
            f"ordering needs equal non-empty series, got {len(better)} and {len(worse)}"
        )
    hits = sum(1 for b, w in zip(better, worse, strict=True) if b <= w)
    return hits / len(better)
