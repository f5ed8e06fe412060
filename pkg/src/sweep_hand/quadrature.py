"""Gauss-Legendre and Gauss-Hermite quadrature helpers."""

import logging
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "gauss_legendre",
    "gauss_hermite",
    "adaptive_gauss_legendre",
]

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

ADAPTIVE_ORDER = 10
MAX_DEPTH = 48


@lru_cache(maxsize=64)
def _legendre_reference(n: int) -> tuple[FloatArray, FloatArray]:
    knots, weights = np.polynomial.legendre.leggauss(n)
    knots.setflags(write=False)
    weights.setflags(write=False)
    return knots, weights


@lru_cache(maxsize=64)
def _hermite_reference(n: int) -> tuple[FloatArray, FloatArray]:
    knots, weights = np.polynomial.hermite.hermgauss(n)
    knots = knots * np.sqrt(2)
    weights = weights / np.sqrt(np.pi)
    knots.setflags(write=False)
    weights.setflags(write=False)
    return knots, weights


def gauss_legendre(a: float, b: float, n: int) -> tuple[FloatArray, FloatArray]:
    """Gauss-Legendre nodes and weights mapped onto [a, b].

    Args:
        a: Lower bound of the integration interval.
        b: Upper bound (may be below ``a``; weights then come out negative).
        n: Number of nodes.

    Returns:
        Tuple of (nodes, weights).
    """
    knots, weights = _legendre_reference(n)
    half = 0.5 * (b - a)
    return half * knots + 0.5 * (b + a), half * weights


def gauss_hermite(n: int) -> tuple[FloatArray, FloatArray]:
    """Gauss-Hermite rule for the standard normal density.

    Nodes are the probabilists' Hermite roots; weights sum to 1.

    Args:
        n: Number of nodes.

    Returns:
        Tuple of (nodes, weights).
    """
    return _hermite_reference(n)


def adaptive_gauss_legendre(
    f: Callable[[FloatArray], FloatArray],
    a: float,
    b: float,
    tol: float = 1e-12,
    order: int = ADAPTIVE_ORDER,
) -> float:
    """Integrate a vectorized scalar function by adaptive Gauss-Legendre bisection.

    A panel is accepted when its single-panel estimate and the sum over its
    two halves agree within the panel's share of ``tol``.

    Args:
        f: Function accepting and returning float arrays.
        a: Lower bound.
        b: Upper bound; ``b < a`` yields the negated integral.
        tol: Absolute tolerance on the result.
        order: Nodes per panel.

    Returns:
        The integral of ``f`` from ``a`` to ``b``.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_gauss_legendre(f, b, a, tol, order)

    def panel(lo: float, hi: float) -> float:
        nodes, weights = gauss_legendre(lo, hi, order)
        return float(np.dot(weights, f(nodes)))

    total = 0.0
    # depth-first stack of (lo, hi, coarse estimate, tolerance, depth)
    stack = [(a, b, panel(a, b), tol, 0)]
    while stack:
        lo, hi, coarse, share, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = panel(lo, mid), panel(mid, hi)
        if abs(left + right - coarse) <= share or depth >= MAX_DEPTH:
            if depth >= MAX_DEPTH:
                logger.debug("quadrature depth limit reached on [%g, %g]", lo, hi)
            total += left + right
            continue
        stack.append((mid, hi, right, 0.5 * share, depth + 1))
        stack.append((lo, mid, left, 0.5 * share, depth + 1))
    return total
