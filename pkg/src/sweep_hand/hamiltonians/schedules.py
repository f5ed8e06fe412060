"""Scalar schedules f(t) with derivatives and definite integrals."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from sweep_hand.quadrature import adaptive_gauss_legendre

__all__ = [
    "Schedule",
    "ScheduleKind",
    "constant",
    "ramp",
    "sine_pulse",
    "from_callable",
]

logger = logging.getLogger(__name__)

ScalarFn = Callable[[ArrayLike], ArrayLike]
ScheduleKind = Literal["linear", "sin"]

INTEGRAL_TOL = 1e-12
_STENCIL_STEP = 1e-3
_POSITIVITY_SAMPLES = 513


@dataclass(frozen=True)
class Schedule:
    """A real time profile f(t) of one local Hamiltonian term.

    Analytic schedules carry their derivative and an antiderivative. When
    either is missing the derivative falls back to a five-point central
    stencil and definite integrals to adaptive Gauss-Legendre quadrature.

    Attributes:
        f: Vectorized value function.
        df: Vectorized derivative, or None for the stencil fallback.
        antiderivative: Any antiderivative F with F' = f, or None for quadrature.
        name: Identifier used in fingerprints and reports.
        positive: True iff f > 0 on the interior of the simulation interval.
        constant_value: The value when f is constant in time, else None.
    """

    f: ScalarFn
    df: ScalarFn | None = None
    antiderivative: ScalarFn | None = None
    name: str = "custom"
    positive: bool = False
    constant_value: float | None = None

    def value(self, t: ArrayLike) -> NDArray[np.float64] | float:
        """Evaluate f at a time or an array of times."""
        result = np.asarray(self.f(t), dtype=np.float64)
        return float(result) if result.ndim == 0 else result

    def derivative(self, t: float) -> float:
        """Evaluate f'(t)."""
        if self.df is not None:
            return float(self.df(t))
        h = _STENCIL_STEP * max(1.0, abs(t))
        samples = self.f(np.array([t - 2 * h, t - h, t + h, t + 2 * h]))
        s = np.asarray(samples, dtype=np.float64)
        return float((s[0] - 8 * s[1] + 8 * s[2] - s[3]) / (12 * h))

    def definite_integral(self, a: float, b: float) -> float:
        """Return the integral of f from a to b (negated when b < a)."""
        if a == b:
            return 0.0
        if self.constant_value is not None:
            return self.constant_value * (b - a)
        if self.antiderivative is not None:
            return float(self.antiderivative(b)) - float(self.antiderivative(a))
        return adaptive_gauss_legendre(
            lambda x: np.asarray(self.f(x), dtype=np.float64), a, b, INTEGRAL_TOL
        )

    @property
    def positivity_flag(self) -> bool:
        """True iff f > 0 on the interior of the simulation interval."""
        return self.positive

    @property
    def is_constant(self) -> bool:
        return self.constant_value is not None

    def is_positive_on(self, a: float, b: float) -> bool:
        """Check f > 0 on the closed interval [a, b] by dense sampling."""
        samples = np.asarray(self.f(np.linspace(a, b, _POSITIVITY_SAMPLES)))
        return bool(np.all(samples > 0.0))

    def clamped(self, lo: float, hi: float) -> "Schedule":
        """Continue f by its endpoint values outside [lo, hi].

        The continuation keeps an exact antiderivative when one is known.
        """
        if self.constant_value is not None:
            return self
        f_lo, f_hi = float(self.f(lo)), float(self.f(hi))
        base_f, base_df, base_anti = self.f, self.df, self.antiderivative

        def value(t: ArrayLike) -> ArrayLike:
            return base_f(np.clip(t, lo, hi))

        def derivative(t: ArrayLike) -> ArrayLike:
            inside = (np.asarray(t) >= lo) & (np.asarray(t) <= hi)
            slope = base_df(np.clip(t, lo, hi)) if base_df is not None else 0.0
            return np.where(inside, slope, 0.0)

        antiderivative = None
        if base_anti is not None:

            def antiderivative(t: ArrayLike) -> ArrayLike:
                x = np.asarray(t, dtype=np.float64)
                return (
                    np.asarray(base_anti(np.clip(x, lo, hi)))
                    + f_lo * np.minimum(x - lo, 0.0)
                    + f_hi * np.maximum(x - hi, 0.0)
                )

        return Schedule(
            f=value,
            df=derivative if base_df is not None else None,
            antiderivative=antiderivative,
            name=f"{self.name}|clamped[{lo:g},{hi:g}]",
            positive=self.positive,
        )


def constant(c: float) -> Schedule:
    """Time-independent schedule f(t) = c."""
    c = float(c)
    return Schedule(
        f=lambda t: np.full_like(np.asarray(t, dtype=np.float64), c),
        df=lambda t: np.zeros_like(np.asarray(t, dtype=np.float64)),
        antiderivative=lambda t: c * np.asarray(t, dtype=np.float64),
        name=f"constant({c!r})",
        positive=c > 0,
        constant_value=c,
    )


def ramp(kind: ScheduleKind, scale: float, rising: bool = True) -> Schedule:
    """Adiabatic interpolation profile on [0, 1].

    ``kind`` picks g(t) = t or g(t) = sin(πt/2); the schedule is scale·g
    when rising and scale·(1 − g) when falling.

    Args:
        kind: "linear" or "sin".
        scale: Overall time scale T.
        rising: Rising (f₂-type) or falling (f₁-type) profile.

    Returns:
        The analytic schedule.
    """
    if kind == "linear":

        def g(t: ArrayLike) -> NDArray[np.float64]:
            return np.asarray(t, dtype=np.float64)

        def dg(t: ArrayLike) -> NDArray[np.float64]:
            return np.ones_like(np.asarray(t, dtype=np.float64))

        def big_g(t: ArrayLike) -> NDArray[np.float64]:
            return 0.5 * np.asarray(t, dtype=np.float64) ** 2

    elif kind == "sin":
        half_pi = 0.5 * math.pi

        def g(t: ArrayLike) -> NDArray[np.float64]:
            return np.sin(half_pi * np.asarray(t, dtype=np.float64))

        def dg(t: ArrayLike) -> NDArray[np.float64]:
            return half_pi * np.cos(half_pi * np.asarray(t, dtype=np.float64))

        def big_g(t: ArrayLike) -> NDArray[np.float64]:
            return -np.cos(half_pi * np.asarray(t, dtype=np.float64)) / half_pi

    else:
        raise ValueError(f"unknown schedule kind {kind!r}")

    scale = float(scale)
    direction = "rising" if rising else "falling"
    if rising:
        return Schedule(
            f=lambda t: scale * g(t),
            df=lambda t: scale * dg(t),
            antiderivative=lambda t: scale * big_g(t),
            name=f"ramp({kind},{scale!r},{direction})",
            positive=scale > 0,
        )
    return Schedule(
        f=lambda t: scale * (1.0 - g(t)),
        df=lambda t: -scale * dg(t),
        antiderivative=lambda t: scale * (np.asarray(t, dtype=np.float64) - big_g(t)),
        name=f"ramp({kind},{scale!r},{direction})",
        positive=scale > 0,
    )


def sine_pulse(amplitude: float = math.pi, frequency: float = math.pi) -> Schedule:
    """Schedule f(t) = amplitude·sin(frequency·t)."""
    a, w = float(amplitude), float(frequency)
    return Schedule(
        f=lambda t: a * np.sin(w * np.asarray(t, dtype=np.float64)),
        df=lambda t: a * w * np.cos(w * np.asarray(t, dtype=np.float64)),
        antiderivative=lambda t: -(a / w) * np.cos(w * np.asarray(t, dtype=np.float64)),
        name=f"sine_pulse({a!r},{w!r})",
        positive=a > 0 and 0 < w <= math.pi,
    )


def from_callable(
    fn: Callable[[float], float],
    derivative: Callable[[float], float] | None = None,
    antiderivative: Callable[[float], float] | None = None,
    name: str | None = None,
    interval: tuple[float, float] = (0.0, 1.0),
    vectorized: bool = False,
) -> Schedule:
    """Wrap a user-supplied function as a Schedule.

    Args:
        fn: The value function.
        derivative: Optional exact derivative.
        antiderivative: Optional exact antiderivative.
        name: Identifier; defaults to the function's qualified name.
        interval: Simulation interval used to compute the positivity flag.
        vectorized: Whether the callables already accept numpy arrays.

    Returns:
        A Schedule using quadrature and stencil fallbacks where needed.
    """

    def wrap(g: Callable[[float], float] | None) -> ScalarFn | None:
        if g is None or vectorized:
            return g
        return np.vectorize(g, otypes=[np.float64])

    value = fn if vectorized else np.vectorize(fn, otypes=[np.float64])
    lo, hi = interval
    interior = np.linspace(lo, hi, _POSITIVITY_SAMPLES)[1:-1]
    positive = bool(np.all(np.asarray(value(interior)) > 0.0))
    return Schedule(
        f=value,
        df=wrap(derivative),
        antiderivative=wrap(antiderivative),
        name=name or f"callable({getattr(fn, '__qualname__', 'fn')})",
        positive=positive,
    )
