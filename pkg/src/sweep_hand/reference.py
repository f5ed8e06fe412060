"""Ground-truth time-ordered propagators.

The oracle composes exponential-midpoint steps, halves the step until a
Richardson table in h² settles, and projects the result back onto the
unitary group. It shares no code with the schemes it validates.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from sweep_hand.exceptions import ConvergenceError, PreconditionError
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.operators import ComplexMatrix, UnitaryOperator

__all__ = [
    "DEFAULT_REFERENCE_TOL",
    "DEFAULT_MAX_STEPS",
    "ReferenceSolution",
    "midpoint_propagator",
    "reference_solution",
    "reference_propagator",
]

logger = logging.getLogger(__name__)

DEFAULT_REFERENCE_TOL = 1e-11
DEFAULT_MAX_STEPS = 2**18
MAX_COLUMNS = 7


@dataclass(frozen=True)
class ReferenceSolution:
    """Outcome of one oracle refinement.

    Attributes:
        propagator: Polar-projected extrapolated propagator U(t1, t0).
        steps: Midpoint step count of the finest level.
        raw_differences: ‖U_{2N} − U_N‖₂ for each halving.
        extrapolated_differences: Differences between successive diagonal
            entries of the Richardson table; the last one is below tol.
    """

    propagator: UnitaryOperator
    steps: int
    raw_differences: tuple[float, ...]
    extrapolated_differences: tuple[float, ...]

    @property
    def halving_ratios(self) -> tuple[float, ...]:
        """Successive ratios of raw halving differences (≈ 4 when second order)."""
        d = self.raw_differences
        return tuple(d[i] / d[i + 1] for i in range(len(d) - 1) if d[i + 1] > 0)


def midpoint_propagator(
    hamiltonian: TimeDepHamiltonian, t0: float, t1: float, steps: int
) -> ComplexMatrix:
    """Product of ``steps`` exponential-midpoint factors over [t0, t1].

    Args:
        hamiltonian: The Hamiltonian to integrate.
        t0: Start time.
        t1: End time.
        steps: Number of uniform sub-steps.

    Returns:
        Π_j exp(−i h H(t0 + (j + ½)h)) with later times on the left.
    """
    h = (t1 - t0) / steps
    result = np.eye(hamiltonian.dim, dtype=np.complex128)
    for j in range(steps):
        values, vectors = np.linalg.eigh(hamiltonian.matrix(t0 + (j + 0.5) * h))
        step = (vectors * np.exp(-1j * h * values)) @ vectors.conj().T
        result = step @ result
    return result


def _initial_steps(hamiltonian: TimeDepHamiltonian, t0: float, t1: float) -> int:
    span = t1 - t0
    bound = max(hamiltonian.norm_bound(t) for t in (t0, 0.5 * (t0 + t1), t1))
    return max(2, math.ceil(2.0 * bound * span))


def reference_solution(
    hamiltonian: TimeDepHamiltonian,
    t0: float,
    t1: float,
    tol: float = DEFAULT_REFERENCE_TOL,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> ReferenceSolution:
    """Approximate the time-ordered exponential U(t1, t0) to a tolerance.

    Args:
        hamiltonian: The Hamiltonian to integrate.
        t0: Start time.
        t1: End time, not before ``t0``.
        tol: Acceptance threshold on successive extrapolated refinements,
            spectral norm.
        max_steps: Step-count ceiling.

    Returns:
        ReferenceSolution with the propagator and refinement history.

    Raises:
        PreconditionError: If ``t1 < t0`` or ``tol <= 0``.
        ConvergenceError: If the ceiling is reached first.
    """
    if t1 < t0:
        raise PreconditionError(f"reference interval reversed: [{t0}, {t1}]")
    if tol <= 0:
        raise PreconditionError(f"tolerance must be positive, got {tol}")
    dim = hamiltonian.dim
    if t1 == t0:
        return ReferenceSolution(UnitaryOperator.identity(dim), 0, (), ())

    steps = _initial_steps(hamiltonian, t0, t1)
    raw: list[float] = []
    extrapolated: list[float] = []
    previous: list[ComplexMatrix] = []
    while True:
        row = [midpoint_propagator(hamiltonian, t0, t1, steps)]
        if previous:
            raw.append(float(np.linalg.norm(row[0] - previous[0], 2)))
            for j in range(1, min(len(previous) + 1, MAX_COLUMNS)):
                row.append(row[j - 1] + (row[j - 1] - previous[j - 1]) / (4**j - 1))
            change = float(np.linalg.norm(row[-1] - previous[-1], 2))
            extrapolated.append(change)
            logger.debug(
                "reference [%g, %g] N=%d raw=%.3e extrapolated=%.3e",
                t0,
                t1,
                steps,
                raw[-1],
                change,
            )
            if change < tol:
                break
        if 2 * steps > max_steps:
            history = extrapolated or raw or [math.inf]
            last_two = (history[-2] if len(history) > 1 else math.inf, history[-1])
            raise ConvergenceError(last_two, steps)
        previous = row
        steps *= 2

    unitary, _ = linalg.polar(row[-1])
    return ReferenceSolution(
        propagator=UnitaryOperator(unitary),
        steps=steps,
        raw_differences=tuple(raw),
        extrapolated_differences=tuple(extrapolated),
    )


def reference_propagator(
    hamiltonian: TimeDepHamiltonian,
    t0: float,
    t1: float,
    tol: float = DEFAULT_REFERENCE_TOL,
) -> UnitaryOperator:
    """The project-wide ground-truth propagator U(t1, t0).

    See ``reference_solution`` for the refinement procedure.
    """
    return reference_solution(hamiltonian, t0, t1, tol).propagator
