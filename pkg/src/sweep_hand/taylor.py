"""Second-order Taylor expansion of the propagator in LCU form.

The LCU operator is applied by plain matrix arithmetic; its coefficient sum
s is the success weight an LCU circuit would divide by.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from sweep_hand.exceptions import PreconditionError
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.operators import ComplexMatrix, QuantumState

__all__ = [
    "SEGMENT_WEIGHT",
    "LcuApprox",
    "TaylorRun",
    "taylor2_step",
    "success_weight",
    "segment_boundaries",
    "evolve_taylor2",
]

logger = logging.getLogger(__name__)

# e^{-2w} = 1/4 per segment
SEGMENT_WEIGHT = math.log(2.0)
BOUNDARY_XTOL = 1e-13


@dataclass(frozen=True, eq=False)
class LcuApprox:
    """Nonunitary second-order approximation of U(t + Δt, t).

    Attributes:
        operator: I + Σ_j a_j(−ih_j) + Σ_{j,k} b_{jk}(−ih_j)(−ih_k).
        coefficient_sum: s = 1 + Σ_j a_j + Σ_{j,k} b_{jk}.
    """

    operator: ComplexMatrix
    coefficient_sum: float

    def apply(self, state: QuantumState) -> QuantumState:
        """Act on a state and renormalize."""
        return QuantumState.from_vector(self.operator @ state.amplitudes)


@dataclass(frozen=True)
class TaylorRun:
    """Outcome of a composed Taylor-LCU evolution.

    Attributes:
        state: Final renormalized state.
        weight_product: Product of the per-step success weights.
        n_steps: Number of steps.
    """

    state: QuantumState
    weight_product: float
    n_steps: int


def _coefficients(
    hamiltonian: TimeDepHamiltonian, t: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    t_eval = t + dt
    schedules = hamiltonian.schedules
    values = np.array([float(s.value(t_eval)) for s in schedules])
    slopes = np.array([s.derivative(t_eval) for s in schedules])
    return values, slopes


def taylor2_step(hamiltonian: TimeDepHamiltonian, t: float, dt: float) -> LcuApprox:
    """Second-order Taylor-LCU step with schedules evaluated at t + Δt.

    The first-order weights are a_j = Δt f_j − (Δt²/2) f_j′ and the
    second-order weights b_{jk} = (Δt²/2) f_j f_k.

    Args:
        hamiltonian: Decomposition of f(t)·h terms.
        t: Step start.
        dt: Step length.

    Returns:
        The LCU operator and its coefficient sum.
    """
    operators = hamiltonian.operators
    values, slopes = _coefficients(hamiltonian, t, dt)
    first = dt * values - 0.5 * dt * dt * slopes
    stack = np.stack([op.entries for op in operators])
    generator = np.tensordot(values, stack, axes=1)
    linear = np.tensordot(first, stack, axes=1)
    operator = (
        np.eye(hamiltonian.dim, dtype=np.complex128)
        - 1j * linear
        - 0.5 * dt * dt * (generator @ generator)
    )
    return LcuApprox(operator, _weight(values, first, dt))


def _weight(values: np.ndarray, first: np.ndarray, dt: float) -> float:
    return float(1.0 + np.sum(first) + 0.5 * dt * dt * np.sum(values) ** 2)


def success_weight(hamiltonian: TimeDepHamiltonian, t: float, dt: float) -> float:
    """Coefficient sum s = 1 + Σ_j(Δt f_j − (Δt²/2)f_j′) + Σ_{j,k}(Δt²/2)f_j f_k.

    Meaningful as a success weight when every f_j ≥ 0.
    """
    hamiltonian.require_separable("success weight")
    values, slopes = _coefficients(hamiltonian, t, dt)
    return _weight(values, dt * values - 0.5 * dt * dt * slopes, dt)


def _accumulated_weight(
    hamiltonian: TimeDepHamiltonian, start: float, end: float
) -> float:
    return math.fsum(s.definite_integral(start, end) for s in hamiltonian.schedules)


def segment_boundaries(
    hamiltonian: TimeDepHamiltonian, t_end: float | None = None
) -> list[float]:
    """Time grid on which each segment carries Σ_j ∫ f_j = ln 2.

    Args:
        hamiltonian: Decomposition with Σ_j f_j > 0 on its interval.
        t_end: End of the grid; defaults to the interval end.

    Returns:
        Increasing boundaries starting at the interval start. The last
        segment is partial unless the total weight is a multiple of ln 2.

    Raises:
        PreconditionError: If the total weight is not positive.
    """
    start = hamiltonian.interval[0]
    end = hamiltonian.interval[1] if t_end is None else float(t_end)
    total = _accumulated_weight(hamiltonian, start, end)
    if end <= start or total <= 0.0:
        raise PreconditionError(f"no positive weight on [{start}, {end}]: {total!r}")

    boundaries = [start]
    for k in range(1, int(total // SEGMENT_WEIGHT) + 1):
        target = k * SEGMENT_WEIGHT
        if target >= total:
            break

        def excess(x: float, target: float = target) -> float:
            return _accumulated_weight(hamiltonian, start, x) - target

        boundary = optimize.brentq(excess, boundaries[-1], end, xtol=BOUNDARY_XTOL)
        boundaries.append(float(boundary))
    boundaries.append(end)
    logger.debug("%d Taylor segments on [%g, %g]", len(boundaries) - 1, start, end)
    return boundaries


def evolve_taylor2(
    psi: QuantumState, hamiltonian: TimeDepHamiltonian, n_steps: int
) -> TaylorRun:
    """Compose Taylor-LCU steps on a state over the simulation interval.

    The state is renormalized after every step, as after a successful
    postselected LCU application.
    """
    if n_steps < 1:
        raise PreconditionError(f"n_steps must be >= 1, got {n_steps}")
    t_i, t_f = hamiltonian.interval
    dt = (t_f - t_i) / n_steps
    state = psi
    product = 1.0
    for j in range(n_steps):
        step = taylor2_step(hamiltonian, t_i + j * dt, dt)
        state = step.apply(state)
        product *= step.coefficient_sum
    return TaylorRun(state, product, n_steps)
