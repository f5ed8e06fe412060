"""Magnus-expansion baseline for two-term Hamiltonians.

The step keeps the gate layout of a two-operator splitting but replaces the
durations by integrated weights β₁ = ∫f₁ and β₂ = ∫f₂, and corrects the
outermost h₁ exponents by ±u, where u carries the leading commutator of
the second-order Magnus term.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from sweep_hand.exceptions import PreconditionError, SingularSystemError
from sweep_hand.formulas.coefficients import FRS, SplitCoefficients
from sweep_hand.formulas.gates import Gate, GateSequence
from sweep_hand.formulas.product import StepResult
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.hamiltonians.schedules import Schedule
from sweep_hand.quadrature import adaptive_gauss_legendre

__all__ = ["SINGULAR_TOL", "iacs_correction", "iacs_gates", "iacs_step"]

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-14
CORRECTION_TOL = 1e-12


def _running_integral(
    schedule: Schedule, t: float, s: NDArray[np.float64]
) -> NDArray[np.float64]:
    if schedule.antiderivative is not None and schedule.constant_value is None:
        start = float(schedule.antiderivative(t))
        return np.asarray(schedule.antiderivative(s), dtype=np.float64) - start
    return np.array([schedule.definite_integral(t, float(x)) for x in s])


def iacs_correction(
    f1: Schedule, f2: Schedule, t: float, dt: float, beta2: float | None = None
) -> float:
    """The commutator correction u of one step.

    u = (1/(2β₂)) ∫_t^{t+Δt} [f₁(s)(F₂(s) − F₂(t)) − f₂(s)(F₁(s) − F₁(t))] ds

    Args:
        f1: Schedule of the first term.
        f2: Schedule of the second term.
        t: Step start.
        dt: Step length.
        beta2: Precomputed ∫f₂ over the step, if available.

    Raises:
        SingularSystemError: If β₂ vanishes.
    """
    if beta2 is None:
        beta2 = f2.definite_integral(t, t + dt)
    if abs(beta2) <= SINGULAR_TOL:
        raise SingularSystemError(
            f"beta2 = {beta2:.3e} at t = {t}: the Magnus correction is singular"
        )

    def integrand(s: NDArray[np.float64]) -> NDArray[np.float64]:
        s = np.atleast_1d(np.asarray(s, dtype=np.float64))
        return np.asarray(f1.value(s)) * _running_integral(f2, t, s) - np.asarray(
            f2.value(s)
        ) * _running_integral(f1, t, s)

    return adaptive_gauss_legendre(integrand, t, t + dt, CORRECTION_TOL) / (2 * beta2)


def iacs_gates(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    coeffs: SplitCoefficients = FRS,
) -> GateSequence:
    """Gate sequence of one Magnus-baseline step.

    Raises:
        PreconditionError: Unless the Hamiltonian has exactly two terms.
        UnsupportedTermError: If a term is not of the form f(t)·h.
        SingularSystemError: If β₂ vanishes.
    """
    if hamiltonian.n_terms != 2:
        raise PreconditionError(
            f"the Magnus baseline needs two terms, got {hamiltonian.n_terms}"
        )
    first, second = hamiltonian.local_terms()
    t1 = t + dt
    beta1 = first.schedule.definite_integral(t, t1)
    beta2 = second.schedule.definite_integral(t, t1)
    u = iacs_correction(first.schedule, second.schedule, t, dt, beta2)
    logger.debug("iacs t=%g dt=%g beta=(%g, %g) u=%g", t, dt, beta1, beta2, u)

    q = coeffs.q
    left_to_right: list[Gate] = []
    for i in range(q + 1):
        exponent = coeffs.a[i] * beta1
        if i == 0:
            exponent += u
        if i == q:
            exponent -= u
        left_to_right.append(Gate.integrated(0, t, t1, exponent))
        if i < q:
            left_to_right.append(Gate.integrated(1, t, t1, coeffs.b[i] * beta2))
    return GateSequence.build(reversed(left_to_right))


def iacs_step(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    coeffs: SplitCoefficients = FRS,
) -> StepResult:
    """One step of the Magnus-expansion baseline with any two-operator base.

    Args:
        hamiltonian: Two-term decomposition of f(t)·h form.
        t: Step start.
        dt: Step length.
        coeffs: Base splitting whose weights replace the FRS ones.

    Returns:
        The gate sequence and its unitary.
    """
    gates = iacs_gates(hamiltonian, t, dt, coeffs)
    return gates, gates.to_unitary(hamiltonian)
