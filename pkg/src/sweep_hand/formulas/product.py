"""Lifted product formulas: time-independent, pointwise and integrated-window.

A step is described by its ``GateSequence``; the unitary is always the
evaluated sequence so the two never disagree.
"""

import logging
from collections.abc import Callable, Sequence

import numpy as np

from sweep_hand.exceptions import PreconditionError
from sweep_hand.formulas.coefficients import (
    LiftedCoefficients,
    SplitCoefficients,
)
from sweep_hand.formulas.gates import Gate, GateSequence
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.operators import HermitianOperator, UnitaryOperator

__all__ = [
    "StepResult",
    "StepFn",
    "lifted_product_unitary",
    "pointwise_gates",
    "pointwise_step",
    "hdr_gates",
    "hdr_step",
    "compose_evolution",
]

logger = logging.getLogger(__name__)

StepResult = tuple[GateSequence, UnitaryOperator]
StepFn = Callable[[TimeDepHamiltonian, float, float], StepResult]


def lifted_product_unitary(
    terms: Sequence[HermitianOperator], lifted: LiftedCoefficients, dt: float
) -> UnitaryOperator:
    """Time-independent lifted product of Λ operators.

    Computes Π_j (Π_{k=1}^{Λ} e^{−i c_j Δt h_k})(Π_{k=Λ}^{1} e^{−i d_j Δt h_k})
    with factors multiplied left to right.

    Args:
        terms: The operators h_1..h_Λ.
        lifted: Lifted sweep weights.
        dt: Step length.

    Returns:
        The product unitary.
    """
    if not terms:
        raise PreconditionError("need at least one operator")
    result = np.eye(terms[0].dim, dtype=np.complex128)
    for c, d in zip(lifted.c, lifted.d, strict=True):
        for h in terms:
            result = result @ h.exponential(c * dt)
        for h in reversed(terms):
            result = result @ h.exponential(d * dt)
    return UnitaryOperator(result)


def pointwise_gates(
    n_terms: int,
    t: float,
    dt: float,
    coeffs: SplitCoefficients,
    lambda_prime: int = 1,
) -> GateSequence:
    """Gate sequence of one pointwise step.

    Each forward sweep over [t + R_j, t + L_j] queries terms 1..Λ′ at its
    later end and the rest at its earlier end; each backward sweep over
    [t + L_{j+1}, t + R_j] does the same in reverse term order.

    Raises:
        PreconditionError: If lambda_prime is outside [0, n_terms].
    """
    if not 0 <= lambda_prime <= n_terms:
        raise PreconditionError(
            f"lambda_prime {lambda_prime} outside [0, {n_terms}]"
        )
    lifted = coeffs.lift()
    windows = coeffs.windows(dt)
    edges = [t + offset for offset in windows.L]
    mids = [t + offset for offset in windows.R]
    left_to_right: list[Gate] = []
    for j in range(lifted.q):
        late, early = edges[j], mids[j]
        for k in range(n_terms):
            time = late if k < lambda_prime else early
            left_to_right.append(Gate.pointwise(k, time, lifted.c[j] * dt))
        late, early = mids[j], edges[j + 1]
        for k in reversed(range(n_terms)):
            time = late if k >= lambda_prime else early
            left_to_right.append(Gate.pointwise(k, time, lifted.d[j] * dt))
    return GateSequence.build(reversed(left_to_right))


def pointwise_step(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    coeffs: SplitCoefficients,
    lambda_prime: int = 1,
) -> StepResult:
    """One step of the pointwise time-dependent product formula.

    Args:
        hamiltonian: Any decomposition, separable or not.
        t: Step start.
        dt: Step length; may be negative.
        coeffs: Base splitting scheme.
        lambda_prime: How many leading terms each forward sweep queries at
            its later end.

    Returns:
        The merged gate sequence and its unitary.
    """
    gates = pointwise_gates(hamiltonian.n_terms, t, dt, coeffs, lambda_prime)
    return gates, gates.to_unitary(hamiltonian)


def hdr_gates(
    hamiltonian: TimeDepHamiltonian, t: float, dt: float, coeffs: SplitCoefficients
) -> GateSequence:
    """Gate sequence of one integrated-window step.

    Raises:
        UnsupportedTermError: If any term is not of the form f(t)·h.
    """
    terms = hamiltonian.local_terms()
    lifted = coeffs.lift()
    windows = coeffs.windows(dt)
    edges = [t + offset for offset in windows.L]
    mids = [t + offset for offset in windows.R]

    def window(k: int, lo: float, hi: float) -> Gate:
        return Gate.integrated(k, lo, hi, terms[k].schedule.definite_integral(lo, hi))

    left_to_right: list[Gate] = []
    for j in range(lifted.q):
        for k in range(len(terms)):
            left_to_right.append(window(k, mids[j], edges[j]))
        for k in reversed(range(len(terms))):
            left_to_right.append(window(k, edges[j + 1], mids[j]))
    return GateSequence.build(reversed(left_to_right))


def hdr_step(
    hamiltonian: TimeDepHamiltonian, t: float, dt: float, coeffs: SplitCoefficients
) -> StepResult:
    """One step of the integrated-window (HDR) product formula.

    Every pointwise exponential of the lifted scheme is replaced by the exact
    exponential of the local term integrated over its window, which costs no
    extra gates.

    Args:
        hamiltonian: Decomposition whose terms are all f_k(t)·h_k.
        t: Step start.
        dt: Step length.
        coeffs: Base splitting scheme.

    Returns:
        The merged gate sequence and its unitary.
    """
    gates = hdr_gates(hamiltonian, t, dt, coeffs)
    return gates, gates.to_unitary(hamiltonian)


def compose_evolution(
    step_fn: StepFn, hamiltonian: TimeDepHamiltonian, n_steps: int
) -> tuple[UnitaryOperator, int]:
    """Compose ``n_steps`` uniform steps over the simulation interval.

    Args:
        step_fn: Callable (H, t, dt) returning a gate sequence and unitary.
        hamiltonian: The Hamiltonian; its interval fixes the grid.
        n_steps: Number of steps N ≥ 1.

    Returns:
        The ordered product and the total gate count. No merging happens
        across step boundaries.
    """
    if n_steps < 1:
        raise PreconditionError(f"n_steps must be >= 1, got {n_steps}")
    t_i, t_f = hamiltonian.interval
    dt = (t_f - t_i) / n_steps
    result = np.eye(hamiltonian.dim, dtype=np.complex128)
    total = 0
    for j in range(n_steps):
        gates, unitary = step_fn(hamiltonian, t_i + j * dt, dt)
        result = unitary.entries @ result
        total += gates.count
    logger.debug("composed %d steps, %d gates", n_steps, total)
    return UnitaryOperator(result), total
