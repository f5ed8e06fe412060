"""Analog clock: the Gaussian-smeared reduced state and Richardson extrapolation.

A clock register prepared in a Gaussian of width ω and traced out leaves

    ρ_ω(t) = ∫ ds |G(s − t)|² U(s, s − t) |ψ₀⟩⟨ψ₀| U(s, s − t)†,

a mixture of exact evolutions over windows shifted by ωx with x standard
normal. The integral is taken by Gauss-Hermite quadrature, every node using
the reference oracle.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from sweep_hand.exceptions import ConvergenceError, PreconditionError
from sweep_hand.formulas.multiproduct import MpfSpec
from sweep_hand.hamiltonians.model import Extension, TimeDepHamiltonian
from sweep_hand.operators import (
    ComplexMatrix,
    DensityOperator,
    HermitianOperator,
    QuantumState,
    fidelity,
    trace_distance,
)
from sweep_hand.quadrature import gauss_hermite
from sweep_hand.reference import DEFAULT_REFERENCE_TOL, reference_propagator

__all__ = [
    "GaussianClock",
    "rho_omega",
    "converged_rho_omega",
    "exact_state",
    "richardson_state",
    "richardson_observable",
    "smearing_fidelity_bound",
    "omega_budget",
    "energy_variance_constant",
    "fidelity_defects",
]

logger = logging.getLogger(__name__)

DEFAULT_CLOCK_NODES = 33
DEFAULT_HALF_WIDTH = 6.0
WEIGHT_TOL = 1e-10
OBSERVABLE_NORM_TOL = 1e-12


@dataclass(frozen=True)
class GaussianClock:
    """Gaussian clock state of width ω with its quadrature rule.

    Attributes:
        omega: Width ω > 0.
        nodes: Gauss-Hermite node count before truncation.
        half_width: Nodes beyond ±half_width·ω are dropped.
    """

    omega: float
    nodes: int = DEFAULT_CLOCK_NODES
    half_width: float = DEFAULT_HALF_WIDTH

    def __post_init__(self) -> None:
        if self.omega <= 0.0:
            raise PreconditionError(f"clock width must be positive, got {self.omega}")
        if self.nodes < 1 or self.half_width <= 0.0:
            raise PreconditionError(
                f"invalid clock quadrature: {self.nodes} nodes, "
                f"half width {self.half_width}"
            )

    @cached_property
    def rule(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Time offsets ωx_i and renormalized weights of the kept nodes."""
        x, w = gauss_hermite(self.nodes)
        keep = np.abs(x) <= self.half_width
        weights = w[keep] / np.sum(w[keep])
        if abs(float(np.sum(weights)) - 1.0) > WEIGHT_TOL:
            raise PreconditionError("clock weights fail to normalize")
        return self.omega * x[keep], weights

    def with_omega(self, omega: float) -> "GaussianClock":
        return replace(self, omega=omega)

    def refined(self) -> "GaussianClock":
        """Same width with 2n − 1 nodes, keeping the center node for odd n."""
        return replace(self, nodes=2 * self.nodes - 1)


def exact_state(
    hamiltonian: TimeDepHamiltonian,
    psi0: QuantumState,
    t: float,
    tol: float = DEFAULT_REFERENCE_TOL,
) -> QuantumState:
    """U(t, t_i)|ψ₀⟩ from the reference oracle."""
    start = hamiltonian.interval[0]
    return reference_propagator(hamiltonian, start, t, tol).apply(psi0)


def _smeared(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    clock: GaussianClock,
    psi0: QuantumState,
    tol: float,
) -> ComplexMatrix:
    start = hamiltonian.interval[0]
    span = t - start
    offsets, weights = clock.rule
    out = np.zeros((psi0.dim, psi0.dim), dtype=np.complex128)
    for offset, weight in zip(offsets, weights, strict=True):
        begin = start + float(offset)
        phi = reference_propagator(hamiltonian, begin, begin + span, tol).apply(psi0)
        out += weight * np.outer(phi.amplitudes, phi.amplitudes.conj())
    return out


def rho_omega(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    clock: GaussianClock,
    psi0: QuantumState,
    extension: Extension = "constant",
    tol: float = DEFAULT_REFERENCE_TOL,
) -> DensityOperator:
    """The clock-smeared reduced state ρ_ω(t).

    Args:
        hamiltonian: The Hamiltonian.
        t: Time in the simulation interval.
        clock: Width and quadrature of the clock state.
        psi0: State at the interval start.
        extension: Schedule continuation outside the interval.
        tol: Oracle tolerance per node.

    Returns:
        Σ_i w_i U(t + ωx_i, ωx_i)|ψ₀⟩⟨ψ₀|U†, shifted to the interval start.
    """
    extended = hamiltonian.extended(extension)
    return DensityOperator.from_matrix(_smeared(extended, t, clock, psi0, tol))


def converged_rho_omega(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    clock: GaussianClock,
    psi0: QuantumState,
    extension: Extension = "constant",
    tol: float = 1e-9,
    max_refinements: int = 3,
    oracle_tol: float = DEFAULT_REFERENCE_TOL,
) -> DensityOperator:
    """ρ_ω(t) with node doubling until two rules agree within ``tol``.

    Args:
        hamiltonian: The Hamiltonian.
        t: Time in the simulation interval.
        clock: Starting clock rule.
        psi0: State at the interval start.
        extension: Schedule continuation outside the interval.
        tol: Trace-distance change that stops the doubling.
        max_refinements: Number of node doublings allowed.
        oracle_tol: Oracle tolerance per node, passed to ``rho_omega``.

    Raises:
        PreconditionError: If max_refinements < 1.
        ConvergenceError: If the rules still differ after max_refinements.
    """
    if max_refinements < 1:
        raise PreconditionError(
            f"max_refinements must be at least 1, got {max_refinements}"
        )
    current = rho_omega(hamiltonian, t, clock, psi0, extension, oracle_tol)
    history: list[float] = []
    for _ in range(max_refinements):
        clock = clock.refined()
        finer = rho_omega(hamiltonian, t, clock, psi0, extension, oracle_tol)
        history.append(trace_distance(current, finer))
        logger.debug("clock nodes=%d change=%.3e", clock.nodes, history[-1])
        if history[-1] < tol:
            return finer
        current = finer
    last_two = (history[-2] if len(history) > 1 else math.inf, history[-1])
    raise ConvergenceError(last_two, clock.nodes)


def richardson_state(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    omega: float,
    spec: MpfSpec,
    clock_template: GaussianClock,
    psi0: QuantumState,
    extension: Extension = "constant",
) -> ComplexMatrix:
    """Σ_j α_j ρ_{ω/k_j}(t); Hermitian with unit trace but not positive in general."""
    combined = np.zeros((psi0.dim, psi0.dim), dtype=np.complex128)
    for alpha, k in zip(spec.alpha, spec.k, strict=True):
        clock = clock_template.with_omega(omega / k)
        combined += alpha * rho_omega(hamiltonian, t, clock, psi0, extension).entries
    return combined


def richardson_observable(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    observable: HermitianOperator,
    omega: float,
    spec: MpfSpec,
    clock_template: GaussianClock,
    psi0: QuantumState,
    extension: Extension = "constant",
) -> float:
    """Σ_j α_j tr(O ρ_{ω/k_j}(t)), the extrapolated expectation value.

    Raises:
        PreconditionError: If ‖O‖ > 1.
    """
    if observable.norm > 1.0 + OBSERVABLE_NORM_TOL:
        raise PreconditionError(f"observable norm {observable.norm:.3g} exceeds 1")
    combined = richardson_state(
        hamiltonian, t, omega, spec, clock_template, psi0, extension
    )
    return float(np.real(np.trace(observable.entries @ combined)))


def smearing_fidelity_bound(
    rho: DensityOperator | ArrayLike, psi: QuantumState
) -> float:
    """2√|1 − ⟨ψ|ρ|ψ⟩|.

    For a density operator this bounds the trace distance to |ψ⟩⟨ψ|. It also
    accepts the unit-trace Richardson combination, whose overlap may exceed 1.
    """
    if isinstance(rho, DensityOperator):
        overlap = fidelity(psi, rho)
    else:
        matrix = np.asarray(rho, dtype=np.complex128)
        overlap = float(np.real(np.vdot(psi.amplitudes, matrix @ psi.amplitudes)))
    return 2.0 * math.sqrt(abs(1.0 - overlap))


def omega_budget(T: float, h2_norm: float, epsilon: float, c: float = 1.0) -> float:
    """Clock width ω = c/(T‖h₂‖) for a target accuracy ε.

    The dependence on ε is carried by the caller's constant c.

    Raises:
        PreconditionError: Unless every input is positive.
    """
    inputs = {"T": T, "h2_norm": h2_norm, "epsilon": epsilon, "c": c}
    for name, value in inputs.items():
        if value <= 0.0:
            raise PreconditionError(f"{name} must be positive, got {value}")
    return c / (T * h2_norm)


def energy_variance_constant(
    hamiltonian: TimeDepHamiltonian, psi: QuantumState, t: float | None = None
) -> float:
    """⟨H²(t)⟩ − ⟨H(t)⟩², by default at the interval end."""
    when = hamiltonian.interval[1] if t is None else t
    h = hamiltonian.matrix(when)
    hpsi = h @ psi.amplitudes
    mean = float(np.real(np.vdot(psi.amplitudes, hpsi)))
    return max(0.0, float(np.real(np.vdot(hpsi, hpsi))) - mean * mean)


def fidelity_defects(
    rhos: Sequence[DensityOperator], psi: QuantumState
) -> NDArray[np.float64]:
    """1 − ⟨ψ|ρ|ψ⟩ for a sweep of smeared states."""
    return np.array([1.0 - fidelity(psi, rho) for rho in rhos])
