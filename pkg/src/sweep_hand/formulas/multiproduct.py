"""Time-dependent multi-product formulas over second-order base steps."""

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from sweep_hand.exceptions import PreconditionError, SingularSystemError
from sweep_hand.formulas.coefficients import STRANG
from sweep_hand.formulas.gates import GateSequence
from sweep_hand.formulas.product import hdr_gates, pointwise_gates
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.operators import ComplexMatrix

__all__ = [
    "MpfVariant",
    "MpfSpec",
    "MultiProductStep",
    "closed_form_alpha",
    "mpf_coefficients",
    "mpf_step",
    "mpf_step_pointwise",
    "mpf_step_hdr",
]

logger = logging.getLogger(__name__)

MpfVariant = Literal["pointwise", "hdr"]

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class MpfSpec:
    """Step multiplicities and extrapolation weights of a multi-product formula.

    Attributes:
        k: Strictly increasing positive multiplicities k_1 < … < k_M.
        alpha: Weights solving Σα_j = 1, Σα_j k_j^{−2ℓ} = 0 for ℓ = 1..M−1.
        residual: Max-abs residual of that linear system.
    """

    k: tuple[int, ...]
    alpha: tuple[float, ...]
    residual: float = 0.0

    @property
    def m(self) -> int:
        """Target half-order; the local error is O(Δt^{2m+1})."""
        return len(self.k)

    @property
    def kappa(self) -> float:
        """Condition number Σ|α_j|."""
        return math.fsum(abs(a) for a in self.alpha)


def _validate_multiplicities(k: Sequence[int]) -> tuple[int, ...]:
    ks = tuple(int(x) for x in k)
    if not ks:
        raise PreconditionError("need at least one multiplicity")
    if any(x < 1 for x in ks):
        raise PreconditionError(f"multiplicities must be positive, got {ks}")
    if len(set(ks)) != len(ks):
        raise SingularSystemError(f"duplicate multiplicities {ks} make α singular")
    return ks


def closed_form_alpha(k: Sequence[int]) -> tuple[float, ...]:
    """α_j = Π_{i≠j} k_j² / (k_j² − k_i²)."""
    ks = _validate_multiplicities(k)
    return tuple(
        math.prod(kj**2 / (kj**2 - ki**2) for i, ki in enumerate(ks) if i != j)
        for j, kj in enumerate(ks)
    )


def mpf_coefficients(k: Sequence[int]) -> MpfSpec:
    """Solve the Vandermonde system for the extrapolation weights.

    Args:
        k: Distinct positive multiplicities, in any order.

    Returns:
        MpfSpec with k sorted increasingly.

    Raises:
        SingularSystemError: On duplicate multiplicities or when the solved
            weights disagree with the closed form.
    """
    ks = tuple(sorted(_validate_multiplicities(k)))
    powers = np.array(
        [[float(kj) ** (-2 * ell) for kj in ks] for ell in range(len(ks))]
    )
    rhs = np.zeros(len(ks))
    rhs[0] = 1.0
    alpha = np.linalg.solve(powers, rhs)
    residual = float(np.max(np.abs(powers @ alpha - rhs)))
    closed = np.array(closed_form_alpha(ks))
    mismatch = float(np.max(np.abs(alpha - closed)))
    scale = max(1.0, float(np.abs(closed).max()))
    if residual > RESIDUAL_TOL or mismatch > RESIDUAL_TOL * scale:
        raise SingularSystemError(
            f"MPF weights for k={ks} are ill-conditioned: residual {residual:.2e}, "
            f"closed-form mismatch {mismatch:.2e}"
        )
    return MpfSpec(ks, tuple(float(a) for a in closed), residual)


@dataclass(frozen=True, eq=False)
class MultiProductStep:
    """One nonunitary multi-product step.

    Attributes:
        operator: Σ_j α_j Π_ℓ U₂(…) as a dense matrix.
        branches: The gate sequence of each branch, in branch order.
    """

    operator: ComplexMatrix
    branches: tuple[GateSequence, ...] = field(repr=False)

    @property
    def gate_count(self) -> int:
        """Primitive exponentials summed over all branches."""
        return sum(branch.count for branch in self.branches)

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    def unitarity_defect(self) -> float:
        """‖A^H A − I‖₂ of the combined operator."""
        a = self.operator
        return float(np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0]), 2))


BaseGates = Callable[[float, float], GateSequence]


def _branch(
    hamiltonian: TimeDepHamiltonian, base: BaseGates, t: float, dt: float, k: int
) -> tuple[GateSequence, ComplexMatrix]:
    h = dt / k
    gates = GateSequence(())
    result = np.eye(hamiltonian.dim, dtype=np.complex128)
    for ell in range(k):
        sub = base(t + ell * h, h)
        result = sub.to_unitary(hamiltonian).entries @ result
        gates = gates + sub
    return gates, result


def mpf_step(
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    spec: MpfSpec,
    variant: MpfVariant = "pointwise",
    max_workers: int = 1,
) -> MultiProductStep:
    """α-weighted sum of k_j-fold second-order products over [t, t + Δt].

    Args:
        hamiltonian: The Hamiltonian.
        t: Step start.
        dt: Step length.
        spec: Multiplicities and weights.
        variant: "pointwise" uses the midpoint Strang step, "hdr" the
            integrated-window Strang step.
        max_workers: Thread-pool width for the independent branches.

    Returns:
        The combined operator with per-branch gate sequences.
    """
    if variant == "pointwise":
        n_terms = hamiltonian.n_terms

        def base(start: float, length: float) -> GateSequence:
            return pointwise_gates(n_terms, start, length, STRANG, lambda_prime=0)

    else:
        hamiltonian.require_separable("HDR multi-product step")

        def base(start: float, length: float) -> GateSequence:
            return hdr_gates(hamiltonian, start, length, STRANG)

    def run(k: int) -> tuple[GateSequence, ComplexMatrix]:
        return _branch(hamiltonian, base, t, dt, k)

    if max_workers > 1 and spec.m > 1:
        with ThreadPoolExecutor(max_workers=min(max_workers, spec.m)) as pool:
            outcomes = list(pool.map(run, spec.k))
    else:
        outcomes = [run(k) for k in spec.k]

    operator = np.zeros((hamiltonian.dim, hamiltonian.dim), dtype=np.complex128)
    for alpha, (_, matrix) in zip(spec.alpha, outcomes, strict=True):
        operator += alpha * matrix
    return MultiProductStep(operator, tuple(gates for gates, _ in outcomes))


def mpf_step_pointwise(
    hamiltonian: TimeDepHamiltonian, t: float, dt: float, spec: MpfSpec
) -> MultiProductStep:
    """Multi-product step over midpoint base steps."""
    return mpf_step(hamiltonian, t, dt, spec, "pointwise")


def mpf_step_hdr(
    hamiltonian: TimeDepHamiltonian, t: float, dt: float, spec: MpfSpec
) -> MultiProductStep:
    """Multi-product step over integrated-window base steps.

    Raises:
        UnsupportedTermError: If a term is not of the form f(t)·h.
    """
    return mpf_step(hamiltonian, t, dt, spec, "hdr")
