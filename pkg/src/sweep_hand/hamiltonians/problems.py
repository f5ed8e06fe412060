"""Builders for the adiabatic Grover, adiabatic PageRank and Ising benchmarks."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import reduce
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field, model_validator

from sweep_hand.exceptions import InvalidStateError, PreconditionError
from sweep_hand.hamiltonians.model import LocalTerm, TimeDepHamiltonian
from sweep_hand.hamiltonians.schedules import ScheduleKind, constant, ramp, sine_pulse
from sweep_hand.operators import HermitianOperator, QuantumState
from sweep_hand.reference import reference_propagator

__all__ = [
    "AdiabaticProblem",
    "ProblemInstance",
    "ProblemSpec",
    "PAULI_X",
    "PAULI_Z",
    "plus_state",
    "random_product_state",
    "random_digraph",
    "transition_matrix",
    "google_matrix",
    "build_grover",
    "build_pagerank",
    "build_ising",
    "ising_initial_state",
    "draw_grover_problem",
    "draw_pagerank_problem",
]

logger = logging.getLogger(__name__)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
EIGEN_TOL = 1e-10
SUCCESS_TOL = 1e-9

ISING_J = -1.0
ISING_H_Z = 0.2


@dataclass(frozen=True, eq=False)
class AdiabaticProblem:
    """Digitized adiabatic problem H(t) = f₁(t)h₁ + f₂(t)h₂ on [0, 1].

    Attributes:
        hamiltonian: Two-term Hamiltonian.
        initial_state: Ground state of h₁.
        target_state: Ground state of h₂.
        time_scale: The time scale T.
    """

    hamiltonian: TimeDepHamiltonian
    initial_state: QuantumState
    target_state: QuantumState
    time_scale: float

    def __post_init__(self) -> None:
        if self.hamiltonian.n_terms != 2:
            raise PreconditionError(
                f"adiabatic problems have two terms, got {self.hamiltonian.n_terms}"
            )
        h1, h2 = self.hamiltonian.operators
        _require_ground_state(h1, self.initial_state, "initial")
        _require_ground_state(h2, self.target_state, "target")

    @property
    def h1(self) -> HermitianOperator:
        return self.hamiltonian.operators[0]

    @property
    def h2(self) -> HermitianOperator:
        return self.hamiltonian.operators[1]

    def success_probability(self, tol: float = SUCCESS_TOL) -> float:
        """|⟨target|U(t_f, t_i)|initial⟩|² under the exact evolution."""
        t_i, t_f = self.hamiltonian.interval
        final = reference_propagator(self.hamiltonian, t_i, t_f, tol).apply(
            self.initial_state
        )
        return abs(self.target_state.overlap(final)) ** 2


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """A concrete Hamiltonian with its initial state, as consumed by the bench."""

    label: str
    hamiltonian: TimeDepHamiltonian
    initial_state: QuantumState
    target_state: QuantumState | None = None


def _require_ground_state(
    operator: HermitianOperator, state: QuantumState, role: str
) -> None:
    residual = operator.entries @ state.amplitudes - (
        operator.ground_energy * state.amplitudes
    )
    if float(np.linalg.norm(residual)) > EIGEN_TOL:
        raise InvalidStateError(f"{role} state is not a ground state of its operator")


def _kron_all(factors: list[NDArray]) -> NDArray:
    return reduce(np.kron, factors)


def plus_state(n_qubits: int) -> QuantumState:
    """The uniform superposition |+⟩^⊗n."""
    dim = 2**n_qubits
    return QuantumState(np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128))


def random_product_state(n_qubits: int, rng: np.random.Generator) -> QuantumState:
    """Tensor product of n independent random single-qubit states."""
    factors = []
    for _ in range(n_qubits):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        factors.append(v / np.linalg.norm(v))
    return QuantumState.from_vector(_kron_all(factors))


def _complement_projector(state: QuantumState) -> HermitianOperator:
    v = state.amplitudes
    return HermitianOperator(np.eye(state.dim) - np.outer(v, v.conj()))


def _interpolating_hamiltonian(
    h1: HermitianOperator, h2: HermitianOperator, T: float, kind: ScheduleKind
) -> TimeDepHamiltonian:
    return TimeDepHamiltonian(
        (
            LocalTerm(ramp(kind, T, rising=False), h1),
            LocalTerm(ramp(kind, T, rising=True), h2),
        ),
        (0.0, 1.0),
    )


def build_grover(
    n_qubits: int,
    target: QuantumState | ArrayLike,
    T: float,
    schedule_kind: ScheduleKind = "linear",
) -> AdiabaticProblem:
    """Adiabatic Grover search with h₁ = I − |+⟩⟨+|^⊗n and h₂ = I − |φ⟩⟨φ|.

    Args:
        n_qubits: Number of qubits n.
        target: Normalized target state of dimension 2^n.
        T: Time scale; f₁ = T(1 − f), f₂ = T·f.
        schedule_kind: Interpolation f, "linear" or "sin".

    Returns:
        The adiabatic problem starting in |+⟩^⊗n.

    Raises:
        InvalidStateError: If the target is not normalized.
    """
    phi = target if isinstance(target, QuantumState) else QuantumState(target)
    if phi.dim != 2**n_qubits:
        raise InvalidStateError(f"target has dimension {phi.dim}, not {2**n_qubits}")
    initial = plus_state(n_qubits)
    hamiltonian = _interpolating_hamiltonian(
        _complement_projector(initial), _complement_projector(phi), T, schedule_kind
    )
    return AdiabaticProblem(hamiltonian, initial, phi, float(T))


def random_digraph(
    n_nodes: int, rng: np.random.Generator, p: float = 0.5
) -> NDArray[np.int_]:
    """Uniform random directed graph without self loops, edges with probability p."""
    adjacency = (rng.random((n_nodes, n_nodes)) < p).astype(int)
    np.fill_diagonal(adjacency, 0)
    return adjacency


def transition_matrix(adjacency: ArrayLike) -> NDArray[np.float64]:
    """Random-walk matrix P(i, j): 1/d(i) along edges, uniform rows if dangling."""
    a = np.asarray(adjacency, dtype=np.float64)
    size = a.shape[0]
    degree = a.sum(axis=1)
    p = np.empty_like(a)
    dangling = degree == 0
    p[dangling] = 1.0 / size
    p[~dangling] = a[~dangling] / degree[~dangling, None]
    return p


def google_matrix(adjacency: ArrayLike, alpha: float = 0.85) -> NDArray[np.float64]:
    """G = αP^T + (1 − α)E with E the all-1/2^n matrix; columns sum to one."""
    p = transition_matrix(adjacency)
    size = p.shape[0]
    return alpha * p.T + (1.0 - alpha) * np.full((size, size), 1.0 / size)


def build_pagerank(
    adjacency: ArrayLike,
    alpha: float = 0.85,
    T: float = 40.0,
    schedule_kind: ScheduleKind = "linear",
) -> AdiabaticProblem:
    """Adiabatic PageRank with h₂ = (I − G)^†(I − G).

    Args:
        adjacency: Square 0/1 matrix of power-of-two dimension.
        alpha: Damping factor of the Google matrix.
        T: Time scale.
        schedule_kind: Interpolation f, "linear" or "sin".

    Returns:
        The adiabatic problem whose target is the normalized PageRank vector.
    """
    a = np.asarray(adjacency)
    size = a.shape[0]
    if a.ndim != 2 or a.shape[1] != size or size < 2 or size & (size - 1):
        raise PreconditionError(f"adjacency must be square of size 2^n, got {a.shape}")
    n_qubits = size.bit_length() - 1
    g = google_matrix(a, alpha)
    residual = np.eye(size) - g
    h2 = HermitianOperator(residual.T @ residual)
    _, vectors = h2.eigh
    ground = vectors[:, 0]
    # fix the global phase so the PageRank amplitudes come out non-negative
    ground = ground * np.exp(-1j * np.angle(ground[np.argmax(np.abs(ground))]))
    target = QuantumState.from_vector(ground)
    initial = plus_state(n_qubits)
    hamiltonian = _interpolating_hamiltonian(
        _complement_projector(initial), h2, T, schedule_kind
    )
    return AdiabaticProblem(hamiltonian, initial, target, float(T))


def _site_operator(single: NDArray, site: int, n_sites: int) -> NDArray:
    factors = [np.eye(2, dtype=np.complex128)] * n_sites
    factors[site] = single
    return _kron_all(factors)


def build_ising(
    L: int, h_x: float, J: float = ISING_J, h_z: float = ISING_H_Z
) -> TimeDepHamiltonian:
    """Periodic transverse-field Ising chain with a pulsed transverse field.

    h₁ = Σ_j h_X σ_X^(j) driven by f₁(t) = π sin(πt); h₂ = Σ_j J σ_Z^(j)σ_Z^(j+1)
    + h_Z σ_Z^(j) with constant f₂ = π; site L+1 wraps to site 1.
    """
    if L < 2:
        raise PreconditionError(f"Ising chain needs L >= 2, got {L}")
    dim = 2**L
    h1 = np.zeros((dim, dim), dtype=np.complex128)
    h2 = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(L):
        z_j = _site_operator(PAULI_Z, j, L)
        h1 += h_x * _site_operator(PAULI_X, j, L)
        h2 += J * z_j @ _site_operator(PAULI_Z, (j + 1) % L, L) + h_z * z_j
    return TimeDepHamiltonian(
        (
            LocalTerm(sine_pulse(math.pi, math.pi), HermitianOperator(h1)),
            LocalTerm(constant(math.pi), HermitianOperator(h2)),
        ),
        (0.0, 1.0),
    )


def ising_initial_state(L: int) -> QuantumState:
    """The Ising chain's initial state |+⟩^⊗L."""
    return plus_state(L)


def _first_successful(
    draw: Callable[[], AdiabaticProblem],
    min_success: float,
    max_draws: int,
    label: str,
) -> AdiabaticProblem:
    for attempt in range(max_draws):
        problem = draw()
        if min_success <= 0:
            return problem
        success = problem.success_probability()
        if success >= min_success:
            logger.debug("%s instance accepted on draw %d", label, attempt + 1)
            return problem
        logger.debug("%s draw %d rejected: success %.4f", label, attempt + 1, success)
    raise PreconditionError(
        f"no {label} instance reached success {min_success} in {max_draws} draws"
    )


def draw_grover_problem(
    n_qubits: int,
    T: float,
    schedule_kind: ScheduleKind,
    rng: np.random.Generator,
    min_success: float = 0.99,
    max_draws: int = 100,
) -> AdiabaticProblem:
    """Draw random product targets until the exact adiabatic run succeeds."""
    return _first_successful(
        lambda: build_grover(
            n_qubits, random_product_state(n_qubits, rng), T, schedule_kind
        ),
        min_success,
        max_draws,
        "grover",
    )


def draw_pagerank_problem(
    n_qubits: int,
    alpha: float,
    T: float,
    schedule_kind: ScheduleKind,
    rng: np.random.Generator,
    min_success: float = 0.99,
    max_draws: int = 100,
    edge_probability: float = 0.5,
) -> AdiabaticProblem:
    """Draw random digraphs until the exact adiabatic run reaches the PageRank state."""
    return _first_successful(
        lambda: build_pagerank(
            random_digraph(2**n_qubits, rng, edge_probability),
            alpha,
            T,
            schedule_kind,
        ),
        min_success,
        max_draws,
        "pagerank",
    )


class ProblemSpec(BaseModel):
    """JSON-serializable description of one benchmark problem family."""

    kind: Literal["grover", "pagerank", "ising"] = "grover"
    n: int = Field(default=2, ge=1, le=10)
    T: float = Field(default=40.0, gt=0)
    schedule: Literal["linear", "sin"] = "linear"
    alpha: float = Field(default=0.85, ge=0.0, le=1.0)
    h_x: float = -1.0
    min_success: float = Field(default=0.99, ge=0.0, le=1.0)
    edge_probability: float = Field(default=0.5, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def check_sites(self) -> "ProblemSpec":
        """Ising chains need at least two sites."""
        if self.kind == "ising" and self.n < 2:
            raise ValueError("ising problems need n >= 2 sites")
        return self

    def build(self, seed: int) -> ProblemInstance:
        """Materialize the problem for one random seed.

        Args:
            seed: Seed for the target or graph draw (ignored for Ising).

        Returns:
            ProblemInstance ready for the bench.
        """
        rng = np.random.default_rng(seed)
        if self.kind == "ising":
            return ProblemInstance(
                label=f"ising-L{self.n}-hx{self.h_x:g}",
                hamiltonian=build_ising(self.n, self.h_x),
                initial_state=ising_initial_state(self.n),
            )
        if self.kind == "grover":
            problem = draw_grover_problem(
                self.n, self.T, self.schedule, rng, self.min_success
            )
        else:
            problem = draw_pagerank_problem(
                self.n,
                self.alpha,
                self.T,
                self.schedule,
                rng,
                self.min_success,
                edge_probability=self.edge_probability,
            )
        return ProblemInstance(
            label=f"{self.kind}-n{self.n}-{self.schedule}-seed{seed}",
            hamiltonian=problem.hamiltonian,
            initial_state=problem.initial_state,
            target_state=problem.target_state,
        )
