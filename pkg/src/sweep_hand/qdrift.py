"""Time-dependent qDrift channels, bias constants and trajectory sampling.

Channels are evaluated as exact expectations over the sampled single-term
exponentials; ``sample_trajectories`` realizes the same channel by Monte
Carlo over random gate strings.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from sweep_hand.exceptions import PreconditionError
from sweep_hand.hamiltonians.model import LocalTerm, TimeDepHamiltonian
from sweep_hand.operators import (
    ComplexMatrix,
    DensityOperator,
    HermitianOperator,
    QuantumState,
    trace_norm,
)
from sweep_hand.quadrature import gauss_legendre

__all__ = [
    "DEFAULT_QUAD_NODES",
    "DiscreteMeasure",
    "HybridMeasure",
    "ChannelResult",
    "Channel",
    "channel_v1",
    "channel_v2",
    "continuous_qdrift_channel",
    "bias_constant_v1",
    "bias_constant_hybrid",
    "nested_commutator_norms",
    "measure_transform",
    "evolve_channel",
    "sample_trajectories",
]

logger = logging.getLogger(__name__)

DEFAULT_QUAD_NODES = 32
MEASURE_SUM_TOL = 1e-12
NORMALIZATION_TOL = 1e-8

DensityFn = Callable[[int, NDArray[np.float64]], ArrayLike]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Probability λ_k of sampling local term k.

    Attributes:
        weights: λ_1..λ_Λ, each positive, summing to 1.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        if not weights or any(w <= 0.0 for w in weights):
            raise PreconditionError(f"qDrift weights must be positive, got {weights}")
        total = math.fsum(weights)
        if abs(total - 1.0) > MEASURE_SUM_TOL:
            raise PreconditionError(f"qDrift weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", weights)

    @property
    def n_terms(self) -> int:
        return len(self.weights)

    @classmethod
    def normalized(cls, raw: Sequence[float]) -> "DiscreteMeasure":
        """Scale nonnegative raw weights to sum to one."""
        total = math.fsum(abs(w) for w in raw)
        if total == 0.0:
            raise PreconditionError("cannot normalize all-zero qDrift weights")
        return cls(tuple(abs(w) / total for w in raw))

    @classmethod
    def uniform(cls, n_terms: int) -> "DiscreteMeasure":
        return cls((1.0 / n_terms,) * n_terms)

    @classmethod
    def proportional(
        cls, hamiltonian: TimeDepHamiltonian, t: float, dt: float
    ) -> "DiscreteMeasure":
        """λ_k ∝ |∫_t^{t+Δt} f_k|, the importance weights of the step."""
        schedules = hamiltonian.schedules
        return cls.normalized([s.definite_integral(t, t + dt) for s in schedules])


@dataclass(frozen=True, eq=False)
class HybridMeasure:
    """Joint density μ(k, r) over term index k and r ∈ [0, 1].

    Attributes:
        density: Vectorized μ(k, r) for zero-based k.
        n_terms: Number of local terms Λ.
        name: Label used in logs and reports.
    """

    density: DensityFn
    n_terms: int
    name: str = "hybrid"

    def value(self, k: int, r: ArrayLike) -> NDArray[np.float64]:
        r = np.atleast_1d(np.asarray(r, dtype=np.float64))
        return np.broadcast_to(
            np.asarray(self.density(k, r), dtype=np.float64), r.shape
        ).copy()

    def marginals(self, quad_nodes: int = DEFAULT_QUAD_NODES) -> tuple[float, ...]:
        """∫₀¹ μ(k, r) dr for every k."""
        nodes, weights = gauss_legendre(0.0, 1.0, quad_nodes)
        return tuple(
            float(np.dot(weights, self.value(k, nodes))) for k in range(self.n_terms)
        )

    def require_normalized(self, quad_nodes: int = DEFAULT_QUAD_NODES) -> None:
        """Raise unless μ is positive at the nodes and integrates to one."""
        nodes, _ = gauss_legendre(0.0, 1.0, quad_nodes)
        for k in range(self.n_terms):
            if np.any(self.value(k, nodes) <= 0.0):
                raise PreconditionError(f"{self.name}: density not positive for k={k}")
        total = math.fsum(self.marginals(quad_nodes))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise PreconditionError(f"{self.name}: density integrates to {total!r}")

    @classmethod
    def from_discrete(cls, measure: DiscreteMeasure) -> "HybridMeasure":
        """μ(k, r) = λ_k, constant in r."""
        weights = measure.weights
        return cls(
            density=lambda k, r: np.full_like(r, weights[k]),
            n_terms=measure.n_terms,
            name="discrete",
        )

    @classmethod
    def uniform(cls, n_terms: int) -> "HybridMeasure":
        return cls.from_discrete(DiscreteMeasure.uniform(n_terms))

    @classmethod
    def tilted(cls, measure: DiscreteMeasure, slope: float = 0.5) -> "HybridMeasure":
        """μ(k, r) = λ_k·(1 + slope·(r − ½)); marginals stay λ_k.

        Raises:
            PreconditionError: If |slope| ≥ 2, which makes μ vanish.
        """
        if abs(slope) >= 2.0:
            raise PreconditionError(f"tilt slope {slope} makes the density vanish")
        weights = measure.weights
        return cls(
            density=lambda k, r: weights[k] * (1.0 + slope * (r - 0.5)),
            n_terms=measure.n_terms,
            name=f"tilted({slope:g})",
        )


@dataclass(frozen=True, eq=False)
class ChannelResult:
    """Output of one exact channel step.

    Attributes:
        output: The channel applied to the input density operator.
        bias_constant: Second-order error constant C of the step.
        bias_bound: C·Δt²/2.
    """

    output: DensityOperator
    bias_constant: float
    bias_bound: float


Channel = Callable[[DensityOperator, TimeDepHamiltonian, float, float], ChannelResult]


def _conjugate(unitary: ComplexMatrix, rho: ComplexMatrix) -> ComplexMatrix:
    return unitary @ rho @ unitary.conj().T


def _mixture(
    rho: DensityOperator,
    operators: Sequence[HermitianOperator],
    branches: Sequence[tuple[int, float, float]],
) -> DensityOperator:
    """Σ p·e^{−iθh_k} ρ e^{iθh_k} over (k, θ, p) branches, p renormalized."""
    total = math.fsum(p for _, _, p in branches)
    out = np.zeros_like(rho.entries)
    for k, theta, p in branches:
        out += (p / total) * _conjugate(operators[k].exponential(theta), rho.entries)
    return DensityOperator.from_matrix(out)


def nested_commutator_norms(
    operators: Sequence[HermitianOperator], rho: DensityOperator
) -> NDArray[np.float64]:
    """Matrix of ‖[h_{k1}, [h_{k2}, ρ]]‖₁ over term pairs."""
    n = len(operators)
    norms = np.zeros((n, n))
    for k2, h2 in enumerate(operators):
        inner = h2.entries @ rho.entries - rho.entries @ h2.entries
        for k1, h1 in enumerate(operators):
            norms[k1, k2] = trace_norm(h1.entries @ inner - inner @ h1.entries)
    return norms


def _bias_constant(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t_eval: float,
    inverse_weights: Sequence[float],
) -> float:
    terms = hamiltonian.local_terms()
    values = np.array([abs(term.schedule.value(t_eval)) for term in terms])
    norms = nested_commutator_norms([term.operator for term in terms], rho)
    delta = np.diag(np.asarray(inverse_weights, dtype=np.float64))
    factors = np.abs(1.0 - delta)
    return float(np.sum(factors * np.outer(values, values) * norms))


def bias_constant_v1(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    measure: DiscreteMeasure,
) -> float:
    """Second-order bias constant of the discrete channel.

    C = Σ_{k1,k2} |λ_{k2} − δ_{k1k2}| |f_{k1} f_{k2}|(t+Δt) / λ_{k2}
    · ‖[h_{k1}, [h_{k2}, ρ]]‖₁
    """
    return _bias_constant(
        rho, hamiltonian, t + dt, [1.0 / lam for lam in measure.weights]
    )


def bias_constant_hybrid(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    mu: HybridMeasure,
    quad_nodes: int = DEFAULT_QUAD_NODES,
) -> float:
    """Bias constant of the hybrid channel.

    The discrete 1/λ_k is replaced by ∫₀¹ dr/μ(k, r), so the constant
    reduces to ``bias_constant_v1`` when μ is constant in r.
    """
    nodes, weights = gauss_legendre(0.0, 1.0, quad_nodes)
    inverse = [
        float(np.dot(weights, 1.0 / mu.value(k, nodes))) for k in range(mu.n_terms)
    ]
    return _bias_constant(rho, hamiltonian, t + dt, inverse)


def _require_matching(hamiltonian: TimeDepHamiltonian, n_terms: int) -> None:
    if hamiltonian.n_terms != n_terms:
        raise PreconditionError(
            f"measure covers {n_terms} terms, Hamiltonian has {hamiltonian.n_terms}"
        )


def channel_v1(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    measure: DiscreteMeasure | None = None,
) -> ChannelResult:
    """Discrete time-dependent qDrift channel of one step.

    Σ_k λ_k e^{−i(∫f_k/λ_k)h_k} ρ e^{+i(∫f_k/λ_k)h_k}

    Args:
        rho: Input state.
        hamiltonian: Decomposition of f(t)·h terms.
        t: Step start.
        dt: Step length.
        measure: Sampling weights; defaults to the proportional weights.

    Returns:
        The output state and the second-order bias bound.
    """
    terms = hamiltonian.local_terms()
    if measure is None:
        measure = DiscreteMeasure.proportional(hamiltonian, t, dt)
    _require_matching(hamiltonian, measure.n_terms)
    branches = [
        (k, term.schedule.definite_integral(t, t + dt) / lam, lam)
        for k, (term, lam) in enumerate(zip(terms, measure.weights, strict=True))
    ]
    output = _mixture(rho, [term.operator for term in terms], branches)
    constant = bias_constant_v1(rho, hamiltonian, t, dt, measure)
    return ChannelResult(output, constant, 0.5 * constant * dt * dt)


def channel_v2(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    mu: HybridMeasure,
    quad_nodes: int = DEFAULT_QUAD_NODES,
) -> ChannelResult:
    """Hybrid time-dependent qDrift channel of one step.

    Σ_k ∫₀¹ dr μ(k, r) e^{−i(∫f_k/μ(k,r))h_k} ρ e^{+i(∫f_k/μ(k,r))h_k}, with
    the r-integral taken by Gauss-Legendre quadrature.

    Raises:
        PreconditionError: If quad_nodes < 2 or μ is not a normalized density.
    """
    if quad_nodes < 2:
        raise PreconditionError(f"quad_nodes must be >= 2, got {quad_nodes}")
    terms = hamiltonian.local_terms()
    _require_matching(hamiltonian, mu.n_terms)
    mu.require_normalized(quad_nodes)
    nodes, weights = gauss_legendre(0.0, 1.0, quad_nodes)
    branches: list[tuple[int, float, float]] = []
    for k, term in enumerate(terms):
        integral = term.schedule.definite_integral(t, t + dt)
        density = mu.value(k, nodes)
        branches.extend(
            (k, integral / m, w * m) for m, w in zip(density, weights, strict=True)
        )
    output = _mixture(rho, [term.operator for term in terms], branches)
    constant = bias_constant_hybrid(rho, hamiltonian, t, dt, mu, quad_nodes)
    return ChannelResult(output, constant, 0.5 * constant * dt * dt)


def continuous_qdrift_channel(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    t: float,
    dt: float,
    q: HybridMeasure,
    quad_nodes: int = DEFAULT_QUAD_NODES,
) -> ChannelResult:
    """Continuous qDrift channel of one step.

    Σ_k ∫₀¹ dτ q(k, τ) e^{−iΔt H_k(t+τΔt)/q(k,τ)} ρ e^{+i…}

    Raises:
        PreconditionError: If quad_nodes < 2 or q is not a normalized density.
    """
    if quad_nodes < 2:
        raise PreconditionError(f"quad_nodes must be >= 2, got {quad_nodes}")
    terms = hamiltonian.local_terms()
    _require_matching(hamiltonian, q.n_terms)
    q.require_normalized(quad_nodes)
    nodes, weights = gauss_legendre(0.0, 1.0, quad_nodes)
    branches: list[tuple[int, float, float]] = []
    for k, term in enumerate(terms):
        values = np.asarray(term.schedule.value(t + dt * nodes))
        density = q.value(k, nodes)
        branches.extend(
            (k, dt * f / m, w * m)
            for f, m, w in zip(values, density, weights, strict=True)
        )
    output = _mixture(rho, [term.operator for term in terms], branches)
    constant = bias_constant_hybrid(rho, hamiltonian, t, dt, q, quad_nodes)
    return ChannelResult(output, constant, 0.5 * constant * dt * dt)


def _cumulative(term: LocalTerm, t: float, dt: float, tau: ArrayLike) -> NDArray:
    """F_k(τ) = ∫₀^τ f_k(t + Δt τ') dτ'."""
    taus = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    return np.array(
        [term.schedule.definite_integral(t, t + dt * float(x)) / dt for x in taus]
    )


def measure_transform(
    mu: HybridMeasure, hamiltonian: TimeDepHamiltonian, t: float, dt: float
) -> HybridMeasure:
    """Pull a hybrid measure back to clock time.

    Returns q with q(k, τ) = μ(k, F_k(τ)/F_k(1))·f_k(t + Δtτ)/F_k(1), so
    that q(k, τ_k(r)) = μ(k, r)·f_k(t + Δtτ_k(r))/F_k(1). The continuous
    channel with q then equals the hybrid channel with μ. Evaluating q at a
    clock time τ only needs r = F_k(τ)/F_k(1), so τ_k itself is never solved for.

    Raises:
        PreconditionError: If some f_k is not positive on [t, t + Δt].
    """
    terms = hamiltonian.local_terms()
    _require_matching(hamiltonian, mu.n_terms)
    for k, term in enumerate(terms):
        if not term.schedule.is_positive_on(t, t + dt):
            raise PreconditionError(
                f"measure transform needs f_{k} > 0 on [{t}, {t + dt}]"
            )
    totals = [float(_cumulative(term, t, dt, 1.0)[0]) for term in terms]

    def density(k: int, tau: NDArray[np.float64]) -> NDArray[np.float64]:
        fraction = _cumulative(terms[k], t, dt, tau) / totals[k]
        values = np.asarray(terms[k].schedule.value(t + dt * tau), dtype=np.float64)
        return mu.value(k, fraction) * values / totals[k]

    return HybridMeasure(density, mu.n_terms, name=f"transformed({mu.name})")


def evolve_channel(
    rho: DensityOperator,
    hamiltonian: TimeDepHamiltonian,
    channel: Channel,
    n_steps: int,
    dt: float | None = None,
) -> DensityOperator:
    """Iterate a one-step channel over a uniform grid from the interval start.

    Args:
        rho: Initial state.
        hamiltonian: The Hamiltonian.
        channel: Callable (ρ, H, t, Δt) returning a ChannelResult.
        n_steps: Number of steps.
        dt: Step length; defaults to the interval length over n_steps.

    Returns:
        The final density operator.
    """
    t_i, t_f = hamiltonian.interval
    step = (t_f - t_i) / n_steps if dt is None else dt
    state = rho
    for j in range(n_steps):
        state = channel(state, hamiltonian, t_i + j * step, step).output
    return state


MeasureRule = Callable[[TimeDepHamiltonian, float, float], DiscreteMeasure]


def sample_trajectories(
    psi: QuantumState,
    hamiltonian: TimeDepHamiltonian,
    measure: DiscreteMeasure | MeasureRule,
    dt: float,
    n_steps: int,
    n_samples: int,
    seed: int,
) -> DensityOperator:
    """Monte Carlo estimate of the iterated discrete channel.

    Each trajectory draws one term per step with probability λ_k and applies
    e^{−i(∫f_k/λ_k)h_k}. Trajectory i uses the generator seeded with
    ``[seed, i]``, so results do not depend on evaluation order.

    Args:
        psi: Initial pure state.
        hamiltonian: Decomposition of f(t)·h terms.
        measure: Fixed weights, or a rule (H, t, Δt) giving each step's weights.
        dt: Step length.
        n_steps: Steps per trajectory, starting at the interval start.
        n_samples: Number of trajectories.
        seed: Base seed.

    Returns:
        The averaged projector.
    """
    if n_samples < 1:
        raise PreconditionError(f"n_samples must be >= 1, got {n_samples}")
    terms = hamiltonian.local_terms()
    t_i = hamiltonian.interval[0]
    probabilities: list[NDArray[np.float64]] = []
    gates: list[list[ComplexMatrix]] = []
    for j in range(n_steps):
        t = t_i + j * dt
        if isinstance(measure, DiscreteMeasure):
            lam = measure
        else:
            lam = measure(hamiltonian, t, dt)
        _require_matching(hamiltonian, lam.n_terms)
        probabilities.append(np.array(lam.weights))
        integrals = [term.schedule.definite_integral(t, t + dt) for term in terms]
        gates.append(
            [
                term.operator.exponential(integral / w)
                for term, integral, w in zip(terms, integrals, lam.weights, strict=True)
            ]
        )

    accumulated = np.zeros((psi.dim, psi.dim), dtype=np.complex128)
    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        state = psi.amplitudes.copy()
        for j in range(n_steps):
            k = int(rng.choice(len(terms), p=probabilities[j]))
            state = gates[j][k] @ state
        accumulated += np.outer(state, state.conj())
    logger.debug("sampled %d trajectories of %d steps", n_samples, n_steps)
    return DensityOperator.from_matrix(accumulated / n_samples)
