"""Benchmark runner: compose each configured scheme on a step grid and score it.

Every (scheme, N, seed) record is independent. Records are computed in a
thread pool and sorted by (scheme, N, seed) afterwards, so the emitted
files do not depend on the schedule.
"""

import logging
import math
import time
from collections import defaultdict
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from sweep_hand.config import BenchConfig, SchemeConfig, Settings, get_settings
from sweep_hand.exceptions import PreconditionError, SweepHandError
from sweep_hand.formulas import (
    compose_evolution,
    get_scheme,
    hdr_step,
    iacs_step,
    mpf_coefficients,
    mpf_step,
    pointwise_step,
)
from sweep_hand.formulas.product import StepFn
from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.hamiltonians.problems import ProblemInstance
from sweep_hand.operators import (
    ComplexMatrix,
    DensityOperator,
    QuantumState,
    UnitaryOperator,
    spectral_distance,
    trace_distance,
)
from sweep_hand.qdrift import (
    Channel,
    ChannelResult,
    DiscreteMeasure,
    HybridMeasure,
    channel_v1,
    channel_v2,
    continuous_qdrift_channel,
    evolve_channel,
    sample_trajectories,
)
from sweep_hand.services.reference_cache import ReferenceCache
from sweep_hand.taylor import evolve_taylor2

__all__ = [
    "GATE_COUNTING",
    "BenchRecord",
    "run_benchmark",
    "aggregate",
    "scheme_series",
]

logger = logging.getLogger(__name__)

# Written into the CSV metadata line.
GATE_COUNTING = {
    "pointwise": "merged primitive exponentials per step",
    "hdr": "merged primitive exponentials per step",
    "iacs": "merged primitive exponentials per step",
    "mpf": "sum of primitive exponentials over all branches",
    "qdrift": "one exponential per step of a trajectory",
    "taylor2": "LCU terms per step (1 + L + L^2)",
}


@dataclass(frozen=True)
class BenchRecord:
    """One scored (scheme, N, seed) point.

    Attributes:
        scheme: Scheme identifier from the config.
        family: Scheme family.
        base: Base splitting scheme name.
        N: Number of steps.
        seed: Problem seed, or None for a seed-averaged record.
        gates: Gate count under the family's counting rule.
        error: Distance to the reference; NaN when the record failed.
        seconds: Wall time of the evolution.
        failure: Failure message, or None.
    """

    scheme: str
    family: str
    base: str
    N: int
    seed: int | None
    gates: int
    error: float
    seconds: float
    failure: str | None = None

    @property
    def ok(self) -> bool:
        """Check the record holds a usable error value."""
        return self.failure is None and math.isfinite(self.error)

    @property
    def sort_key(self) -> tuple[str, int, int]:
        return (self.scheme, self.N, -1 if self.seed is None else self.seed)


@dataclass(frozen=True, eq=False)
class _Outcome:
    """Final operator or state produced by one scheme run."""

    gates: int
    unitary: UnitaryOperator | None = None
    operator: ComplexMatrix | None = None
    density: DensityOperator | None = None


def _product_step(scheme: SchemeConfig) -> StepFn:
    coeffs = get_scheme(scheme.base)
    if scheme.family == "pointwise":
        return partial(pointwise_step, coeffs=coeffs, lambda_prime=scheme.lambda_prime)
    if scheme.family == "hdr":
        return partial(hdr_step, coeffs=coeffs)
    return partial(iacs_step, coeffs=coeffs)


def _run_mpf(
    scheme: SchemeConfig, instance: ProblemInstance, n_steps: int
) -> _Outcome:
    hamiltonian = instance.hamiltonian
    spec = mpf_coefficients(scheme.k)
    variant = "hdr" if scheme.variant == "hdr" else "pointwise"
    t_i, t_f = hamiltonian.interval
    dt = (t_f - t_i) / n_steps
    result = np.eye(hamiltonian.dim, dtype=np.complex128)
    gates = 0
    for j in range(n_steps):
        step = mpf_step(hamiltonian, t_i + j * dt, dt, spec, variant)
        result = step.operator @ result
        gates += step.gate_count
    return _Outcome(gates, operator=result)


def _qdrift_channel(variant: str | None, quad_nodes: int) -> Channel:
    if variant == "v1":
        return channel_v1

    def hybrid(
        rho: DensityOperator, hamiltonian: TimeDepHamiltonian, t: float, dt: float
    ) -> ChannelResult:
        lam = DiscreteMeasure.proportional(hamiltonian, t, dt)
        if variant == "v2":
            mu = HybridMeasure.tilted(lam)
            return channel_v2(rho, hamiltonian, t, dt, mu, quad_nodes)
        q = HybridMeasure.from_discrete(lam)
        return continuous_qdrift_channel(rho, hamiltonian, t, dt, q, quad_nodes)

    return hybrid


def _run_qdrift(
    scheme: SchemeConfig,
    instance: ProblemInstance,
    n_steps: int,
    seed: int,
    settings: Settings,
) -> _Outcome:
    hamiltonian = instance.hamiltonian
    if scheme.samples > 0:
        t_i, t_f = hamiltonian.interval
        density = sample_trajectories(
            instance.initial_state,
            hamiltonian,
            DiscreteMeasure.proportional,
            (t_f - t_i) / n_steps,
            n_steps,
            scheme.samples,
            seed,
        )
    else:
        channel = _qdrift_channel(scheme.variant, settings.quadrature_nodes)
        density = evolve_channel(
            instance.initial_state.projector(), hamiltonian, channel, n_steps
        )
    return _Outcome(n_steps, density=density)


def _evolve(
    scheme: SchemeConfig,
    instance: ProblemInstance,
    n_steps: int,
    seed: int,
    settings: Settings,
) -> _Outcome:
    if scheme.family in ("pointwise", "hdr", "iacs"):
        unitary, gates = compose_evolution(
            _product_step(scheme), instance.hamiltonian, n_steps
        )
        return _Outcome(gates, unitary=unitary)
    if scheme.family == "mpf":
        return _run_mpf(scheme, instance, n_steps)
    if scheme.family == "qdrift":
        return _run_qdrift(scheme, instance, n_steps, seed, settings)
    run = evolve_taylor2(instance.initial_state, instance.hamiltonian, n_steps)
    n_terms = instance.hamiltonian.n_terms
    return _Outcome(n_steps * (1 + n_terms + n_terms**2), density=run.state.projector())


def _final_density(outcome: _Outcome, psi: QuantumState) -> DensityOperator:
    if outcome.density is not None:
        return outcome.density
    if outcome.unitary is not None:
        return outcome.unitary.apply(psi).projector()
    assert outcome.operator is not None
    return QuantumState.from_vector(outcome.operator @ psi.amplitudes).projector()


def _score(
    outcome: _Outcome,
    reference: UnitaryOperator,
    psi: QuantumState,
    metric: str,
) -> float:
    if metric == "operator":
        matrix = outcome.unitary if outcome.unitary is not None else outcome.operator
        if matrix is None:
            raise PreconditionError("operator metric needs a propagator-valued scheme")
        return spectral_distance(matrix, reference)
    target = reference.apply(psi).projector()
    return trace_distance(_final_density(outcome, psi), target)


def _run_record(
    scheme: SchemeConfig,
    instance: ProblemInstance,
    n_steps: int,
    seed: int,
    config: BenchConfig,
    settings: Settings,
    cache: ReferenceCache,
) -> BenchRecord:
    scheme_id = scheme.scheme_id
    base = scheme.base if scheme.family not in ("qdrift", "taylor2") else "-"
    try:
        t_i, t_f = instance.hamiltonian.interval
        reference = cache.solve(instance.hamiltonian, t_i, t_f, settings.reference_tol)
        started = time.perf_counter()
        outcome = _evolve(scheme, instance, n_steps, seed, settings)
        seconds = time.perf_counter() - started
        error = _score(
            outcome, reference.propagator, instance.initial_state, config.run.metric
        )
    except (SweepHandError, np.linalg.LinAlgError, ArithmeticError) as e:
        logger.warning("%s N=%d seed=%d failed: %s", scheme_id, n_steps, seed, e)
        return BenchRecord(
            scheme_id, scheme.family, base, n_steps, seed, 0, math.nan, 0.0, str(e)
        )
    return BenchRecord(
        scheme_id, scheme.family, base, n_steps, seed, outcome.gates, error, seconds
    )


def run_benchmark(
    config: BenchConfig, settings: Settings | None = None
) -> list[BenchRecord]:
    """Run every (scheme, N, seed) combination of a benchmark config.

    The error compares the final state with the reference propagator applied
    to the initial state, not with the adiabatic target.

    Args:
        config: The validated benchmark description.
        settings: Process settings; read from the environment when None.

    Returns:
        Per-seed records sorted by (scheme, N, seed). Failed records are
        kept with ``failure`` set.
    """
    settings = settings or get_settings()
    cache = ReferenceCache.get_instance()
    instances = {seed: config.problem.build(seed) for seed in config.run.seeds}
    tasks = [
        (scheme, instances[seed], n_steps, seed)
        for scheme in config.schemes
        for n_steps in config.run.n_grid
        for seed in config.run.seeds
    ]
    logger.info(
        "running %d records (%d schemes, %d grid points, %d seeds)",
        len(tasks),
        len(config.schemes),
        len(config.run.n_grid),
        len(config.run.seeds),
    )

    def run(task: tuple[SchemeConfig, ProblemInstance, int, int]) -> BenchRecord:
        return _run_record(*task, config, settings, cache)

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            records = list(pool.map(run, tasks))
    else:
        records = [run(task) for task in tasks]

    failed = sum(1 for record in records if not record.ok)
    if failed:
        logger.warning("%d of %d records failed", failed, len(records))
    logger.info("reference cache: %s", cache.stats)
    return sorted(records, key=lambda r: r.sort_key)


def aggregate(records: Iterable[BenchRecord]) -> list[BenchRecord]:
    """Average successful records over seeds for each (scheme, N).

    A (scheme, N) point with no successful seed keeps the first failure.
    """
    groups: dict[tuple[str, int], list[BenchRecord]] = defaultdict(list)
    for record in records:
        groups[(record.scheme, record.N)].append(record)

    averaged: list[BenchRecord] = []
    for (scheme, n_steps), members in sorted(groups.items()):
        good = [r for r in members if r.ok]
        first = members[0]
        if not good:
            averaged.append(
                BenchRecord(
                    scheme=scheme,
                    family=first.family,
                    base=first.base,
                    N=n_steps,
                    seed=None,
                    gates=0,
                    error=math.nan,
                    seconds=0.0,
                    failure=first.failure,
                )
            )
            continue
        averaged.append(
            BenchRecord(
                scheme=scheme,
                family=first.family,
                base=first.base,
                N=n_steps,
                seed=None,
                gates=good[0].gates,
                error=math.fsum(r.error for r in good) / len(good),
                seconds=math.fsum(r.seconds for r in good) / len(good),
            )
        )
    return averaged


def scheme_series(
    records: Iterable[BenchRecord],
) -> dict[str, list[tuple[int, float]]]:
    """(gates, error) points per scheme in record order, successful records only."""
    series: dict[str, list[tuple[int, float]]] = {}
    for record in records:
        points = series.setdefault(record.scheme, [])
        if record.ok:
            points.append((record.gates, record.error))
    return series
