"""Invariant checks behind the CLI subcommands.

Each routine returns a ``CheckRun``: a list of ``CheckResult`` verdicts plus
any bench records that were produced on the way, so the CLI can emit them.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from sweep_hand.analog import (
    GaussianClock,
    exact_state,
    omega_budget,
    rho_omega,
    richardson_state,
    smearing_fidelity_bound,
)
from sweep_hand.config import BenchConfig, RunConfig, SchemeConfig, Settings
from sweep_hand.exceptions import PreconditionError
from sweep_hand.formulas import (
    FRS,
    gate_count_table,
    get_scheme,
    hdr_gates,
    iacs_gates,
    mpf_coefficients,
    pointwise_gates,
)
from sweep_hand.hamiltonians import TimeDepHamiltonian
from sweep_hand.hamiltonians.problems import PAULI_X, PAULI_Z, ProblemSpec
from sweep_hand.hamiltonians.schedules import constant, ramp
from sweep_hand.operators import (
    DensityOperator,
    herm_expm,
    trace_distance,
)
from sweep_hand.qdrift import (
    DiscreteMeasure,
    HybridMeasure,
    channel_v1,
    channel_v2,
    continuous_qdrift_channel,
    evolve_channel,
    measure_transform,
    sample_trajectories,
)
from sweep_hand.reference import reference_propagator
from sweep_hand.services.bench import BenchRecord, aggregate, run_benchmark
from sweep_hand.services.fitting import fit_slope, ordering_fraction
from sweep_hand.utils import (
    CheckStatus,
    format_error,
    format_slope,
    get_fraction_status,
    get_slope_status,
    get_tolerance_status,
    worst_status,
)

__all__ = [
    "CheckResult",
    "CheckRun",
    "slope_check",
    "ordering_check",
    "bench_checks",
    "verify_order",
    "audit_gates",
    "qdrift_bias",
    "analog_sweep",
]

logger = logging.getLogger(__name__)

ORDER_GRID = [40, 57, 80, 113, 160, 226, 320, 453, 640]
ORDER_BASES = ("FRS", "FRO", "Suz4", "Ost4")
ORDER_FAMILIES = ("pointwise", "hdr", "iacs")

AUDIT_TERMS = (2, 3, 4)
# q = 1, 3, 4, 5
AUDIT_BASES = ("Strang", "FRS", "FRO", "Ost4")

BIAS_STEPS = (0.2, 0.1, 0.05, 0.025, 0.0125)
SAMPLE_COUNTS = (64, 256, 1024, 4096)
SINGLE_TERM_TOL = 1e-12
TRANSFORM_TOL = 1e-6

ANALOG_WIDTHS = (0.1, 0.05, 0.025, 0.0125)
STATIC_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    """Verdict of one invariant check.

    Attributes:
        name: Short check name.
        status: "pass", "warn" or "fail".
        detail: Human-readable explanation with the measured quantities.
        value: The headline number (slope, fraction, discrepancy), if any.
    """

    name: str
    status: CheckStatus
    detail: str
    value: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class CheckRun:
    """Container for the checks and records of one CLI subcommand."""

    title: str
    checks: list[CheckResult]
    records: list[BenchRecord] = field(default_factory=list)

    @property
    def status(self) -> CheckStatus:
        return worst_status([check.status for check in self.checks])

    @property
    def passed(self) -> bool:
        """Check every verdict passed."""
        return all(check.passed for check in self.checks)


def slope_check(
    name: str,
    points: Sequence[tuple[float, float]],
    expected: float,
    tolerance: float,
    window: tuple[float, float] | None,
) -> CheckResult:
    """Fit a log-log slope and grade it against the expected exponent."""
    try:
        fit = fit_slope(points, window)
    except PreconditionError as e:
        return CheckResult(name, "fail", str(e))
    status = get_slope_status(fit.slope, expected, tolerance)
    detail = (
        f"slope {format_slope(fit.slope)}, expected {expected:+g} ± {tolerance:g} "
        f"(R²={fit.r_squared:.3f}, {fit.n_points} points)"
    )
    return CheckResult(name, status, detail, fit.slope)


def ordering_check(
    records: Sequence[BenchRecord],
    better: str,
    worse: str,
    window: tuple[float, float],
    threshold: float,
) -> CheckResult:
    """Fraction of shared grid points where ``better`` is at least as accurate.

    Only points where both errors lie inside the window are compared.
    """
    name = f"ordering {better} <= {worse}"
    by_key = {(r.scheme, r.N): r for r in records if r.ok}
    low, high = window
    pairs = [
        (by_key[(better, n)].error, by_key[(worse, n)].error)
        for scheme, n in sorted(by_key)
        if scheme == better
        and (worse, n) in by_key
        and low <= by_key[(better, n)].error <= high
        and low <= by_key[(worse, n)].error <= high
    ]
    if not pairs:
        return CheckResult(name, "fail", "no shared grid points in the error window")
    fraction = ordering_fraction([b for b, _ in pairs], [w for _, w in pairs])
    ratios = sorted(w / b for b, w in pairs if b > 0)
    median = float(np.median(ratios)) if ratios else math.nan
    logger.info("%s: ratios %s", name, ", ".join(f"{r:.2f}" for r in ratios))
    detail = (
        f"{fraction:.0%} of {len(pairs)} points (threshold {threshold:.0%}), "
        f"median error ratio {median:.2f}"
    )
    return CheckResult(
        name, get_fraction_status(fraction, threshold), detail, fraction
    )


def bench_checks(
    config: BenchConfig, records: Sequence[BenchRecord]
) -> list[CheckResult]:
    """Slope and ordering checks requested by a benchmark config.

    Args:
        config: The benchmark description.
        records: Seed-averaged records.

    Returns:
        One slope check per scheme when ``expected_slope`` is set, an
        ordering check when ``ordering`` is set, and a failure check when
        any record failed.
    """
    run = config.run
    checks: list[CheckResult] = []
    failures = [r for r in records if not r.ok]
    if failures:
        checks.append(
            CheckResult(
                "records",
                "fail",
                f"{len(failures)} of {len(records)} points failed: "
                f"{failures[0].failure}",
                float(len(failures)),
            )
        )
    if run.expected_slope is not None:
        for scheme in config.schemes:
            points = [
                (r.gates, r.error)
                for r in records
                if r.scheme == scheme.scheme_id and r.ok
            ]
            checks.append(
                slope_check(
                    f"slope {scheme.scheme_id}",
                    points,
                    run.expected_slope,
                    run.slope_tolerance,
                    run.error_window,
                )
            )
    if run.ordering is not None:
        better, worse = run.ordering
        checks.append(
            ordering_check(
                records, better, worse, run.error_window, run.ordering_threshold
            )
        )
    return checks


def verify_order(
    settings: Settings,
    bases: Sequence[str] = ORDER_BASES,
    families: Sequence[str] = ORDER_FAMILIES,
    n_grid: Sequence[int] = ORDER_GRID,
) -> CheckRun:
    """Fourth-order convergence of the time-dependent product formulas.

    Runs every (family, base) pair on adiabatic Grover with two qubits,
    T = 40 and a linear schedule, scored in operator norm against the
    reference propagator, and expects a slope of −4 ± 0.5 in gate count.
    """
    schemes = [
        SchemeConfig.model_validate({"family": family, "base": base})
        for family in families
        for base in bases
    ]
    config = BenchConfig(
        problem=ProblemSpec(kind="grover", n=2, T=40.0, schedule="linear"),
        schemes=schemes,
        run=RunConfig(
            n_grid=list(n_grid),
            metric="operator",
            expected_slope=-4.0,
            slope_tolerance=0.5,
            output="verify-order",
        ),
    )
    records = aggregate(run_benchmark(config, settings))
    return CheckRun("verify-order", bench_checks(config, records), records)


def _audit_hamiltonian(n_terms: int) -> TimeDepHamiltonian:
    operators = [PAULI_X, PAULI_Z, (PAULI_X + PAULI_Z) / math.sqrt(2.0), PAULI_X]
    return TimeDepHamiltonian.from_pairs(
        [(constant(1.0 + 0.25 * k), operators[k]) for k in range(n_terms)]
    )


def audit_gates() -> CheckRun:
    """Compare produced gate sequences with the closed-form counts.

    Enumerates Λ ∈ {2, 3, 4}, q ∈ {1, 3, 4, 5} and every split index Λ′ for
    the pointwise scheme, the same (Λ, q) grid for the integrated-window
    scheme, and the seven-gate Magnus baseline.
    """
    t, dt = 0.3, 0.1
    pointwise_misses: list[str] = []
    hdr_misses: list[str] = []
    cases = 0
    for n_terms in AUDIT_TERMS:
        hamiltonian = _audit_hamiltonian(n_terms)
        for name in AUDIT_BASES:
            coeffs = get_scheme(name)
            for lambda_prime in range(n_terms + 1):
                cases += 1
                got = pointwise_gates(n_terms, t, dt, coeffs, lambda_prime).count
                want = gate_count_table(n_terms, coeffs.q, lambda_prime)
                if got != want:
                    pointwise_misses.append(
                        f"L={n_terms} {name} L'={lambda_prime}: {got} != {want}"
                    )
            got = hdr_gates(hamiltonian, t, dt, coeffs).count
            want = gate_count_table(n_terms, coeffs.q)
            if got != want:
                hdr_misses.append(f"L={n_terms} {name}: {got} != {want}")

    iacs_count = iacs_gates(_audit_hamiltonian(2), t, dt, FRS).count
    checks = [
        CheckResult(
            "pointwise gate table",
            "pass" if not pointwise_misses else "fail",
            "; ".join(pointwise_misses) or f"{cases} cases match",
            float(len(pointwise_misses)),
        ),
        CheckResult(
            "hdr gate table",
            "pass" if not hdr_misses else "fail",
            "; ".join(hdr_misses)
            or f"{len(AUDIT_TERMS) * len(AUDIT_BASES)} cases match 2Lq - (2q - 1)",
            float(len(hdr_misses)),
        ),
        CheckResult(
            "iacs FRS gates",
            "pass" if iacs_count == 7 else "fail",
            f"{iacs_count} gates per step (expected 7)",
            float(iacs_count),
        ),
    ]
    return CheckRun("audit-gates", checks)


def qdrift_bias(
    settings: Settings,
    steps: Sequence[float] = BIAS_STEPS,
    sample_counts: Sequence[int] = SAMPLE_COUNTS,
    seeds: Sequence[int] = (0, 1, 2, 3),
) -> CheckRun:
    """Second-order bias, single-term exactness, measure transform and sampling rate.

    Args:
        settings: Supplies the oracle tolerance and quadrature node count.
        steps: Step lengths of the bias sweep.
        sample_counts: Trajectory counts of the Monte Carlo sweep.
        seeds: Seeds averaged at every trajectory count.
    """
    spec = ProblemSpec(kind="grover", n=2, T=1.0, min_success=0.0)
    instance = spec.build(0)
    hamiltonian = instance.hamiltonian
    rho = instance.initial_state.projector()
    t = 0.5
    checks: list[CheckResult] = []

    points = []
    for dt in steps:
        exact = reference_propagator(hamiltonian, t, t + dt, settings.reference_tol)
        target = DensityOperator.from_matrix(
            exact.entries @ rho.entries @ exact.entries.conj().T
        )
        bias = trace_distance(channel_v1(rho, hamiltonian, t, dt).output, target)
        logger.debug("qdrift bias dt=%g: %s", dt, format_error(bias))
        points.append((dt, bias))
    checks.append(slope_check("qdrift v1 bias", points, 2.0, 0.3, None))

    h2 = hamiltonian.operators[1]
    single = TimeDepHamiltonian.from_pairs([(ramp("linear", 1.0), h2)])
    dt = 0.1
    output = channel_v1(rho, single, t, dt).output
    exponent = single.schedules[0].definite_integral(t, t + dt)
    unitary = herm_expm(h2, exponent).entries
    exact_single = DensityOperator.from_matrix(unitary @ rho.entries @ unitary.conj().T)
    gap = trace_distance(output, exact_single)
    checks.append(
        CheckResult(
            "qdrift single term",
            get_tolerance_status(gap, SINGLE_TERM_TOL),
            f"distance to exact evolution {format_error(gap)}",
            gap,
        )
    )

    t, dt = 0.3, 0.1
    nodes = settings.quadrature_nodes
    mu = HybridMeasure.tilted(DiscreteMeasure.proportional(hamiltonian, t, dt))
    q = measure_transform(mu, hamiltonian, t, dt)
    hybrid = channel_v2(rho, hamiltonian, t, dt, mu, nodes).output
    continuous = continuous_qdrift_channel(rho, hamiltonian, t, dt, q, nodes).output
    gap = trace_distance(hybrid, continuous)
    checks.append(
        CheckResult(
            "qdrift measure transform",
            get_tolerance_status(gap, TRANSFORM_TOL),
            f"hybrid vs transformed continuous channel {format_error(gap)}",
            gap,
        )
    )

    n_steps = 4
    dt = 1.0 / n_steps
    target = evolve_channel(rho, hamiltonian, channel_v1, n_steps)
    rate_points = []
    for count in sample_counts:
        errors = [
            trace_distance(
                sample_trajectories(
                    instance.initial_state,
                    hamiltonian,
                    DiscreteMeasure.proportional,
                    dt,
                    n_steps,
                    count,
                    seed,
                ),
                target,
            )
            for seed in seeds
        ]
        rate_points.append((count, float(np.mean(errors))))
    checks.append(slope_check("qdrift sampling rate", rate_points, -0.5, 0.15, None))
    return CheckRun("qdrift-bias", checks)


def analog_sweep(
    settings: Settings, widths: Sequence[float] = ANALOG_WIDTHS, T: float = 10.0
) -> CheckRun:
    """Clock-width scaling of the smeared state and its Richardson extrapolation.

    Widths are c/(T‖h₂‖) for each c in ``widths``. The bound quantity
    2√|1 − ⟨ψ|ρ|ψ⟩| is expected to fall as ω for the smeared state and as
    ω² for the two-term extrapolation with k = (1, 2). The extrapolation is
    graded on this bound quantity. The error of an observable expectation
    under the extrapolated state falls faster, as ω⁴, and is not graded
    here. A time-independent Hamiltonian must be reproduced exactly at every
    width.
    """
    instance = ProblemSpec(kind="grover", n=2, T=T, min_success=0.0).build(0)
    hamiltonian = instance.hamiltonian
    psi0 = instance.initial_state
    t_f = hamiltonian.interval[1]
    target = exact_state(hamiltonian, psi0, t_f, settings.reference_tol)
    h2_norm = hamiltonian.operators[1].norm
    template = GaussianClock(1.0, nodes=settings.clock_nodes)
    spec = mpf_coefficients([1, 2])

    plain: list[tuple[float, float]] = []
    extrapolated: list[tuple[float, float]] = []
    for epsilon in widths:
        omega = omega_budget(T, h2_norm, epsilon, c=epsilon)
        clock = template.with_omega(omega)
        rho = rho_omega(
            hamiltonian, t_f, clock, psi0, "analytic", settings.reference_tol
        )
        plain.append((omega, smearing_fidelity_bound(rho, target)))
        combined = richardson_state(
            hamiltonian, t_f, omega, spec, template, psi0, "analytic"
        )
        extrapolated.append((omega, smearing_fidelity_bound(combined, target)))
        logger.info(
            "omega=%.4g bound=%s richardson=%s",
            omega,
            format_error(plain[-1][1]),
            format_error(extrapolated[-1][1]),
        )

    h1, h2 = hamiltonian.operators
    static = TimeDepHamiltonian.from_pairs([(constant(1.0), h1), (constant(0.5), h2)])
    static_target = exact_state(static, psi0, t_f, settings.reference_tol)
    worst = max(
        trace_distance(
            rho_omega(static, t_f, template.with_omega(omega), psi0),
            static_target.projector(),
        )
        for omega in (0.5, 0.1, 0.01)
    )
    checks = [
        slope_check("analog first order", plain, 1.0, 0.3, None),
        slope_check("analog richardson M=2", extrapolated, 2.0, 0.4, None),
        CheckResult(
            "analog time-independent",
            get_tolerance_status(worst, STATIC_TOL),
            f"largest deviation {format_error(worst)}",
            worst,
        ),
    ]
    return CheckRun("analog-sweep", checks)
