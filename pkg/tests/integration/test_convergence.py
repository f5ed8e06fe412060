"""Convergence sweeps on the benchmark problems.

These run the full acceptance grids and take minutes; deselect them with
``pytest -m "not integration"``.
"""

from importlib import resources

import numpy as np
import pytest

from sweep_hand.config import Settings, load_bench_config
from sweep_hand.formulas import (
    STRANG,
    hdr_step,
    mpf_coefficients,
    mpf_step,
    pointwise_step,
)
from sweep_hand.formulas.multiproduct import MpfVariant
from sweep_hand.hamiltonians import AdiabaticProblem, TimeDepHamiltonian, build_ising
from sweep_hand.operators import herm_expm, spectral_distance
from sweep_hand.reference import reference_propagator
from sweep_hand.services import (
    aggregate,
    analog_sweep,
    bench_checks,
    fit_slope,
    qdrift_bias,
    run_benchmark,
    verify_order,
)
from sweep_hand.taylor import success_weight, taylor2_step

LOCAL_STEPS = [2.0**-k for k in range(5, 9)]


@pytest.fixture(scope="module")
def sweep_settings() -> Settings:
    return Settings(workers=4)


def local_slope(errors: list[float]) -> float:
    return fit_slope(list(zip(LOCAL_STEPS, errors, strict=True)), window=None).slope


@pytest.mark.integration
class TestProductFormulaOrder:
    """Fourth-order product formulas on adiabatic Grover search."""

    def test_verify_order(self, sweep_settings: Settings) -> None:
        run = verify_order(sweep_settings)
        failed = [c.detail for c in run.checks if not c.passed]
        assert run.passed, failed

    def test_hdr_beats_iacs(self, sweep_settings: Settings) -> None:
        data = resources.files("sweep_hand.data") / "grover_ost4.toml"
        with resources.as_file(data) as path:
            config = load_bench_config(path)
        records = aggregate(run_benchmark(config, sweep_settings))
        checks = bench_checks(config, records)
        assert all(c.passed for c in checks), [c.detail for c in checks]

    def test_strang_identities_on_random_steps(
        self, grover_problem: AdiabaticProblem
    ) -> None:
        hamiltonian = grover_problem.hamiltonian
        h1, h2 = hamiltonian.operators
        f1, f2 = hamiltonian.schedules
        rng = np.random.default_rng(2024)
        for t, dt in zip(rng.uniform(0.0, 0.9, 20), rng.uniform(0.001, 0.1, 20)):
            m = t + dt / 2
            midpoint = (
                herm_expm(h1 * f1.value(m), dt / 2)
                @ herm_expm(h2 * f2.value(m), dt)
                @ herm_expm(h1 * f1.value(m), dt / 2)
            )
            _, pointwise = pointwise_step(hamiltonian, t, dt, STRANG, lambda_prime=0)
            assert spectral_distance(pointwise, midpoint) < 1e-12

            windows = (
                herm_expm(h1, f1.definite_integral(m, t + dt))
                @ herm_expm(h2, f2.definite_integral(t, t + dt))
                @ herm_expm(h1, f1.definite_integral(t, m))
            )
            _, hdr = hdr_step(hamiltonian, t, dt, STRANG)
            assert spectral_distance(hdr, windows) < 1e-12


@pytest.mark.integration
class TestLocalOrders:
    """Local error slopes of the multi-product and Taylor steps."""

    @pytest.mark.parametrize("variant", ["pointwise", "hdr"])
    def test_mpf_grover(
        self, grover_problem: AdiabaticProblem, variant: MpfVariant
    ) -> None:
        self.check_mpf(grover_problem.hamiltonian, variant)

    @pytest.mark.parametrize("variant", ["pointwise", "hdr"])
    def test_mpf_ising(self, variant: MpfVariant) -> None:
        self.check_mpf(build_ising(2, -1.0), variant)

    def check_mpf(self, hamiltonian: TimeDepHamiltonian, variant: MpfVariant) -> None:
        spec = mpf_coefficients([1, 2])
        t = 0.4
        errors = []
        for dt in LOCAL_STEPS:
            step = mpf_step(hamiltonian, t, dt, spec, variant)
            exact = reference_propagator(hamiltonian, t, t + dt)
            errors.append(float(np.linalg.norm(step.operator - exact.entries, 2)))
        assert 4.5 <= local_slope(errors) <= 5.5

    def test_taylor_grover(self, grover_problem: AdiabaticProblem) -> None:
        hamiltonian = grover_problem.hamiltonian
        t = 0.4
        errors = []
        for dt in LOCAL_STEPS:
            approx = taylor2_step(hamiltonian, t, dt).operator
            exact = reference_propagator(hamiltonian, t, t + dt).entries
            errors.append(float(np.linalg.norm(approx - exact, 2)))
        assert 2.6 <= local_slope(errors) <= 3.4

    def test_taylor_success_weight(self, grover_problem: AdiabaticProblem) -> None:
        hamiltonian = grover_problem.hamiltonian
        t = 0.4
        gaps = []
        for dt in LOCAL_STEPS:
            total = sum(s.definite_integral(t, t + dt) for s in hamiltonian.schedules)
            gaps.append(abs(success_weight(hamiltonian, t, dt) - np.exp(total)))
        assert 2.6 <= local_slope(gaps) <= 3.4


@pytest.mark.integration
class TestRandomizedAndAnalog:
    """qDrift bias and sampling, and the analog clock sweep."""

    def test_qdrift_bias(self, sweep_settings: Settings) -> None:
        run = qdrift_bias(sweep_settings)
        assert run.passed, [c.detail for c in run.checks]

    def test_analog_sweep(self, sweep_settings: Settings) -> None:
        run = analog_sweep(sweep_settings)
        assert run.passed, [c.detail for c in run.checks]

