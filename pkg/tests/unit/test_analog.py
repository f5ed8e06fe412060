"""Tests for the Gaussian-clock smeared state."""

from unittest.mock import MagicMock, patch

import numpy as np
import pytest

from sweep_hand.analog import (
    GaussianClock,
    converged_rho_omega,
    energy_variance_constant,
    exact_state,
    fidelity_defects,
    omega_budget,
    rho_omega,
    richardson_observable,
    richardson_state,
    smearing_fidelity_bound,
)
from sweep_hand.exceptions import ConvergenceError, PreconditionError
from sweep_hand.formulas import mpf_coefficients
from sweep_hand.hamiltonians import TimeDepHamiltonian, constant
from sweep_hand.hamiltonians.problems import PAULI_X, PAULI_Z
from sweep_hand.operators import HermitianOperator, QuantumState, trace_distance
from sweep_hand.reference import reference_propagator

ZERO = QuantumState(np.array([1.0, 0.0]))
STATIC = TimeDepHamiltonian.from_pairs(
    [(constant(1.0), PAULI_X), (constant(0.5), PAULI_Z)]
)


class TestGaussianClock:
    """Tests for GaussianClock."""

    def test_rejects_non_positive_width(self) -> None:
        with pytest.raises(PreconditionError):
            GaussianClock(0.0)

    def test_rejects_empty_rule(self) -> None:
        with pytest.raises(PreconditionError):
            GaussianClock(0.1, nodes=0)

    def test_rule(self) -> None:
        offsets, weights = GaussianClock(0.1, nodes=9).rule
        assert weights.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(offsets, -offsets[::-1], atol=1e-14)
        assert np.all(np.abs(offsets) <= 0.6)

    def test_refined(self) -> None:
        clock = GaussianClock(0.1, nodes=9)
        assert clock.refined().nodes == 17
        assert clock.with_omega(0.2).nodes == 9


class TestRhoOmega:
    """Tests for the smeared state."""

    def test_static_hamiltonian_is_unsmeared(self) -> None:
        exact = reference_propagator(STATIC, 0.0, 1.0).apply(ZERO)
        rho = rho_omega(STATIC, 1.0, GaussianClock(0.2, nodes=9), ZERO)
        assert trace_distance(rho, exact.projector()) < 1e-9
        assert smearing_fidelity_bound(rho, exact) < 1e-4

    def test_converged_static(self) -> None:
        rho = converged_rho_omega(STATIC, 0.5, GaussianClock(0.2, nodes=5), ZERO)
        assert rho.purity == pytest.approx(1.0)

    def test_time_dependent_is_mixed(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        rho = rho_omega(qubit_hamiltonian, 1.0, GaussianClock(0.3, nodes=9), ZERO)
        assert rho.purity < 1.0 - 1e-6
        assert np.trace(rho.entries).real == pytest.approx(1.0)


class TestConvergedRhoOmega:
    """Tests for node doubling of the smeared state."""

    @patch("sweep_hand.analog.rho_omega")
    def test_passes_oracle_tolerance(self, mock_rho: MagicMock) -> None:
        mock_rho.return_value = ZERO.projector()
        converged_rho_omega(
            STATIC, 0.5, GaussianClock(0.2, nodes=5), ZERO, oracle_tol=1e-6
        )
        assert mock_rho.call_count == 2
        assert all(call.args[5] == 1e-6 for call in mock_rho.call_args_list)

    @patch("sweep_hand.analog.rho_omega")
    def test_unconverged_raises(self, mock_rho: MagicMock) -> None:
        one = QuantumState(np.array([0.0, 1.0]))
        mock_rho.side_effect = [ZERO.projector(), one.projector()]
        with pytest.raises(ConvergenceError) as excinfo:
            converged_rho_omega(
                STATIC, 0.5, GaussianClock(0.2, nodes=5), ZERO, max_refinements=1
            )
        assert excinfo.value.last_errors[1] == pytest.approx(2.0)
        assert excinfo.value.steps == 9

    def test_needs_a_refinement(self) -> None:
        with pytest.raises(PreconditionError, match="max_refinements"):
            converged_rho_omega(
                STATIC, 0.5, GaussianClock(0.2, nodes=5), ZERO, max_refinements=0
            )


class TestRichardson:
    """Tests for the extrapolated state and observable."""

    def test_unit_trace(self, qubit_hamiltonian: TimeDepHamiltonian) -> None:
        combined = richardson_state(
            qubit_hamiltonian,
            1.0,
            0.2,
            mpf_coefficients([1, 2]),
            GaussianClock(0.2, nodes=9),
            ZERO,
        )
        assert np.trace(combined).real == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(combined, combined.conj().T, atol=1e-12)

    def test_observable_norm_checked(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        with pytest.raises(PreconditionError):
            richardson_observable(
                qubit_hamiltonian,
                1.0,
                HermitianOperator(2.0 * PAULI_X),
                0.2,
                mpf_coefficients([1, 2]),
                GaussianClock(0.2, nodes=5),
                ZERO,
            )

    def test_observable_of_static_hamiltonian(self) -> None:
        exact = reference_propagator(STATIC, 0.0, 1.0).apply(ZERO)
        z = HermitianOperator(PAULI_Z)
        value = richardson_observable(
            STATIC, 1.0, z, 0.2, mpf_coefficients([1, 2]), GaussianClock(0.2, 5), ZERO
        )
        assert value == pytest.approx(exact.projector().expectation(z), abs=1e-9)

    def test_observable_error_falls_as_fourth_power(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        z = HermitianOperator(PAULI_Z)
        exact = exact_state(qubit_hamiltonian, ZERO, 1.0).projector().expectation(z)
        spec = mpf_coefficients([1, 2])
        errors = [
            abs(
                richardson_observable(
                    qubit_hamiltonian,
                    1.0,
                    z,
                    omega,
                    spec,
                    GaussianClock(omega),
                    ZERO,
                    "analytic",
                )
                - exact
            )
            for omega in (0.2, 0.1)
        ]
        assert errors[0] / errors[1] > 10.0


class TestBounds:
    """Tests for the scalar helpers."""

    def test_fidelity_bound(self) -> None:
        one = QuantumState(np.array([0.0, 1.0]))
        assert smearing_fidelity_bound(ZERO.projector(), ZERO) == pytest.approx(0.0)
        assert smearing_fidelity_bound(ZERO.projector(), one) == pytest.approx(2.0)

    def test_fidelity_bound_accepts_overshoot(self) -> None:
        matrix = np.diag([1.0025, -0.0025])
        assert smearing_fidelity_bound(matrix, ZERO) == pytest.approx(0.1)

    def test_omega_budget(self) -> None:
        assert omega_budget(10.0, 2.0, 0.01) == pytest.approx(0.05)
        assert omega_budget(10.0, 2.0, 0.01, c=3.0) == pytest.approx(0.15)
        with pytest.raises(PreconditionError, match="T must be positive"):
            omega_budget(0.0, 2.0, 0.01)

    def test_energy_variance(self) -> None:
        x_only = TimeDepHamiltonian.from_pairs([(constant(1.0), PAULI_X)])
        plus = QuantumState(np.array([1.0, 1.0]) / np.sqrt(2.0))
        assert energy_variance_constant(x_only, ZERO) == pytest.approx(1.0)
        assert energy_variance_constant(x_only, plus) == pytest.approx(0.0, abs=1e-12)

    def test_fidelity_defects(self) -> None:
        defects = fidelity_defects([ZERO.projector()], ZERO)
        np.testing.assert_allclose(defects, [0.0], atol=1e-14)
