"""Tests for the second-order Taylor-LCU steps."""

import math

import numpy as np
import pytest

from sweep_hand.exceptions import PreconditionError
from sweep_hand.hamiltonians import TimeDepHamiltonian, constant
from sweep_hand.hamiltonians.problems import PAULI_X, PAULI_Z
from sweep_hand.operators import QuantumState
from sweep_hand.reference import reference_propagator
from sweep_hand.taylor import (
    SEGMENT_WEIGHT,
    evolve_taylor2,
    segment_boundaries,
    success_weight,
    taylor2_step,
)


class TestTaylor2Step:
    """Tests for taylor2_step and success_weight."""

    def test_success_weight(self, qubit_hamiltonian: TimeDepHamiltonian) -> None:
        """At t + Δt = 0.3: a = (0.1, 0.025), s = 1 + 0.125 + 0.005·1.3²."""
        expected = 1.0 + 0.125 + 0.005 * 1.3**2
        assert success_weight(qubit_hamiltonian, 0.2, 0.1) == pytest.approx(expected)
        step = taylor2_step(qubit_hamiltonian, 0.2, 0.1)
        assert step.coefficient_sum == pytest.approx(expected)

    def test_third_order_local_error(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        def local_error(dt: float) -> float:
            approx = taylor2_step(qubit_hamiltonian, 0.3, dt).operator
            exact = reference_propagator(qubit_hamiltonian, 0.3, 0.3 + dt).entries
            return float(np.linalg.norm(approx - exact, 2))

        assert 6.0 < local_error(0.02) / local_error(0.01) < 10.0


class TestSegmentBoundaries:
    """Tests for segment_boundaries."""

    def test_equal_weight_segments(self) -> None:
        hamiltonian = TimeDepHamiltonian.from_pairs(
            [(constant(0.5), PAULI_X), (constant(0.5), PAULI_Z)], (0.0, 2.0)
        )
        boundaries = segment_boundaries(hamiltonian)
        np.testing.assert_allclose(
            boundaries, [0.0, SEGMENT_WEIGHT, 2 * SEGMENT_WEIGHT, 2.0], atol=1e-12
        )
        assert SEGMENT_WEIGHT == pytest.approx(math.log(2.0))

    def test_zero_weight(self) -> None:
        idle = TimeDepHamiltonian.from_pairs([(constant(0.0), PAULI_X)])
        with pytest.raises(PreconditionError):
            segment_boundaries(idle)


class TestEvolveTaylor2:
    """Tests for evolve_taylor2."""

    def test_requires_a_step(self, qubit_hamiltonian: TimeDepHamiltonian) -> None:
        psi = QuantumState(np.array([1.0, 0.0]))
        with pytest.raises(PreconditionError):
            evolve_taylor2(psi, qubit_hamiltonian, 0)

    def test_second_order_global_error(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        psi = QuantumState(np.array([1.0, 0.0]))
        exact = reference_propagator(qubit_hamiltonian, 0.0, 1.0).apply(psi)

        def error(n_steps: int) -> float:
            run = evolve_taylor2(psi, qubit_hamiltonian, n_steps)
            assert run.n_steps == n_steps
            assert run.weight_product > 1.0
            return float(np.linalg.norm(run.state.amplitudes - exact.amplitudes))

        assert error(50) / error(100) > 3.0
