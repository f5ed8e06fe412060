"""Tests for the lifted pointwise and integrated-window product formulas."""

from functools import partial

import numpy as np
import pytest

from sweep_hand.exceptions import PreconditionError, UnsupportedTermError
from sweep_hand.formulas import (
    FRS,
    OST4,
    STRANG,
    compose_evolution,
    gate_count_table,
    hdr_step,
    lifted_product_unitary,
    pointwise_gates,
    pointwise_step,
)
from sweep_hand.hamiltonians import (
    NonSeparableTerm,
    TimeDepHamiltonian,
    constant,
    ramp,
)
from sweep_hand.hamiltonians.problems import PAULI_X, PAULI_Z
from sweep_hand.operators import HermitianOperator, herm_expm, spectral_distance
from sweep_hand.reference import reference_propagator

X = HermitianOperator(PAULI_X)
Z = HermitianOperator(PAULI_Z)


@pytest.fixture
def sweep() -> TimeDepHamiltonian:
    """Both terms time dependent: falling sin ramp on X, rising on Z."""
    return TimeDepHamiltonian.from_pairs(
        [(ramp("sin", 2.0, rising=False), PAULI_X), (ramp("sin", 2.0), PAULI_Z)]
    )


class TestStrangIdentities:
    """The second-order base steps match their closed forms."""

    def test_pointwise_is_midpoint_splitting(self, sweep: TimeDepHamiltonian) -> None:
        t, dt = 0.3, 0.1
        m = t + dt / 2
        f1, f2 = (s.value(m) for s in sweep.schedules)
        expected = herm_expm(X * f1, dt / 2) @ herm_expm(Z * f2, dt) @ herm_expm(
            X * f1, dt / 2
        )
        gates, unitary = pointwise_step(sweep, t, dt, STRANG, lambda_prime=0)
        assert gates.count == 3
        assert spectral_distance(unitary, expected) < 1e-12

    def test_hdr_uses_half_windows(self, sweep: TimeDepHamiltonian) -> None:
        t, dt = 0.3, 0.1
        m = t + dt / 2
        f1, f2 = sweep.schedules
        expected = (
            herm_expm(X, f1.definite_integral(m, t + dt))
            @ herm_expm(Z, f2.definite_integral(t, t + dt))
            @ herm_expm(X, f1.definite_integral(t, m))
        )
        gates, unitary = hdr_step(sweep, t, dt, STRANG)
        assert gates.count == 3
        assert spectral_distance(unitary, expected) < 1e-12


class TestFrsIntegratedWindows:
    """The FRS integrated-window step is the seven-exponential window product."""

    GAMMA = 1.3512071919596578

    def explicit_product(
        self, hamiltonian: TimeDepHamiltonian, t: float, dt: float
    ) -> np.ndarray:
        f1, f2 = hamiltonian.schedules
        g = self.GAMMA
        # (operator, schedule, window start, window end) in application order,
        # windows as fractions of dt. The middle H2 window runs backwards.
        windows = [
            (X, f1, 0.0, g / 2),
            (Z, f2, 0.0, g),
            (X, f1, g / 2, 0.5),
            (Z, f2, g, 1 - g),
            (X, f1, 0.5, 1 - g / 2),
            (Z, f2, 1 - g, 1.0),
            (X, f1, 1 - g / 2, 1.0),
        ]
        result = np.eye(2, dtype=np.complex128)
        for operator, schedule, lo, hi in windows:
            theta = schedule.definite_integral(t + lo * dt, t + hi * dt)
            result = herm_expm(operator, theta).entries @ result
        return result

    def test_matches_hdr_step(self, sweep: TimeDepHamiltonian) -> None:
        rng = np.random.default_rng(7)
        for t, dt in zip(rng.uniform(0.0, 0.9, 20), rng.uniform(0.001, 0.1, 20)):
            gates, unitary = hdr_step(sweep, float(t), float(dt), FRS)
            expected = self.explicit_product(sweep, float(t), float(dt))
            assert gates.count == 7
            assert spectral_distance(unitary, expected) < 1e-12


class TestTimeIndependentLimit:
    """With constant schedules both families reduce to the lifted product."""

    static = TimeDepHamiltonian.from_pairs(
        [(constant(0.7), PAULI_X), (constant(1.3), PAULI_Z)]
    )

    def test_pointwise(self) -> None:
        expected = lifted_product_unitary((X * 0.7, Z * 1.3), FRS.lift(), 0.2)
        for lambda_prime in (0, 1, 2):
            _, unitary = pointwise_step(self.static, 0.1, 0.2, FRS, lambda_prime)
            assert spectral_distance(unitary, expected) < 1e-12

    def test_hdr(self) -> None:
        expected = lifted_product_unitary((X * 0.7, Z * 1.3), OST4.lift(), 0.2)
        _, unitary = hdr_step(self.static, 0.1, 0.2, OST4)
        assert spectral_distance(unitary, expected) < 1e-12


class TestGateCounts:
    """Merged sequences meet the closed-form counts."""

    @pytest.mark.parametrize("lambda_prime", [0, 1, 2])
    def test_pointwise_frs(self, lambda_prime: int) -> None:
        gates = pointwise_gates(2, 0.0, 0.1, FRS, lambda_prime)
        assert gates.count == gate_count_table(2, FRS.q, lambda_prime)

    def test_hdr_ost4(self, sweep: TimeDepHamiltonian) -> None:
        gates, _ = hdr_step(sweep, 0.0, 0.1, OST4)
        assert gates.count == gate_count_table(2, OST4.q)

    def test_lambda_prime_out_of_range(self) -> None:
        with pytest.raises(PreconditionError):
            pointwise_gates(2, 0.0, 0.1, STRANG, lambda_prime=3)


class TestComposeEvolution:
    """Tests for compose_evolution."""

    def test_single_term_hdr_is_exact(self) -> None:
        single = TimeDepHamiltonian.from_pairs([(ramp("sin", 3.0), PAULI_X)])
        unitary, gates = compose_evolution(partial(hdr_step, coeffs=FRS), single, 3)
        exact = herm_expm(X, single.schedules[0].definite_integral(0.0, 1.0))
        assert gates == 3
        assert spectral_distance(unitary, exact) < 1e-12

    def test_counts_gates_without_cross_step_merging(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        step = partial(pointwise_step, coeffs=STRANG, lambda_prime=0)
        _, gates = compose_evolution(step, qubit_hamiltonian, 4)
        assert gates == 12

    def test_requires_a_step(self, qubit_hamiltonian: TimeDepHamiltonian) -> None:
        with pytest.raises(PreconditionError):
            compose_evolution(
                partial(hdr_step, coeffs=STRANG), qubit_hamiltonian, 0
            )

    def test_hdr_rejects_non_separable(self) -> None:
        hamiltonian = TimeDepHamiltonian(
            (NonSeparableTerm(lambda t: t * PAULI_X, dim=2),)
        )
        with pytest.raises(UnsupportedTermError):
            hdr_step(hamiltonian, 0.0, 0.1, STRANG)

    def test_fourth_order_convergence(
        self, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        exact = reference_propagator(qubit_hamiltonian, 0.0, 1.0)
        step = partial(hdr_step, coeffs=FRS)
        errors = [
            spectral_distance(compose_evolution(step, qubit_hamiltonian, n)[0], exact)
            for n in (8, 16)
        ]
        assert errors[0] / errors[1] > 10
