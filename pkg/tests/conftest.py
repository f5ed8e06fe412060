"""Pytest fixtures for sweep-hand tests."""

from collections.abc import Generator

import numpy as np
import pytest

from sweep_hand.config import Settings
from sweep_hand.hamiltonians import (
    AdiabaticProblem,
    TimeDepHamiltonian,
    build_grover,
    constant,
    ramp,
)
from sweep_hand.hamiltonians.problems import PAULI_X, PAULI_Z
from sweep_hand.services.reference_cache import ReferenceCache


@pytest.fixture
def settings() -> Settings:
    """Provide test settings instance."""
    return Settings()


@pytest.fixture(autouse=True)
def fresh_reference_cache() -> Generator[None, None, None]:
    """Give every test its own reference cache."""
    ReferenceCache.reset_instance()
    yield
    ReferenceCache.reset_instance()


@pytest.fixture
def qubit_hamiltonian() -> TimeDepHamiltonian:
    """Two non-commuting single-qubit terms: X with f = 1 and Z with f = t."""
    return TimeDepHamiltonian.from_pairs(
        [(constant(1.0), PAULI_X), (ramp("linear", 1.0), PAULI_Z)]
    )


@pytest.fixture
def grover_problem() -> AdiabaticProblem:
    """Two-qubit adiabatic Grover search towards |00⟩ with T = 10."""
    target = np.zeros(4, dtype=np.complex128)
    target[0] = 1.0
    return build_grover(2, target, T=10.0)
