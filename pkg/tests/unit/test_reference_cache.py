"""Tests for the reference propagator cache."""

from unittest.mock import MagicMock, patch

from sweep_hand.hamiltonians import TimeDepHamiltonian
from sweep_hand.services.reference_cache import CacheStats, ReferenceCache


class TestSingleton:
    """Tests for the ReferenceCache singleton."""

    def test_get_instance_is_shared(self) -> None:
        assert ReferenceCache.get_instance() is ReferenceCache.get_instance()

    def test_reset_instance(self) -> None:
        first = ReferenceCache.get_instance()
        ReferenceCache.reset_instance()
        assert ReferenceCache.get_instance() is not first

    def test_configure_replaces_instance(self) -> None:
        first = ReferenceCache.get_instance()
        configured = ReferenceCache.configure(4, max_steps=64)
        assert configured is not first
        assert ReferenceCache.get_instance() is configured


class TestSolve:
    """Tests for ReferenceCache.solve."""

    @patch("sweep_hand.services.reference_cache.reference_solution")
    def test_second_lookup_hits(
        self, mock_solution: MagicMock, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        cache = ReferenceCache(maxsize=8, max_steps=64)

        first = cache.solve(qubit_hamiltonian, 0.0, 1.0, 1e-9)
        second = cache.solve(qubit_hamiltonian, 0.0, 1.0, 1e-9)

        assert first is second
        mock_solution.assert_called_once_with(qubit_hamiltonian, 0.0, 1.0, 1e-9, 64)
        assert cache.stats == CacheStats(hits=1, misses=1, size=1)

    @patch("sweep_hand.services.reference_cache.reference_solution")
    def test_key_includes_interval_and_tolerance(
        self, mock_solution: MagicMock, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        cache = ReferenceCache()
        cache.solve(qubit_hamiltonian, 0.0, 1.0, 1e-9)
        cache.solve(qubit_hamiltonian, 0.0, 0.5, 1e-9)
        cache.solve(qubit_hamiltonian, 0.0, 1.0, 1e-10)
        assert mock_solution.call_count == 3

    @patch("sweep_hand.services.reference_cache.reference_solution")
    def test_equal_hamiltonians_share_entries(
        self, mock_solution: MagicMock, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        """Lookups key on the fingerprint, not object identity."""
        cache = ReferenceCache()
        copy = TimeDepHamiltonian(qubit_hamiltonian.terms, qubit_hamiltonian.interval)
        cache.solve(qubit_hamiltonian, 0.0, 1.0)
        cache.solve(copy, 0.0, 1.0)
        mock_solution.assert_called_once()

    @patch("sweep_hand.services.reference_cache.reference_solution")
    def test_least_recently_used_is_evicted(
        self, mock_solution: MagicMock, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        cache = ReferenceCache(maxsize=1)
        cache.solve(qubit_hamiltonian, 0.0, 1.0)
        cache.solve(qubit_hamiltonian, 0.0, 0.5)
        cache.solve(qubit_hamiltonian, 0.0, 1.0)
        assert mock_solution.call_count == 3
        assert cache.stats.size == 1

    @patch("sweep_hand.services.reference_cache.reference_solution")
    def test_clear(
        self, mock_solution: MagicMock, qubit_hamiltonian: TimeDepHamiltonian
    ) -> None:
        cache = ReferenceCache()
        cache.solve(qubit_hamiltonian, 0.0, 1.0)
        cache.clear()
        assert cache.stats == CacheStats(hits=0, misses=0, size=0)

    def test_real_solution(self, qubit_hamiltonian: TimeDepHamiltonian) -> None:
        solution = ReferenceCache.get_instance().solve(qubit_hamiltonian, 0.0, 1.0)
        assert solution.steps > 0
        assert solution.extrapolated_differences[-1] < 1e-11
