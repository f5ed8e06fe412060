"""Process-wide memo of ground-truth propagators.

Benchmarks compare every (scheme, N, seed) record against the same
reference evolution, so the oracle result is cached per Hamiltonian
fingerprint, interval and tolerance.
"""

import logging
import threading
from dataclasses import dataclass
from typing import ClassVar

from cachetools import LRUCache

from sweep_hand.hamiltonians.model import TimeDepHamiltonian
from sweep_hand.reference import (
    DEFAULT_MAX_STEPS,
    DEFAULT_REFERENCE_TOL,
    ReferenceSolution,
    reference_solution,
)

logger = logging.getLogger(__name__)

CacheKey = tuple[str, float, float, float]


@dataclass(frozen=True)
class CacheStats:
    """Hit and miss counters of the reference cache.

    Attributes:
        hits: Lookups answered from the cache.
        misses: Lookups that ran the oracle.
        size: Current number of entries.
    """

    hits: int
    misses: int
    size: int


class ReferenceCache:
    """Thread-safe LRU cache in front of ``reference_solution``.

    Implements the singleton pattern so that benchmark workers share one
    cache for the lifetime of the process.
    """

    _instance: ClassVar["ReferenceCache | None"] = None

    def __init__(self, maxsize: int = 256, max_steps: int = DEFAULT_MAX_STEPS) -> None:
        """Initialize the cache.

        Args:
            maxsize: Maximum cached propagators (default: 256).
            max_steps: Oracle step ceiling passed to every refinement.
        """
        self._cache: LRUCache[CacheKey, ReferenceSolution] = LRUCache(maxsize=maxsize)
        self._lock = threading.Lock()
        self._max_steps = max_steps
        self.hits = 0
        self.misses = 0

    def solve(
        self,
        hamiltonian: TimeDepHamiltonian,
        t0: float,
        t1: float,
        tol: float = DEFAULT_REFERENCE_TOL,
    ) -> ReferenceSolution:
        """Return the cached oracle result, computing it on a miss.

        Args:
            hamiltonian: The Hamiltonian to integrate.
            t0: Start time.
            t1: End time.
            tol: Oracle tolerance.

        Returns:
            The ReferenceSolution for U(t1, t0).
        """
        key = (hamiltonian.fingerprint, float(t0), float(t1), float(tol))
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self.hits += 1
                logger.debug("reference cache hit for [%g, %g]", t0, t1)
                return cached
            self.misses += 1

        # solved outside the lock; concurrent misses on one key both compute
        solution = reference_solution(hamiltonian, t0, t1, tol, self._max_steps)
        with self._lock:
            self._cache[key] = solution
        return solution

    @property
    def stats(self) -> CacheStats:
        """Current hit/miss counters."""
        with self._lock:
            return CacheStats(self.hits, self.misses, len(self._cache))

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
            self.hits = self.misses = 0

    @classmethod
    def get_instance(cls) -> "ReferenceCache":
        """Get the singleton instance of ReferenceCache.

        Returns:
            The singleton ReferenceCache instance.
        """
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def configure(
        cls, maxsize: int, max_steps: int = DEFAULT_MAX_STEPS
    ) -> "ReferenceCache":
        """Replace the singleton with one of the given capacity."""
        cls._instance = cls(maxsize=maxsize, max_steps=max_steps)
        return cls._instance

    @classmethod
    def reset_instance(cls) -> None:
        """Reset the singleton instance (primarily for testing)."""
        cls._instance = None
