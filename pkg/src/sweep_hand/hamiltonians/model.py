"""Time-dependent Hamiltonian H(t) = Σ_k H_k(t) and its local terms."""

import hashlib
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from sweep_hand.exceptions import DimensionMismatchError, UnsupportedTermError
from sweep_hand.hamiltonians.schedules import Schedule
from sweep_hand.operators import ComplexMatrix, HermitianOperator, hermitize

__all__ = [
    "Extension",
    "LocalTerm",
    "NonSeparableTerm",
    "Term",
    "TimeDepHamiltonian",
    "evaluate",
]

Extension = Literal["constant", "analytic"]


@dataclass(frozen=True, eq=False)
class LocalTerm:
    """One summand H_k(t) = f_k(t)·h_k.

    Attributes:
        schedule: The scalar profile f_k.
        operator: The time-independent Hermitian h_k.
    """

    schedule: Schedule
    operator: HermitianOperator

    separable = True

    @property
    def dim(self) -> int:
        return self.operator.dim

    def matrix(self, t: float) -> ComplexMatrix:
        """H_k(t) as a dense matrix."""
        return self.schedule.value(t) * self.operator.entries

    def exponential(self, duration: float, t: float) -> ComplexMatrix:
        """exp(-i·duration·H_k(t)) through the cached eigendecomposition of h_k."""
        return self.operator.exponential(duration * self.schedule.value(t))

    def integrated_exponential(self, t0: float, t1: float) -> ComplexMatrix:
        """exp(-i ∫_{t0}^{t1} H_k), exact because H_k(s) commutes across s."""
        return self.operator.exponential(self.schedule.definite_integral(t0, t1))

    def token(self) -> str:
        digest = hashlib.sha1(self.operator.entries.tobytes()).hexdigest()[:16]
        return f"{self.schedule.name}*{digest}"


@dataclass(frozen=True, eq=False)
class NonSeparableTerm:
    """A local term H_k(t) that is not a scalar profile times a fixed matrix.

    Only pointwise schemes and the reference oracle accept such terms.

    Attributes:
        matrix_fn: Callable returning the Hermitian matrix H_k(t).
        dim: Hilbert-space dimension.
        name: Identifier used in fingerprints.
    """

    matrix_fn: Callable[[float], ArrayLike]
    dim: int
    name: str = "nonseparable"

    separable = False

    def matrix(self, t: float) -> ComplexMatrix:
        m = hermitize(self.matrix_fn(t))
        if m.shape[0] != self.dim:
            raise DimensionMismatchError(m.shape[0], self.dim)
        return m

    def exponential(self, duration: float, t: float) -> ComplexMatrix:
        return HermitianOperator(self.matrix(t)).exponential(duration)

    def token(self) -> str:
        return f"{self.name}@{id(self.matrix_fn):x}"


Term = LocalTerm | NonSeparableTerm


@dataclass(frozen=True, eq=False)
class TimeDepHamiltonian:
    """Ordered decomposition H(t) = Σ_{k=1}^{Λ} H_k(t) on a simulation interval.

    Attributes:
        terms: The Λ ≥ 1 local terms, in decomposition order.
        interval: The simulation interval [t_i, t_f].
        extension: How schedules behave outside the interval.
    """

    terms: tuple[Term, ...]
    interval: tuple[float, float] = (0.0, 1.0)
    extension: Extension = "analytic"
    _operators: tuple[HermitianOperator, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a Hamiltonian needs at least one term")
        dim = terms[0].dim
        for term in terms[1:]:
            if term.dim != dim:
                raise DimensionMismatchError(dim, term.dim)
        t_i, t_f = (float(x) for x in self.interval)
        if t_f < t_i:
            raise ValueError(f"interval end {t_f} precedes start {t_i}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "interval", (t_i, t_f))
        object.__setattr__(
            self,
            "_operators",
            tuple(term.operator for term in terms if isinstance(term, LocalTerm)),
        )

    @classmethod
    def from_pairs(
        cls,
        pairs: Sequence[tuple[Schedule, HermitianOperator | ArrayLike]],
        interval: tuple[float, float] = (0.0, 1.0),
    ) -> "TimeDepHamiltonian":
        """Build from (schedule, operator) pairs."""
        terms = tuple(
            LocalTerm(
                schedule,
                op if isinstance(op, HermitianOperator) else HermitianOperator(op),
            )
            for schedule, op in pairs
        )
        return cls(terms, interval)

    @property
    def n_terms(self) -> int:
        """The decomposition count Λ."""
        return len(self.terms)

    @property
    def dim(self) -> int:
        return self.terms[0].dim

    @property
    def is_separable(self) -> bool:
        """True when every term has the form f_k(t)·h_k."""
        return all(term.separable for term in self.terms)

    @property
    def is_time_independent(self) -> bool:
        return all(
            isinstance(term, LocalTerm) and term.schedule.is_constant
            for term in self.terms
        )

    @property
    def operators(self) -> tuple[HermitianOperator, ...]:
        """The fixed operators h_k; requires a separable decomposition."""
        self.require_separable("operator access")
        return self._operators

    @property
    def schedules(self) -> tuple[Schedule, ...]:
        return tuple(term.schedule for term in self.local_terms())

    def local_terms(self) -> tuple[LocalTerm, ...]:
        """The terms narrowed to LocalTerm; requires a separable decomposition."""
        self.require_separable("local term access")
        return tuple(term for term in self.terms if isinstance(term, LocalTerm))

    def require_separable(self, context: str) -> None:
        """Raise UnsupportedTermError unless every term is f_k(t)·h_k."""
        for index, term in enumerate(self.terms):
            if not term.separable:
                raise UnsupportedTermError(
                    f"{context} needs terms of the form f(t)·h; "
                    f"term {index} ({term.token()}) is not"
                )

    def matrix(self, t: float) -> ComplexMatrix:
        """H(t) as a dense matrix, without validation."""
        total = self.terms[0].matrix(t)
        for term in self.terms[1:]:
            total = total + term.matrix(t)
        return total

    def norm_bound(self, t: float) -> float:
        """Upper bound Σ_k ‖H_k(t)‖ on the spectral norm of H(t)."""
        bound = 0.0
        for term in self.terms:
            if isinstance(term, LocalTerm):
                bound += abs(term.schedule.value(t)) * term.operator.norm
            else:
                bound += float(np.linalg.norm(term.matrix(t), 2))
        return bound

    def extended(self, mode: Extension) -> "TimeDepHamiltonian":
        """Copy whose schedules follow ``mode`` outside the interval."""
        if mode == self.extension:
            return self
        if mode == "analytic":
            raise ValueError("a clamped Hamiltonian cannot be unclamped")
        lo, hi = self.interval
        terms = tuple(
            LocalTerm(term.schedule.clamped(lo, hi), term.operator)
            if isinstance(term, LocalTerm)
            else term
            for term in self.terms
        )
        return TimeDepHamiltonian(terms, self.interval, mode)

    @cached_property
    def fingerprint(self) -> str:
        """Stable digest identifying the operators, schedules and interval."""
        parts = [term.token() for term in self.terms]
        parts.append(f"{self.interval!r}:{self.extension}")
        return hashlib.sha1("|".join(parts).encode()).hexdigest()


def evaluate(hamiltonian: TimeDepHamiltonian, t: float) -> HermitianOperator:
    """Return H(t) = Σ_k f_k(t)·h_k.

    Times slightly outside the interval are allowed; schedules then follow
    the Hamiltonian's extension mode.
    """
    return HermitianOperator(hamiltonian.matrix(t))
