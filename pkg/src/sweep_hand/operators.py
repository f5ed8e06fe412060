"""Dense operators, the primitive Hermitian exponential and state metrics."""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from sweep_hand.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
    NotHermitianError,
)

__all__ = [
    "ComplexMatrix",
    "HermitianOperator",
    "UnitaryOperator",
    "QuantumState",
    "DensityOperator",
    "herm_expm",
    "trace_distance",
    "trace_norm",
    "fidelity",
    "spectral_distance",
    "hermitize",
]

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


def _square(entries: ArrayLike) -> ComplexMatrix:
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
        raise ValueError(f"expected a non-empty square matrix, got {matrix.shape}")
    return matrix


def _frozen(matrix: NDArray) -> NDArray:
    matrix.setflags(write=False)
    return matrix


def hermitize(matrix: ArrayLike) -> ComplexMatrix:
    """Return the Hermitian part ``(A + A^H) / 2`` of a square matrix."""
    m = _square(matrix)
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense Hermitian matrix with a lazily cached eigendecomposition.

    The stored entries are the exact Hermitian part of the input, so every
    exponential built from them is unitary up to eigensolver error.

    Attributes:
        entries: The dim×dim complex matrix.
    """

    entries: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = _square(self.entries)
        deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
        if deviation > HERMITIAN_TOL * float(np.max(np.abs(matrix))):
            # the max entry only bounds the spectral norm from below
            tolerance = HERMITIAN_TOL * float(np.linalg.norm(matrix, 2))
            if deviation > tolerance:
                raise NotHermitianError(deviation, tolerance)
        object.__setattr__(self, "entries", _frozen(hermitize(matrix)))

    @property
    def dim(self) -> int:
        """Hilbert-space dimension."""
        return self.entries.shape[0]

    @cached_property
    def eigh(self) -> tuple[NDArray[np.float64], ComplexMatrix]:
        """Eigenvalues (ascending) and orthonormal eigenvectors."""
        values, vectors = np.linalg.eigh(self.entries)
        return values, vectors

    @property
    def norm(self) -> float:
        """Spectral norm."""
        values, _ = self.eigh
        return float(np.max(np.abs(values)))

    @property
    def ground_energy(self) -> float:
        """Smallest eigenvalue."""
        return float(self.eigh[0][0])

    def exponential(self, theta: float) -> ComplexMatrix:
        """Raw matrix ``exp(-i·theta·H)`` from the cached eigendecomposition."""
        values, vectors = self.eigh
        return (vectors * np.exp(-1j * theta * values)) @ vectors.conj().T

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        _require_same_dim(self.dim, other.dim)
        return HermitianOperator(self.entries + other.entries)

    def __mul__(self, scale: float) -> "HermitianOperator":
        return HermitianOperator(float(scale) * self.entries)

    __rmul__ = __mul__

    @classmethod
    def zeros(cls, dim: int) -> "HermitianOperator":
        """The zero operator on a dim-dimensional space."""
        return cls(np.zeros((dim, dim), dtype=np.complex128))


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """Dense unitary matrix.

    Attributes:
        entries: The dim×dim complex matrix, U^H U = I within 1e-10.
    """

    entries: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = _square(self.entries)
        defect = float(
            np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))
        )
        if defect > UNITARY_TOL:
            raise InvalidStateError(
                f"operator is not unitary: |U^H U - I| = {defect:.3e}"
            )
        object.__setattr__(self, "entries", _frozen(matrix))

    @property
    def dim(self) -> int:
        """Hilbert-space dimension."""
        return self.entries.shape[0]

    def __matmul__(self, other: "UnitaryOperator") -> "UnitaryOperator":
        _require_same_dim(self.dim, other.dim)
        return UnitaryOperator(self.entries @ other.entries)

    def dagger(self) -> "UnitaryOperator":
        """Inverse (conjugate transpose)."""
        return UnitaryOperator(self.entries.conj().T)

    def apply(self, state: "QuantumState") -> "QuantumState":
        """Act on a pure state."""
        _require_same_dim(self.dim, state.dim)
        return QuantumState.from_vector(self.entries @ state.amplitudes)

    @classmethod
    def identity(cls, dim: int) -> "UnitaryOperator":
        return cls(np.eye(dim, dtype=np.complex128))


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized complex state vector.

    Attributes:
        amplitudes: Complex vector of Euclidean norm 1 within 1e-12.
    """

    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        vector = np.array(self.amplitudes, dtype=np.complex128)
        if vector.ndim != 1 or vector.size == 0:
            raise InvalidStateError(f"expected a non-empty vector, got {vector.shape}")
        norm = float(np.linalg.norm(vector))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state is not normalized: |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(vector))

    @classmethod
    def from_vector(cls, vector: ArrayLike) -> "QuantumState":
        """Build a state by normalizing an arbitrary nonzero vector."""
        v = np.asarray(vector, dtype=np.complex128)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise InvalidStateError("cannot normalize the zero vector")
        return cls(v / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "QuantumState") -> complex:
        """Inner product ⟨self|other⟩."""
        _require_same_dim(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> "DensityOperator":
        """The pure-state density operator |ψ⟩⟨ψ|."""
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Positive semidefinite, unit-trace Hermitian matrix.

    Attributes:
        entries: The dim×dim complex matrix.
    """

    entries: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = _square(self.entries)
        deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
        if deviation > HERMITIAN_TOL:
            raise NotHermitianError(deviation, HERMITIAN_TOL)
        matrix = hermitize(matrix)
        trace = float(np.real(np.trace(matrix)))
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density operator trace is {trace!r}, not 1")
        smallest = float(np.linalg.eigvalsh(matrix)[0])
        if smallest < -POSITIVITY_TOL:
            raise InvalidStateError(
                f"density operator has negative eigenvalue {smallest:.3e}"
            )
        object.__setattr__(self, "entries", _frozen(matrix))

    @classmethod
    def from_matrix(cls, matrix: ArrayLike) -> "DensityOperator":
        """Build from an accumulated matrix, discarding its anti-Hermitian roundoff."""
        return cls(hermitize(matrix))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def purity(self) -> float:
        """tr(ρ²)."""
        return float(np.real(np.vdot(self.entries, self.entries)))

    def expectation(self, observable: HermitianOperator) -> float:
        """tr(O ρ)."""
        _require_same_dim(self.dim, observable.dim)
        return float(np.real(np.trace(observable.entries @ self.entries)))


def _require_same_dim(left: int, right: int) -> None:
    if left != right:
        raise DimensionMismatchError(left, right)


def herm_expm(operator: HermitianOperator, theta: float) -> UnitaryOperator:
    """Compute the primitive gate exp(-i·theta·H).

    Args:
        operator: Hermitian generator.
        theta: Real exponent scale; negative values are allowed.

    Returns:
        The unitary exponential, built from the eigendecomposition of H.
    """
    return UnitaryOperator(operator.exponential(theta))


def trace_norm(matrix: ArrayLike) -> float:
    """Schatten-1 norm (sum of singular values) of an arbitrary matrix."""
    return float(np.sum(linalg.svdvals(np.asarray(matrix, dtype=np.complex128))))


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """Schatten-1 distance ‖a − b‖₁ without the conventional factor 1/2.

    Orthogonal pure states are at distance 2.
    """
    _require_same_dim(a.dim, b.dim)
    return float(np.sum(np.abs(np.linalg.eigvalsh(a.entries - b.entries))))


def fidelity(psi: QuantumState, rho: DensityOperator) -> float:
    """Return ⟨ψ|ρ|ψ⟩."""
    _require_same_dim(psi.dim, rho.dim)
    amplitudes = psi.amplitudes
    return float(np.real(np.vdot(amplitudes, rho.entries @ amplitudes)))


def spectral_distance(
    a: UnitaryOperator | ArrayLike, b: UnitaryOperator | ArrayLike
) -> float:
    """Spectral-norm distance between two operators of equal dimension."""
    left = a.entries if isinstance(a, UnitaryOperator) else np.asarray(a)
    right = b.entries if isinstance(b, UnitaryOperator) else np.asarray(b)
    _require_same_dim(left.shape[0], right.shape[0])
    return float(np.linalg.norm(left - right, 2))
