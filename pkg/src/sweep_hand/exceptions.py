"""Exception hierarchy for sweep-hand."""

__all__ = [
    "SweepHandError",
    "NotHermitianError",
    "InvalidStateError",
    "DimensionMismatchError",
    "ConvergenceError",
    "UnsupportedTermError",
    "SingularSystemError",
    "PreconditionError",
    "ConfigError",
    "EmitError",
]


class SweepHandError(Exception):
    """Base class for all sweep-hand errors."""


class NotHermitianError(SweepHandError, ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance.

    Attributes:
        deviation: Max-entry deviation ``|A - A^H|`` that was observed.
        tolerance: Allowed deviation for this matrix.
    """

    def __init__(self, deviation: float, tolerance: float) -> None:
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"matrix is not Hermitian: |A - A^H| = {deviation:.3e} "
            f"exceeds {tolerance:.3e}"
        )


class InvalidStateError(SweepHandError, ValueError):
    """State, density matrix or unitary violates its normalization invariants."""


class DimensionMismatchError(SweepHandError, ValueError):
    """Operands live on Hilbert spaces of different dimension."""

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(f"dimension mismatch: {left} != {right}")


class ConvergenceError(SweepHandError, RuntimeError):
    """Refinement did not reach the requested tolerance.

    Attributes:
        last_errors: The two most recent refinement differences.
        steps: Step count at which refinement gave up.
    """

    def __init__(self, last_errors: tuple[float, float], steps: int) -> None:
        self.last_errors = last_errors
        self.steps = steps
        super().__init__(
            f"no convergence after {steps} steps; last refinement errors "
            f"{last_errors[0]:.3e}, {last_errors[1]:.3e}"
        )


class UnsupportedTermError(SweepHandError, TypeError):
    """A scheme needs f(t)·h local terms but received a non-separable one."""


class SingularSystemError(SweepHandError, ValueError):
    """A linear system or normalizing integral is singular."""


class PreconditionError(SweepHandError, ValueError):
    """Inputs violate a documented precondition."""


class ConfigError(SweepHandError, ValueError):
    """Benchmark configuration could not be loaded or validated."""


class EmitError(SweepHandError, OSError):
    """Results could not be written."""
