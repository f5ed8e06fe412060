"""Primitive single-term exponentials and their ordered sequences."""

import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

import numpy as np

from sweep_hand.exceptions import PreconditionError, UnsupportedTermError
from sweep_hand.hamiltonians.model import LocalTerm, TimeDepHamiltonian
from sweep_hand.operators import ComplexMatrix, UnitaryOperator

__all__ = [
    "GateKind",
    "Gate",
    "GateSequence",
    "merge_gates",
    "gate_count_table",
]

logger = logging.getLogger(__name__)

GateKind = Literal["pw", "int"]

_LINE = re.compile(
    r"^k=(?P<k>\d+) kind=(?P<kind>pw|int) "
    r"t0=(?P<t0>\S+) t1=(?P<t1>\S+) coeff=(?P<coeff>\S+)$"
)


@dataclass(frozen=True)
class Gate:
    """One primitive exponential of a single local term.

    A pointwise gate is exp(−i·coeff·H_k(t0)) with t0 = t1 the evaluation
    time and coeff the duration. An integrated gate is exp(−i·coeff·h_k)
    where coeff is the exponent, normally ∫_{t0}^{t1} f_k.

    Attributes:
        term: Zero-based index of the local term.
        kind: "pw" or "int".
        t0: Evaluation time, or window start.
        t1: Evaluation time, or window end.
        coeff: Duration (pointwise) or exponent (integrated).
    """

    term: int
    kind: GateKind
    t0: float
    t1: float
    coeff: float

    @classmethod
    def pointwise(cls, term: int, time: float, duration: float) -> "Gate":
        return cls(term, "pw", time, time, duration)

    @classmethod
    def integrated(cls, term: int, t0: float, t1: float, exponent: float) -> "Gate":
        return cls(term, "int", t0, t1, exponent)

    def matrix(self, hamiltonian: TimeDepHamiltonian) -> ComplexMatrix:
        """The gate's raw matrix for the given Hamiltonian."""
        term = hamiltonian.terms[self.term]
        if self.kind == "pw":
            return term.exponential(self.coeff, self.t0)
        if not isinstance(term, LocalTerm):
            raise UnsupportedTermError(
                f"integrated gate needs an f(t)·h term; term {self.term} is not"
            )
        return term.operator.exponential(self.coeff)

    def to_text(self) -> str:
        return (
            f"k={self.term} kind={self.kind} "
            f"t0={self.t0!r} t1={self.t1!r} coeff={self.coeff!r}"
        )


def merge_gates(gates: Iterable[Gate]) -> list[Gate]:
    """Drop zero exponents, then fuse adjacent gates with equal generators.

    Pointwise neighbours fuse when they share term and evaluation time.
    Integrated neighbours of the same term always fuse; their windows are
    joined from the first gate's start to the second gate's end.

    Args:
        gates: Gates in application order.

    Returns:
        The reduced list, still in application order.
    """
    merged: list[Gate] = []
    for gate in gates:
        if gate.coeff == 0.0:
            continue
        if merged:
            last = merged[-1]
            same_pw = gate.kind == last.kind == "pw" and gate.t0 == last.t0
            same_int = gate.kind == last.kind == "int"
            if gate.term == last.term and (same_pw or same_int):
                merged[-1] = Gate(
                    last.term, last.kind, last.t0, gate.t1, last.coeff + gate.coeff
                )
                continue
        merged.append(gate)
    return merged


@dataclass(frozen=True)
class GateSequence:
    """Ordered gates of one scheme step, first applied first.

    Attributes:
        gates: The gates in application order.
    """

    gates: tuple[Gate, ...]

    @classmethod
    def build(cls, gates: Iterable[Gate]) -> "GateSequence":
        """Merge and wrap gates given in application order."""
        return cls(tuple(merge_gates(gates)))

    @property
    def count(self) -> int:
        """Number of primitive exponentials."""
        return len(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "GateSequence") -> "GateSequence":
        """Concatenate without merging across the seam."""
        return GateSequence(self.gates + other.gates)

    def to_unitary(self, hamiltonian: TimeDepHamiltonian) -> UnitaryOperator:
        """The product of the gates, later gates on the left."""
        result = np.eye(hamiltonian.dim, dtype=np.complex128)
        for gate in self.gates:
            result = gate.matrix(hamiltonian) @ result
        return UnitaryOperator(result)

    def to_text(self) -> str:
        return "\n".join(gate.to_text() for gate in self.gates)

    @classmethod
    def from_text(cls, text: str) -> "GateSequence":
        """Parse the line format written by ``to_text``.

        Raises:
            PreconditionError: On a malformed line.
        """
        gates: list[Gate] = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            match = _LINE.match(line)
            if match is None:
                raise PreconditionError(f"gate line {number} is malformed: {line!r}")
            gates.append(
                Gate(
                    term=int(match["k"]),
                    kind="pw" if match["kind"] == "pw" else "int",
                    t0=float(match["t0"]),
                    t1=float(match["t1"]),
                    coeff=float(match["coeff"]),
                )
            )
        return cls(tuple(gates))


def gate_count_table(n_terms: int, q: int, lambda_prime: int | None = None) -> int:
    """Closed-form gate count of one lifted time-dependent step.

    Args:
        n_terms: Decomposition count Λ.
        q: Cycle count of the base scheme.
        lambda_prime: Split index Λ′ of a pointwise step, or None for an
            integrated-window step.

    Returns:
        2Λq − q for Λ′ = 0, 2Λq − (q − 1) for Λ′ = Λ, and 2Λq − (2q − 1)
        otherwise.
    """
    full = 2 * n_terms * q
    if lambda_prime is None or 0 < lambda_prime < n_terms:
        return full - (2 * q - 1)
    if lambda_prime == 0:
        return full - q
    if lambda_prime == n_terms:
        return full - (q - 1)
    raise PreconditionError(f"lambda_prime {lambda_prime} outside [0, {n_terms}]")
