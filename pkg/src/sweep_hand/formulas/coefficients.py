"""Two-operator splitting coefficients, their lifting and time windows."""

import logging
from dataclasses import dataclass
from functools import cache

from sweep_hand.exceptions import PreconditionError

__all__ = [
    "SplitCoefficients",
    "LiftedCoefficients",
    "SplitWindows",
    "builtin_schemes",
    "get_scheme",
    "lift",
    "LIE",
    "STRANG",
    "FRS",
    "FRO",
    "SUZ4",
    "OST4",
]

logger = logging.getLogger(__name__)

SUM_TOL = 1e-12


@dataclass(frozen=True)
class SplitCoefficients:
    """Time-independent product formula e^{a₁ΔtA} e^{b₁ΔtB} ⋯ e^{a_{q+1}ΔtA}.

    Attributes:
        a: The q+1 weights of the first operator.
        b: The q weights of the second operator.
        order: Declared order n.
        name: Scheme name.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    order: int
    name: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        if len(self.a) != len(self.b) + 1 or not self.b:
            raise PreconditionError(
                f"{self.name}: need len(a) = len(b) + 1 >= 2, "
                f"got {len(self.a)} and {len(self.b)}"
            )
        for label, weights in (("a", self.a), ("b", self.b)):
            if abs(sum(weights) - 1.0) > SUM_TOL:
                raise PreconditionError(
                    f"{self.name}: weights {label} sum to {sum(weights)!r}, not 1"
                )

    @property
    def q(self) -> int:
        """Cycle count."""
        return len(self.b)

    def lift(self) -> "LiftedCoefficients":
        return lift(self)

    def windows(self, dt: float) -> "SplitWindows":
        """Window offsets L and R for a step of length dt."""
        return SplitWindows.from_lifted(self.lift(), dt)


@dataclass(frozen=True)
class LiftedCoefficients:
    """Forward/backward sweep weights of the lifted Λ-operator splitting.

    Attributes:
        c: Forward-sweep weights, one per cycle.
        d: Backward-sweep weights, one per cycle.
    """

    c: tuple[float, ...]
    d: tuple[float, ...]

    @property
    def q(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class SplitWindows:
    """Offsets from the step start at which the lifted sweeps begin and end.

    Cycle j's forward sweep covers [R_j, L_j] and its backward sweep
    [L_{j+1}, R_j], with L_1 = Δt and L_{q+1} = 0.

    Attributes:
        L: q+1 offsets, decreasing from dt to 0 when all weights are positive.
        R: q offsets.
    """

    L: tuple[float, ...]
    R: tuple[float, ...]

    @classmethod
    def from_lifted(cls, lifted: LiftedCoefficients, dt: float) -> "SplitWindows":
        q = lifted.q
        tail = [0.0] * (q + 1)
        for j in range(q - 1, -1, -1):
            tail[j] = tail[j + 1] + lifted.c[j] + lifted.d[j]
        L = [dt * tail[j] for j in range(q + 1)]
        L[0], L[q] = dt, 0.0
        R = [dt * (lifted.d[j] + tail[j + 1]) for j in range(q)]
        return cls(tuple(L), tuple(R))


def lift(coeffs: SplitCoefficients) -> LiftedCoefficients:
    """Lift a two-operator splitting to the Λ-operator sweep form.

    c₁ = a₁, c_k = a_k − d_{k−1}, d_k = b_k − c_k. The order is preserved.

    Args:
        coeffs: Two-operator splitting coefficients.

    Returns:
        The lifted weights (c, d).
    """
    c: list[float] = []
    d: list[float] = []
    for k in range(coeffs.q):
        c.append(coeffs.a[k] - (d[k - 1] if k else 0.0))
        d.append(coeffs.b[k] - c[k])
    return LiftedCoefficients(tuple(c), tuple(d))


def _symmetric(first_half: list[float], middle: list[float]) -> tuple[float, ...]:
    return (*first_half, *middle, *reversed(first_half))


_GAMMA = 1.3512071919596578

LIE = SplitCoefficients(a=(1.0, 0.0), b=(1.0,), order=1, name="Lie")
STRANG = SplitCoefficients(a=(0.5, 0.5), b=(1.0,), order=2, name="Strang")

# Forest-Ruth-Suzuki
FRS = SplitCoefficients(
    a=(_GAMMA / 2, (1 - _GAMMA) / 2, (1 - _GAMMA) / 2, _GAMMA / 2),
    b=(_GAMMA, 1 - 2 * _GAMMA, _GAMMA),
    order=4,
    name="FRS",
)

# Omelyan's Forest-Ruth type
_FRO_A1, _FRO_A2 = 0.1720865590295143, -0.1616217622107222
_FRO_B1 = 0.5915620307551568
FRO = SplitCoefficients(
    a=_symmetric([_FRO_A1, _FRO_A2], [1 - 2 * (_FRO_A1 + _FRO_A2)]),
    b=_symmetric([_FRO_B1, 0.5 - _FRO_B1], []),
    order=4,
    name="FRO",
)

_SUZ_A1, _SUZ_A2 = 0.2072453858971879, 0.4144907717943757
_SUZ_B = 0.4144907717943757
SUZ4 = SplitCoefficients(
    a=_symmetric([_SUZ_A1, _SUZ_A2, 0.5 - (_SUZ_A1 + _SUZ_A2)], []),
    b=_symmetric([_SUZ_B, _SUZ_B], [1 - 4 * _SUZ_B]),
    order=4,
    name="Suz4",
)

# Ostmeyer's optimized fourth order
_OST_A1, _OST_A2 = 0.09257547473195787, 0.4627160310210738
_OST_B1, _OST_B2 = 0.2540996315529392, -0.1676517240119692
OST4 = SplitCoefficients(
    a=_symmetric([_OST_A1, _OST_A2, 0.5 - (_OST_A1 + _OST_A2)], []),
    b=_symmetric([_OST_B1, _OST_B2], [1 - 2 * (_OST_B1 + _OST_B2)]),
    order=4,
    name="Ost4",
)


@cache
def _registry() -> dict[str, SplitCoefficients]:
    return {scheme.name.lower(): scheme for scheme in builtin_schemes()}


def builtin_schemes() -> list[SplitCoefficients]:
    """The bundled schemes: Lie, Strang, FRS, FRO, Suz4 and Ost4."""
    return [LIE, STRANG, FRS, FRO, SUZ4, OST4]


def get_scheme(name: str) -> SplitCoefficients:
    """Look a builtin scheme up by case-insensitive name.

    Raises:
        KeyError: If no builtin scheme has that name.
    """
    try:
        return _registry()[name.lower()]
    except KeyError:
        known = ", ".join(s.name for s in builtin_schemes())
        raise KeyError(f"unknown scheme {name!r}; known: {known}") from None
