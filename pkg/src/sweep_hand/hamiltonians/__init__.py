"""Time-dependent Hamiltonian model and benchmark problem builders."""

from .model import (
    Extension,
    LocalTerm,
    NonSeparableTerm,
    Term,
    TimeDepHamiltonian,
    evaluate,
)
from .problems import (
    AdiabaticProblem,
    ProblemInstance,
    ProblemSpec,
    build_grover,
    build_ising,
    build_pagerank,
    draw_grover_problem,
    draw_pagerank_problem,
    google_matrix,
    ising_initial_state,
    plus_state,
    random_digraph,
    random_product_state,
    transition_matrix,
)
from .schedules import Schedule, ScheduleKind, constant, from_callable, ramp, sine_pulse

__all__ = [
    "AdiabaticProblem",
    "Extension",
    "LocalTerm",
    "NonSeparableTerm",
    "ProblemInstance",
    "ProblemSpec",
    "Schedule",
    "ScheduleKind",
    "Term",
    "TimeDepHamiltonian",
    "build_grover",
    "build_ising",
    "build_pagerank",
    "constant",
    "draw_grover_problem",
    "draw_pagerank_problem",
    "evaluate",
    "from_callable",
    "google_matrix",
    "ising_initial_state",
    "plus_state",
    "ramp",
    "random_digraph",
    "random_product_state",
    "sine_pulse",
    "transition_matrix",
]
