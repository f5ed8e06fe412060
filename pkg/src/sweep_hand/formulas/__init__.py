"""Product formulas, the Magnus baseline and multi-product formulas."""

from sweep_hand.formulas.coefficients import (
    FRO,
    FRS,
    LIE,
    OST4,
    STRANG,
    SUZ4,
    LiftedCoefficients,
    SplitCoefficients,
    SplitWindows,
    builtin_schemes,
    get_scheme,
    lift,
)
from sweep_hand.formulas.gates import Gate, GateSequence, gate_count_table, merge_gates
from sweep_hand.formulas.magnus import iacs_correction, iacs_gates, iacs_step
from sweep_hand.formulas.multiproduct import (
    MpfSpec,
    MultiProductStep,
    closed_form_alpha,
    mpf_coefficients,
    mpf_step,
    mpf_step_hdr,
    mpf_step_pointwise,
)
from sweep_hand.formulas.product import (
    StepFn,
    StepResult,
    compose_evolution,
    hdr_gates,
    hdr_step,
    lifted_product_unitary,
    pointwise_gates,
    pointwise_step,
)

__all__ = [
    "FRO",
    "FRS",
    "LIE",
    "OST4",
    "STRANG",
    "SUZ4",
    "Gate",
    "GateSequence",
    "LiftedCoefficients",
    "MpfSpec",
    "MultiProductStep",
    "SplitCoefficients",
    "SplitWindows",
    "StepFn",
    "StepResult",
    "builtin_schemes",
    "closed_form_alpha",
    "compose_evolution",
    "gate_count_table",
    "get_scheme",
    "hdr_gates",
    "hdr_step",
    "iacs_correction",
    "iacs_gates",
    "iacs_step",
    "lift",
    "lifted_product_unitary",
    "merge_gates",
    "mpf_coefficients",
    "mpf_step",
    "mpf_step_hdr",
    "mpf_step_pointwise",
    "pointwise_gates",
    "pointwise_step",
]
