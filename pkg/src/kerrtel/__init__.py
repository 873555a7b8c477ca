"""Exact simulator for polarization-qubit teleportation whose Bell analyzer
is built from pi/4 rotators and a cross-Kerr conditional-phase gate."""

from .bell import NO_OUTPUT, DetectorBank, classify_bell, detect, project_factorized
from .core import (
    BellKind,
    Gate,
    KerrParameters,
    apply_gate,
    bell_state,
    disentangler,
    kerr_phase,
    ket,
    qpg,
    rotator,
    wrap_phase,
)
from .fidelity import (
    BlochPoint,
    FidelityReport,
    analytic_favg,
    beats_classical,
    fidelity_report,
    monte_carlo_favg,
    quadrature_favg,
    sample_bloch_states,
)
from .medium import MediumEstimate, MediumParameters, estimate_medium, medium_to_fidelity
from .teleport import (
    branch_operators,
    branch_operators_closed_form,
    corrections_closed_form,
    optimal_corrections,
    output_density,
    state_fidelity,
    teleport_many,
    teleport_once,
)

__version__ = "0.1.0"
