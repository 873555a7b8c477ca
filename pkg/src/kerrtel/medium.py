"""Steady-state response of a four-level EIT medium as a phase-gate source.

A single off-resonant probe interacting with the upper transition of an
EIT ladder picks up a cross-phase shift per photon pair of
    phase = gamma * delta / (4 gamma^2 + 4 delta^2)
(in units of the peak two-photon coupling) together with the absorption
    loss = gamma^2 / (4 gamma^2 + 4 delta^2),
where gamma is the upper-state linewidth and delta the probe detuning.
The phase is maximal at delta = gamma, where phase = loss = 1/8, and falls
off like gamma / (4 delta) far from resonance.  Absorption is reported,
never silently folded into the fidelity estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fidelity import analytic_favg

ABSORPTION_WARN_THRESHOLD = 0.01

# conditional phase reported for an early single-atom cavity phase gate,
# 16 degrees, usable as a what-if preset for medium_to_fidelity
CAVITY_GATE_PHASE_PRESET = math.radians(16.0)


@dataclass(frozen=True)
class MediumParameters:
    """Upper-transition linewidth gamma24 (> 0) and probe detuning delta24."""

    gamma24: float
    delta24: float

    def __post_init__(self):
        if not self.gamma24 > 0:
            raise ValueError(f"gamma24 must be positive, got {self.gamma24}")
        if not math.isfinite(self.delta24):
            raise ValueError("delta24 must be finite")


@dataclass(frozen=True)
class MediumEstimate:
    """Per-photon-pair phase shift and loss of one medium setting."""

    phase_shift: float
    absorption: float
    large_detuning_phase: float

    @property
    def absorption_warning(self) -> bool:
        return self.absorption > ABSORPTION_WARN_THRESHOLD


def estimate_medium(params: MediumParameters) -> MediumEstimate:
    """Exact steady-state phase and absorption, plus the far-detuned asymptote.

    At delta24 = 0 the phase vanishes and absorption peaks at 1/4; the
    asymptote gamma/(4 delta) is returned as +/-inf there since it only
    means anything for |delta24| >> gamma24.
    """
    g, d = params.gamma24, params.delta24
    denom = 4.0 * g * g + 4.0 * d * d
    phase = g * d / denom
    absorption = g * g / denom
    asymptote = math.inf if d == 0 else g / (4.0 * d)
    return MediumEstimate(phase, absorption, asymptote)


def medium_to_fidelity(params: MediumParameters) -> float:
    """Average teleportation fidelity if the medium's phase drives the gate.

    Loss is not applied; check MediumEstimate.absorption_warning separately.
    """
    return analytic_favg(estimate_medium(params).phase_shift)
