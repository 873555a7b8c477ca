import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrtel.fidelity import CLASSICAL_BOUND, analytic_favg
from kerrtel.medium import (
    CAVITY_GATE_PHASE_PRESET,
    MediumEstimate,
    MediumParameters,
    estimate_medium,
    medium_to_fidelity,
)

finite_detuning = st.floats(-1e6, 1e6, allow_nan=False)
linewidth = st.floats(1e-6, 1e6, allow_nan=False)


def test_estimate_at_matched_detuning():
    est = estimate_medium(MediumParameters(gamma24=2.0, delta24=2.0))
    assert est.phase_shift == 0.125
    assert est.absorption == 0.125
    # the asymptote is off by 2x here; it only applies far from resonance
    assert est.large_detuning_phase == 0.25


def test_estimate_on_resonance():
    est = estimate_medium(MediumParameters(gamma24=1.0, delta24=0.0))
    assert est.phase_shift == 0.0
    assert est.absorption == 0.25
    assert est.large_detuning_phase == math.inf


def test_estimate_far_detuned():
    est = estimate_medium(MediumParameters(gamma24=1.0, delta24=100.0))
    assert est.phase_shift == 100.0 / 40004.0
    assert est.large_detuning_phase == 2.5e-3
    assert abs(est.phase_shift - est.large_detuning_phase) / est.phase_shift < 1e-4


def test_asymptote_accuracy_scaling():
    # relative gap between exact phase and gamma/(4 delta) falls like 2/x^2
    for x in (50.0, 100.0, 1e3):
        est = estimate_medium(MediumParameters(gamma24=1.0, delta24=x))
        rel = abs(est.phase_shift - est.large_detuning_phase) / est.phase_shift
        assert rel < 2.0 / x**2


@settings(max_examples=100, deadline=None)
@given(linewidth, finite_detuning)
def test_phase_odd_absorption_even(g, d):
    plus = estimate_medium(MediumParameters(g, d))
    minus = estimate_medium(MediumParameters(g, -d))
    assert plus.phase_shift == -minus.phase_shift
    assert plus.absorption == minus.absorption


@settings(max_examples=100, deadline=None)
@given(linewidth, finite_detuning)
def test_phase_bounded_absorption_in_range(g, d):
    est = estimate_medium(MediumParameters(g, d))
    assert abs(est.phase_shift) <= 0.125
    assert 0.0 <= est.absorption <= 0.25


def test_phase_maximal_at_matched_detuning():
    best = max(
        np.linspace(0.01, 10.0, 2000),
        key=lambda d: estimate_medium(MediumParameters(1.0, float(d))).phase_shift,
    )
    assert abs(best - 1.0) < 0.01


def test_parameter_validation():
    with pytest.raises(ValueError):
        MediumParameters(gamma24=0.0, delta24=1.0)
    with pytest.raises(ValueError):
        MediumParameters(gamma24=-1.0, delta24=1.0)
    with pytest.raises(ValueError):
        MediumParameters(gamma24=1.0, delta24=math.nan)


def test_fidelity_at_matched_detuning():
    f = medium_to_fidelity(MediumParameters(1.0, 1.0))
    assert abs(f - (2 / 3 + math.sin(1 / 16) / 3)) < 1e-15
    assert abs(f - 0.6874865) < 1e-6


def test_fidelity_approaches_classical_bound_far_detuned():
    f = medium_to_fidelity(MediumParameters(1.0, 1e8))
    assert abs(f - CLASSICAL_BOUND) < 1e-8


def test_fidelity_beats_bound_whenever_phase_positive():
    for d in np.geomspace(1e-3, 1e5, 40):
        p = MediumParameters(1.0, float(d))
        assert estimate_medium(p).phase_shift > 0
        assert medium_to_fidelity(p) > CLASSICAL_BOUND


def test_absorption_warning_flag():
    assert estimate_medium(MediumParameters(1.0, 1.0)).absorption_warning
    assert not estimate_medium(MediumParameters(1.0, 100.0)).absorption_warning
    assert not MediumEstimate(0.0, 0.01, 0.0).absorption_warning  # threshold exclusive


def test_cavity_gate_preset():
    assert CAVITY_GATE_PHASE_PRESET == math.radians(16.0)
    assert abs(analytic_favg(CAVITY_GATE_PHASE_PRESET) - (2 / 3 + math.sin(math.radians(8)) / 3)) < 1e-15
