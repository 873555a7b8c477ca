"""Factorized-basis measurement behind the Bell analyzer.

After the disentangler, a polarizing beam splitter per mode routes H/V to
four single-photon detectors.  Outcomes are the two-mode basis states,
numbered 1..4 in (HH, HV, VH, VV) order; NO_OUTPUT marks trials where at
least one detector missed (efficiency eta per photon, independent).
A lossy detector never fires in the wrong channel, so detection can drop
an outcome but never relabel it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BellKind

NO_OUTPUT = 0  # distinguished non-outcome; real outcomes are 1..4

WEIGHT_SUM_TOL = 1e-10

# outcome -> which detectors click, as (mode 1 channel, mode 2 channel)
_CLICKS = {1: ("H", "H"), 2: ("H", "V"), 3: ("V", "H"), 4: ("V", "V")}

# factorized state left by the disentangler at phi = pi, per Bell input
_BELL_BY_OUTCOME = {
    1: BellKind.PHI_PLUS,
    2: BellKind.PSI_PLUS,
    3: BellKind.PHI_MINUS,
    4: BellKind.PSI_MINUS,
}


@dataclass(frozen=True)
class ClickPattern:
    """Which detector fired on each mode ('H' or 'V')."""

    mode1: str
    mode2: str

    def __post_init__(self):
        if self.mode1 not in "HV" or self.mode2 not in "HV":
            raise ValueError(f"channels must be 'H' or 'V', got {self}")


def outcome_clicks(outcome: int) -> ClickPattern:
    """Detector pair that signals a given outcome."""
    if outcome not in _CLICKS:
        raise ValueError(f"no click pattern for outcome {outcome}")
    return ClickPattern(*_CLICKS[outcome])


def clicks_outcome(pattern: ClickPattern) -> int:
    return 1 + 2 * (pattern.mode1 == "V") + (pattern.mode2 == "V")


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    """Pass a Generator through, or build one from a seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def born_weights(state) -> np.ndarray:
    """Probabilities of the four factorized outcomes for a two-mode state."""
    s = np.asarray(state, dtype=complex)
    if s.shape != (4,):
        raise ValueError(f"expected a two-mode state of length 4, got shape {s.shape}")
    w = np.abs(s) ** 2
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"outcome weights sum to {w.sum()}, state not normalized")
    return w / w.sum()


def project_factorized(state, rng: np.random.Generator | int | None = None) -> tuple[int, float]:
    """Sample one factorized-basis outcome; returns (outcome, its Born weight)."""
    w = born_weights(state)
    r = as_rng(rng)
    i = int(r.choice(4, p=w))
    return i + 1, float(w[i])


@dataclass
class DetectorBank:
    """Four single-photon detectors with common efficiency eta."""

    eta: float
    rng_seed: int = 0
    _rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")
        self._rng = np.random.default_rng(self.rng_seed)

    def detect(self, outcome: int, rng: np.random.Generator | None = None) -> int:
        return detect(outcome, self, rng)


def detect(outcome: int, bank: DetectorBank, rng: np.random.Generator | None = None) -> int:
    """Pass an outcome through lossy detection.

    Both photons must be seen (probability eta each, independent), else
    NO_OUTPUT.  The outcome index is never altered.
    """
    if outcome == NO_OUTPUT:
        return NO_OUTPUT
    if outcome not in _CLICKS:
        raise ValueError(f"outcome must be 1..4 or NO_OUTPUT, got {outcome}")
    r = bank._rng if rng is None else rng
    clicks = r.random(2) < bank.eta
    return outcome if bool(clicks.all()) else NO_OUTPUT


def classify_bell(outcome: int) -> BellKind:
    """Bell state announced by a factorized outcome at phi = pi."""
    if outcome == NO_OUTPUT:
        raise ValueError("NO_OUTPUT carries no Bell label")
    if outcome not in _BELL_BY_OUTCOME:
        raise ValueError(f"outcome must be 1..4, got {outcome}")
    return _BELL_BY_OUTCOME[outcome]
