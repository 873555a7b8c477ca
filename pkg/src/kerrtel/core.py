"""Polarization-qubit states and gates.

Conventions, fixed once here and relied on everywhere else:
  |H> = (1, 0), |V> = (0, 1); mode 1 occupies the leftmost Kronecker slot,
  so the two-mode basis order is (HH, HV, VH, VV).
Phases are radians confined to [0, 2pi); wrap_phase does the reduction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import kron

TWO_PI = 2.0 * np.pi
UNITARY_TOL = 1e-10
NORM_TOL = 1e-10

KET_H = np.array([1.0, 0.0], dtype=complex)
KET_V = np.array([0.0, 1.0], dtype=complex)


class BellKind(str, enum.Enum):
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"


def wrap_phase(phi: float) -> float:
    """Reduce a phase in radians into [0, 2pi)."""
    phi = float(phi)
    if not np.isfinite(phi):
        raise ValueError("phase must be finite")
    return phi % TWO_PI


def ket(labels: str) -> np.ndarray:
    """Product basis state from a string of H/V labels, e.g. ket('HVH')."""
    if not labels or any(c not in "HV" for c in labels):
        raise ValueError(f"labels must be a nonempty string over H/V, got {labels!r}")
    out = np.array([1.0], dtype=complex)
    for c in labels:
        out = np.kron(out, KET_H if c == "H" else KET_V)
    return out


def num_modes(state: np.ndarray) -> int:
    n = int(np.log2(state.shape[0]))
    if state.ndim != 1 or 2**n != state.shape[0]:
        raise ValueError(f"state length {state.shape} is not a power of two")
    return n


def validate_state(state) -> np.ndarray:
    """Check norm and finiteness; returns the state as a complex array."""
    s = np.asarray(state, dtype=complex)
    num_modes(s)
    if not np.all(np.isfinite(s)):
        raise ValueError("state contains NaN or Inf")
    nrm = np.linalg.norm(s)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"state norm {nrm} drifted beyond {NORM_TOL:.0e}")
    return s


@dataclass(frozen=True, eq=False)
class Gate:
    """A unitary on one or more polarization modes."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"gate matrix must be square, got shape {np.shape(m)}")
        n = int(np.log2(m.shape[0]))
        if 2**n != m.shape[0]:
            raise ValueError(f"gate dimension {m.shape[0]} is not a power of two")
        if not np.all(np.isfinite(m)):
            raise ValueError("gate matrix contains NaN or Inf")
        if np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) > UNITARY_TOL:
            raise ValueError(f"gate {self.label or '?'} is not unitary within {UNITARY_TOL:.0e}")
        object.__setattr__(self, "matrix", m)

    @property
    def num_modes(self) -> int:
        return int(np.log2(self.matrix.shape[0]))


@dataclass(frozen=True)
class KerrParameters:
    """Cross-Kerr coupling strength and interaction time."""

    chi: float
    t_int: float

    def __post_init__(self):
        if self.chi < 0 or self.t_int < 0:
            raise ValueError("chi and t_int must be nonnegative")


def kerr_phase(params: KerrParameters) -> float:
    """Conditional phase chi * t_int accumulated on |VV>, reduced mod 2pi."""
    return wrap_phase(params.chi * params.t_int)


def bell_state(kind: BellKind | str) -> np.ndarray:
    """One of the four two-mode Bell states.

    Sign convention: the |VH> (for psi) or |VV> (for phi) amplitude is
    +1/sqrt(2); the minus states carry the sign on the other term.
    """
    kind = BellKind(kind)
    s = 1.0 / np.sqrt(2.0)
    if kind is BellKind.PSI_PLUS:
        return np.array([0, s, s, 0], dtype=complex)
    if kind is BellKind.PSI_MINUS:
        return np.array([0, -s, s, 0], dtype=complex)
    if kind is BellKind.PHI_PLUS:
        return np.array([s, 0, 0, s], dtype=complex)
    return np.array([-s, 0, 0, s], dtype=complex)


def rotator() -> Gate:
    """pi/4 polarization rotator: |H> -> (|H>+|V>)/sqrt2, |V> -> (|V>-|H>)/sqrt2."""
    m = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2.0)
    return Gate(m, "rotator")


def qpg(phi: float) -> Gate:
    """Two-mode conditional-phase gate: |VV> picks up exp(i phi).

    Equals the exponential exp(i phi N) of the diagonal photon-number
    product N = diag(0,0,0,1), i.e. cross-Kerr evolution with the sign
    convention that the conditional phase on |VV> is +phi.
    """
    phi = wrap_phase(phi)
    return Gate(np.diag([1, 1, 1, np.exp(1j * phi)]), f"qpg({phi:.6g})")


def kerr_number_product() -> np.ndarray:
    """Diagonal generator n_V1 * n_V2 of the conditional-phase gate."""
    return np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)


def disentangler(phi: float) -> Gate:
    """Bell analyzer core: R1^dag . R2 . qpg(phi) . R2^dag (rightmost first).

    R1/R2 are the pi/4 rotator on mode 1/2.  At phi = pi this maps the four
    Bell states onto distinct factorized basis states with overall phase +1
    (checked numerically, not assumed): psi+ -> |HV>, psi- -> |VV>,
    phi+ -> |HH>, phi- -> |VH>.
    """
    phi = wrap_phase(phi)
    rot = rotator().matrix
    eye = np.eye(2, dtype=complex)
    r1 = kron(rot, eye)
    r2 = kron(eye, rot)
    m = r1.conj().T @ r2 @ qpg(phi).matrix @ r2.conj().T
    return Gate(m, f"disentangler({phi:.6g})")


def apply_gate(gate: Gate, state, modes: tuple[int, ...]) -> np.ndarray:
    """Apply a gate to the given 1-based mode indices of a product-space state."""
    s = validate_state(state)
    n = num_modes(s)
    k = gate.num_modes
    if len(modes) != k:
        raise ValueError(f"gate acts on {k} mode(s), got indices {modes}")
    if len(set(modes)) != len(modes):
        raise ValueError(f"repeated mode index in {modes}")
    if any(m < 1 or m > n for m in modes):
        raise ValueError(f"mode index out of range 1..{n}: {modes}")
    axes = [m - 1 for m in modes]
    psi = s.reshape([2] * n)
    gt = gate.matrix.reshape([2] * (2 * k))
    psi = np.tensordot(gt, psi, axes=(list(range(k, 2 * k)), axes))
    # tensordot leaves gate output axes first; restore original mode order
    rest = [i for i in range(n) if i not in axes]
    perm = np.argsort(axes + rest)
    return np.transpose(psi, perm).reshape(-1)
