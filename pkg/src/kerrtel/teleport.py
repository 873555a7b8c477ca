"""Teleportation through the conditional-phase Bell analyzer.

Alice holds the unknown qubit on mode 1 and shares the psi+ pair (modes
2, 3) with Bob.  Running modes 1, 2 through the disentangler and measuring
in the factorized basis leaves Bob's mode 3 in branch_operators(phi)[i] |in>
up to normalization; the optimal local repair is the inverse unitary polar
factor of that branch, and it restores the input exactly only at phi = pi.

branch_operators extracts the four 2x2 operators from a dense simulation
of the three-mode circuit; the closed-form variants are written out
independently so the two routes can be checked against each other.
"""

from __future__ import annotations

import numpy as np

from .bell import NO_OUTPUT, DetectorBank, as_rng, project_factorized
from .core import (
    BellKind,
    KET_H,
    KET_V,
    bell_state,
    disentangler,
    kron,
    validate_state,
    wrap_phase,
)
from .linalg import polar_decompose

TRACE_TOL = 1e-10
IMAG_TOL = 1e-12


class NumericalConsistencyError(ValueError):
    """Raised when a quantity that must be real carries imaginary residue."""


def branch_operators(phi: float) -> np.ndarray:
    """The four 2x2 operators mapping Alice's input to Bob's conditional state.

    Derived by applying the disentangler to modes 1, 2 of |in>_1 |psi+>_23
    and reading off the mode-3 amplitudes in each factorized block; the two
    input columns |H>, |V> determine each operator completely.  Shape
    (4, 2, 2), indexed by outcome - 1.  Satisfies sum_i O_i^dag O_i = 1.
    """
    d8 = kron(disentangler(phi).matrix, np.eye(2, dtype=complex))
    pair = bell_state(BellKind.PSI_PLUS)
    ops = np.zeros((4, 2, 2), dtype=complex)
    for col, basis in enumerate((KET_H, KET_V)):
        out = d8 @ kron(basis, pair)
        ops[:, :, col] = out.reshape(4, 2)
    return ops


def branch_operators_closed_form(phi: float) -> np.ndarray:
    """Hand-written closed forms of the four branch operators."""
    phi = wrap_phase(phi)
    a = np.exp(1j * phi / 2) * np.cos(phi / 2)
    b = -1j * np.exp(1j * phi / 2) * np.sin(phi / 2)
    return 0.5 * np.array(
        [
            [[0, b], [1, a]],
            [[1, a], [0, b]],
            [[0, b], [-1, a]],
            [[-1, a], [0, b]],
        ],
        dtype=complex,
    )


def optimal_corrections(phi: float) -> np.ndarray:
    """Bob's repair unitaries: inverse of each branch's unitary polar factor.

    With O_i = T_i R_i (R_i Hermitian PSD), the correction T_i^dag leaves the
    unavoidable distortion R_i, which is what bounds the fidelity away from 1
    for phi != pi.  Shape (4, 2, 2).
    """
    return np.stack([polar_decompose(g)[0].conj().T for g in branch_operators(phi)])


def corrections_closed_form(phi: float) -> np.ndarray:
    """Hand-written closed forms of the four repair unitaries."""
    phi = wrap_phase(phi)
    p = (np.pi + phi) / 4
    m = (np.pi - phi) / 4
    e = np.exp(-1j * phi / 2)
    return np.array(
        [
            [[-1j * np.cos(p), np.sin(p)], [1j * e * np.sin(p), e * np.cos(p)]],
            [[np.cos(m), -1j * np.sin(m)], [e * np.sin(m), 1j * e * np.cos(m)]],
            [[1j * np.cos(p), -np.sin(p)], [1j * e * np.sin(p), e * np.cos(p)]],
            [[-np.cos(m), 1j * np.sin(m)], [e * np.sin(m), 1j * e * np.cos(m)]],
        ],
        dtype=complex,
    )


def distortion_factors(phi: float) -> np.ndarray:
    """Hermitian polar factors R_i = sqrt(O_i^dag O_i) of the branches.

    Taken from the polar decomposition rather than an eigendecomposition of
    the Gram matrix: the branches drop to rank 1 when the conditional phase
    vanishes, and there the sqrt-of-eigh route amplifies roundoff.
    """
    return np.stack([polar_decompose(g)[1] for g in branch_operators(phi)])


def _trial(s, ops, corrections, bank, rng) -> tuple[int, np.ndarray | None]:
    branch = np.einsum("iab,b->ia", ops, s)
    weights = np.einsum("ia,ia->i", branch.conj(), branch).real
    i = int(rng.choice(4, p=weights / weights.sum()))
    outcome = bank.detect(i + 1)
    if outcome == NO_OUTPUT:
        return NO_OUTPUT, None
    bob = corrections[i] @ branch[i]
    return outcome, bob / np.linalg.norm(bob)


def teleport_once(
    state,
    phi: float,
    bank: DetectorBank,
    rng: np.random.Generator | int | None = None,
) -> tuple[int, np.ndarray | None]:
    """One protocol run: sample an outcome, detect, repair.

    Returns (outcome, Bob's repaired state), or (NO_OUTPUT, None) when a
    detector misses.  `rng` drives the Born sampling; the bank's own stream
    drives detection.
    """
    s = validate_state(state)
    if s.shape != (2,):
        raise ValueError(f"input must be a single-mode state, got shape {s.shape}")
    return _trial(s, branch_operators(phi), optimal_corrections(phi), bank, as_rng(rng))


def teleport_many(
    states: np.ndarray,
    phi: float,
    bank: DetectorBank,
    rng: np.random.Generator | int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """One trial per row of `states`; returns (outcomes, fidelities).

    Fidelity is |<in|bob>|^2 of the repaired state against that trial's own
    input, NaN where detection failed.  Operators are computed once, so this
    is the loop to use for long runs.
    """
    states = np.asarray(states, dtype=complex)
    ops = branch_operators(phi)
    corrections = optimal_corrections(phi)
    r = as_rng(rng)
    outcomes = np.zeros(len(states), dtype=int)
    fidelities = np.full(len(states), np.nan)
    for n, s in enumerate(states):
        outcome, bob = _trial(s, ops, corrections, bank, r)
        outcomes[n] = outcome
        if bob is not None:
            fidelities[n] = abs(np.vdot(s, bob)) ** 2
    return outcomes, fidelities


def output_density(state, phi: float) -> np.ndarray:
    """Average output of the repaired protocol: sum_i U_i O_i |in><in| O_i^dag U_i^dag."""
    s = validate_state(state)
    if s.shape != (2,):
        raise ValueError(f"input must be a single-mode state, got shape {s.shape}")
    branch = np.einsum("iab,b->ia", branch_operators(phi), s)
    repaired = np.einsum("iab,ib->ia", optimal_corrections(phi), branch)
    rho = np.einsum("ia,ib->ab", repaired, repaired.conj())
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise NumericalConsistencyError(f"output trace {tr} drifted from 1")
    return 0.5 * (rho + rho.conj().T)


def state_fidelity(state, rho) -> float:
    """<in| rho |in> for a pure reference state and a density operator."""
    s = validate_state(state)
    r = np.asarray(rho, dtype=complex)
    if r.shape != (s.shape[0], s.shape[0]):
        raise ValueError(f"density operator shape {r.shape} does not match state")
    val = complex(s.conj() @ r @ s)
    if abs(val.imag) > IMAG_TOL:
        raise NumericalConsistencyError(f"fidelity has imaginary residue {val.imag:.3e}")
    return float(val.real)
