import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrtel.core import (
    BellKind,
    Gate,
    KerrParameters,
    apply_gate,
    bell_state,
    disentangler,
    kerr_number_product,
    kerr_phase,
    ket,
    qpg,
    rotator,
    validate_state,
    wrap_phase,
)

S2 = 1 / np.sqrt(2)


def random_state(n_modes, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**n_modes) + 1j * rng.normal(size=2**n_modes)
    return v / np.linalg.norm(v)


# --- phases ---------------------------------------------------------------

def test_wrap_phase():
    assert wrap_phase(0.0) == 0.0
    assert wrap_phase(2 * np.pi) == 0.0
    assert abs(wrap_phase(-np.pi / 2) - 3 * np.pi / 2) < 1e-15
    with pytest.raises(ValueError):
        wrap_phase(np.inf)


def test_kerr_phase_products():
    assert kerr_phase(KerrParameters(np.pi, 1.0)) == pytest.approx(np.pi)
    assert kerr_phase(KerrParameters(0.0, 5.0)) == 0.0
    assert kerr_phase(KerrParameters(3 * np.pi, 1.0)) == pytest.approx(np.pi)


def test_kerr_parameters_reject_negative():
    with pytest.raises(ValueError):
        KerrParameters(-1.0, 1.0)


# --- states ---------------------------------------------------------------

def test_ket_basis():
    assert np.array_equal(ket("H"), [1, 0])
    assert np.array_equal(ket("HV"), [0, 1, 0, 0])
    assert np.array_equal(ket("VVH"), [0, 0, 0, 0, 0, 0, 1, 0])
    with pytest.raises(ValueError):
        ket("HX")


def test_bell_state_amplitudes():
    assert np.allclose(bell_state(BellKind.PSI_PLUS), [0, S2, S2, 0], atol=1e-16)
    assert np.allclose(bell_state(BellKind.PSI_MINUS), [0, -S2, S2, 0], atol=1e-16)
    assert np.allclose(bell_state(BellKind.PHI_PLUS), [S2, 0, 0, S2], atol=1e-16)
    assert np.allclose(bell_state(BellKind.PHI_MINUS), [-S2, 0, 0, S2], atol=1e-16)


def test_bell_states_orthonormal():
    basis = np.stack([bell_state(k) for k in BellKind])
    gram = basis.conj() @ basis.T
    assert np.max(np.abs(gram - np.eye(4))) < 1e-14


def test_bell_state_accepts_strings():
    assert np.array_equal(bell_state("phi_minus"), bell_state(BellKind.PHI_MINUS))


def test_validate_state_norm():
    with pytest.raises(ValueError):
        validate_state(np.array([1.0, 1.0]))


# --- gates ----------------------------------------------------------------

def test_rotator_action():
    r = rotator().matrix
    assert np.allclose(r @ ket("H"), [S2, S2], atol=1e-16)
    assert np.allclose(r @ ket("V"), [-S2, S2], atol=1e-16)


def test_rotator_unitary():
    r = rotator().matrix
    assert np.max(np.abs(r @ r.conj().T - np.eye(2))) < 1e-15


def test_rotator_fourth_power():
    r = rotator().matrix
    assert np.max(np.abs(np.linalg.matrix_power(r, 4) + np.eye(2))) < 1e-15


def test_qpg_truth_table():
    assert np.allclose(qpg(np.pi).matrix, np.diag([1, 1, 1, -1]), atol=1e-15)
    assert np.array_equal(qpg(0.0).matrix, np.eye(4))


def test_qpg_matches_kerr_generator():
    # conditional-phase gate == exp(i phi N) for the diagonal pair-number
    # generator, phi = chi * t_int
    for phi in np.linspace(0.1, 6.2, 13):
        expected = scipy.linalg.expm(1j * phi * kerr_number_product())
        assert np.max(np.abs(qpg(phi).matrix - expected)) < 1e-12


@settings(max_examples=40)
@given(st.floats(0.0, 2 * np.pi, exclude_max=True, allow_nan=False))
def test_qpg_inverse(phi):
    prod = qpg(phi).matrix @ qpg((-phi) % (2 * np.pi)).matrix
    assert np.max(np.abs(prod - np.eye(4))) < 1e-12


def test_gate_rejects_non_unitary():
    with pytest.raises(ValueError):
        Gate(np.array([[1, 1], [0, 1]], dtype=complex), "shear")


def test_gate_rejects_non_square():
    with pytest.raises(ValueError):
        Gate(np.ones((2, 3)), "rect")


# --- disentangler ---------------------------------------------------------

def test_disentangler_at_zero_is_inverse_rotator_on_mode_one():
    expected = np.kron(rotator().matrix.conj().T, np.eye(2))
    assert np.max(np.abs(disentangler(0.0).matrix - expected)) < 1e-12


def test_disentangler_unitary_everywhere():
    rng = np.random.default_rng(11)
    for phi in rng.uniform(0, 2 * np.pi, 100):
        m = disentangler(phi).matrix
        assert np.max(np.abs(m.conj().T @ m - np.eye(4))) < 1e-12


def test_disentangler_pi_separates_bell_states():
    # psi+ -> HV, psi- -> VV, phi+ -> HH, phi- -> VH
    targets = {
        BellKind.PSI_PLUS: "HV",
        BellKind.PSI_MINUS: "VV",
        BellKind.PHI_PLUS: "HH",
        BellKind.PHI_MINUS: "VH",
    }
    d = disentangler(np.pi).matrix
    for kind, label in targets.items():
        out = d @ bell_state(kind)
        fid = abs(np.vdot(ket(label), out)) ** 2
        assert abs(fid - 1.0) < 1e-12, f"{kind} landed off target"
        # with this rotator convention the global phase comes out +1
        assert abs(out[np.argmax(np.abs(out))] - 1.0) < 1e-12


# --- gate application -----------------------------------------------------

def test_apply_gate_identity():
    s = random_state(3, 0)
    ident = Gate(np.eye(2, dtype=complex), "id")
    assert np.allclose(apply_gate(ident, s, (2,)), s, atol=1e-15)


def test_apply_gate_conditional_phase_on_first_two_modes():
    s = ket("VVH")
    out = apply_gate(qpg(np.pi), s, (1, 2))
    assert np.allclose(out, -s, atol=1e-15)


def test_apply_gate_flip_on_mode_three():
    flip = Gate(np.array([[0, 1], [1, 0]], dtype=complex), "x")
    assert np.allclose(apply_gate(flip, ket("HHH"), (3,)), ket("HHV"), atol=1e-16)


def test_apply_gate_mode_order_matters():
    # a two-mode gate applied to (2, 1) must transpose its action
    s = ket("HV")
    cnot = Gate(
        np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
        "cnot",
    )
    assert np.allclose(apply_gate(cnot, s, (2, 1)), ket("VV"), atol=1e-16)
    assert np.allclose(apply_gate(cnot, s, (1, 2)), ket("HV"), atol=1e-16)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_apply_gate_preserves_norm(seed, mode):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    s = random_state(3, seed)
    out = apply_gate(Gate(q, "haar"), s, (mode,))
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12


def test_apply_gate_bad_modes():
    s = random_state(2, 1)
    g = Gate(np.eye(4, dtype=complex), "id2")
    with pytest.raises(ValueError):
        apply_gate(g, s, (1, 1))
    with pytest.raises(ValueError):
        apply_gate(g, s, (1, 3))
    with pytest.raises(ValueError):
        apply_gate(g, s, (1,))
