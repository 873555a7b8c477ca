"""Dense complex linear algebra for small operators (dim <= 8).

Thin contract-checked wrappers around numpy: every entry point rejects
non-finite input, and the factorizations pin down conventions the rest of
the package relies on (descending eigenvalues, deterministic polar
completion for singular matrices).
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10


class NegativeOperatorError(ValueError):
    """Raised when a matrix required to be positive semidefinite is not."""


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    return m


def matmul(a, b) -> np.ndarray:
    """Matrix product a @ b with explicit shape checking."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; mode 1 is the leftmost (slowest) slot."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("operand contains NaN or Inf")
    return np.kron(a, b)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return _as_matrix(a).conj().T


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = _as_matrix(a)
    return a.shape[0] == a.shape[1] and np.max(np.abs(a - a.conj().T)) <= tol


def hermitian_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with real eigenvalues sorted in
    descending order and eigenvectors as the matching columns of a unitary.
    """
    a = _as_matrix(a)
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(a)  # ascending
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def hermitian_sqrt(a) -> np.ndarray:
    """Principal square root of a Hermitian positive-semidefinite matrix.

    Eigenvalues in [-NEGATIVE_EIG_TOL, 0) are clamped to zero; anything more
    negative raises NegativeOperatorError.
    """
    vals, vecs = hermitian_eig(a)
    if vals[-1] < -NEGATIVE_EIG_TOL:
        raise NegativeOperatorError(f"eigenvalue {vals[-1]:.3e} below -{NEGATIVE_EIG_TOL:.0e}")
    vals = np.clip(vals, 0.0, None)
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)  # kill roundoff asymmetry


def polar_decompose(g) -> tuple[np.ndarray, np.ndarray]:
    """Polar factorization g = t @ r with t unitary and r Hermitian PSD.

    Both factors come from the same SVD g = U S W^dag: t = U W^dag, which
    stays well defined (and unitary) when g is singular, and r = W S W^dag,
    the square root of g^dag g assembled without re-diagonalizing (an eigh
    of g^dag g would turn O(eps) noise in zero eigenvalues into O(sqrt(eps))
    noise in r, wrecking reconstruction for rank-deficient input).
    The completion is made deterministic by phase-fixing each singular-vector
    pair so its largest-magnitude left component is real positive (ties break
    to the lowest row index); for vanishing singular values the right vector
    is phase-fixed independently the same way.
    """
    g = _as_matrix(g)
    if g.shape[0] != g.shape[1]:
        raise ValueError(f"polar decomposition needs a square matrix, got {g.shape}")
    u, s, wh = np.linalg.svd(g)
    cutoff = 1e-12 * (s[0] if s.size and s[0] > 0 else 1.0)
    for k in range(s.size):
        j = int(np.argmax(np.abs(u[:, k])))
        ph = u[j, k] / abs(u[j, k])
        u[:, k] /= ph
        wh[k, :] *= ph  # same phase on the pair keeps U S W^dag = g
        if s[k] <= cutoff:
            j = int(np.argmax(np.abs(wh[k, :])))
            phw = wh[k, j].conjugate() / abs(wh[k, j])
            wh[k, :] *= phw
    t = u @ wh
    # the phase fixes rotate u columns and wh rows in matched pairs, so
    # W S W^dag is unchanged by them (sigma = 0 rows drop out entirely)
    r = (wh.conj().T * s) @ wh
    r = 0.5 * (r + r.conj().T)
    return t, r
