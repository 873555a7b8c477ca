"""Average teleportation fidelity over the input Bloch sphere.

Three deliberately independent routes must agree:
  analytic_favg    closed form 2/3 + sin(phi/2)/3 on [0, 2pi)
  quadrature_favg  deterministic sphere average of sum_i |<in|R_i|in>|^2,
                   using the Hermitian distortion factors only
  monte_carlo_favg sampled average of <in|rho_out|in> through the full
                   repaired-density route
The classical benchmark without entanglement is 2/3; the protocol beats it
for every phi strictly inside (0, 2pi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import as_rng
from .core import TWO_PI, wrap_phase
from .teleport import branch_operators, distortion_factors, optimal_corrections

CLASSICAL_BOUND = 2.0 / 3.0
MIN_QUAD_ORDER = 8


@dataclass(frozen=True)
class BlochPoint:
    """Polar angle theta in [0, pi], azimuth in [0, 2pi)."""

    theta: float
    phi_azimuth: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi_azimuth < TWO_PI:
            raise ValueError(f"azimuth must lie in [0, 2pi), got {self.phi_azimuth}")

    def state(self) -> np.ndarray:
        return np.array(
            [np.cos(self.theta / 2), np.exp(1j * self.phi_azimuth) * np.sin(self.theta / 2)],
            dtype=complex,
        )


@dataclass(frozen=True)
class FidelityReport:
    """One phase point, all three routes."""

    phi: float
    analytic: float
    quadrature: float
    mc_mean: float
    mc_stderr: float
    samples: int


def analytic_favg(phi: float) -> float:
    """Closed-form average fidelity 2/3 + sin(phi/2)/3."""
    phi = wrap_phase(phi)
    return 2.0 / 3.0 + np.sin(phi / 2.0) / 3.0


def beats_classical(phi: float) -> bool:
    """True when the protocol outperforms the best classical strategy."""
    return analytic_favg(phi) > CLASSICAL_BOUND


def sample_bloch_states(
    n: int, rng: np.random.Generator | int | None = None
) -> np.ndarray:
    """n states drawn uniformly on the Bloch sphere, shape (n, 2).

    cos(theta) is uniform on [-1, 1] and the azimuth uniform on [0, 2pi);
    the cos(theta) batch is drawn first so the stream layout is reproducible.
    """
    r = as_rng(rng)
    u = r.uniform(-1.0, 1.0, n)
    az = r.uniform(0.0, TWO_PI, n)
    states = np.empty((n, 2), dtype=complex)
    states[:, 0] = np.sqrt((1.0 + u) / 2.0)
    states[:, 1] = np.exp(1j * az) * np.sqrt((1.0 - u) / 2.0)
    return states


def bloch_coordinates(states: np.ndarray) -> np.ndarray:
    """Cartesian Bloch vectors of a batch of single-qubit states, shape (n, 3)."""
    a, b = states[:, 0], states[:, 1]
    cross = a.conj() * b
    return np.stack([2 * cross.real, 2 * cross.imag, np.abs(a) ** 2 - np.abs(b) ** 2], axis=1)


def quadrature_favg(phi: float, order: int = 32) -> float:
    """Deterministic sphere average via Gauss-Legendre (in cos theta) x
    periodic trapezoid (in azimuth), `order` nodes in each direction.

    The azimuth-averaged integrand is a quadratic polynomial in cos theta
    with harmonics only up to exp(2i azimuth), so any order >= 8 is already
    exact up to roundoff.
    """
    if order < MIN_QUAD_ORDER:
        raise ValueError(f"order must be >= {MIN_QUAD_ORDER}, got {order}")
    u, w = np.polynomial.legendre.leggauss(order)
    az = np.arange(order) * (TWO_PI / order)
    states = np.empty((order, order, 2), dtype=complex)
    states[:, :, 0] = np.sqrt((1.0 + u[:, None]) / 2.0)
    states[:, :, 1] = np.exp(1j * az)[None, :] * np.sqrt((1.0 - u[:, None]) / 2.0)
    total = np.zeros((order, order))
    for r in distortion_factors(phi):
        amp = np.einsum("jka,ab,jkb->jk", states.conj(), r, states)
        total += np.abs(amp) ** 2
    # (1/4pi) * sum_j w_j * sum_k (2pi/order) f_jk
    return float(np.sum(w[:, None] * total) / (2.0 * order))


def monte_carlo_favg(
    phi: float,
    samples: int,
    rng: np.random.Generator | int | None = None,
) -> tuple[float, float]:
    """Sampled sphere average of <in|rho_out|in>; returns (mean, stderr).

    Builds the repaired output density operator per sample (batched), the
    long way around on purpose: agreement with quadrature_favg then checks
    the repair unitaries, not just the distortion factors.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    states = sample_bloch_states(samples, rng)
    repaired_ops = np.einsum("iab,ibc->iac", optimal_corrections(phi), branch_operators(phi))
    branch = np.einsum("iab,nb->nia", repaired_ops, states)
    rho = np.einsum("nia,nib->nab", branch, branch.conj())
    f = np.einsum("na,nab,nb->n", states.conj(), rho, states).real
    return float(f.mean()), float(f.std(ddof=1) / np.sqrt(samples))


def fidelity_report(
    phi: float,
    samples: int = 10_000,
    rng: np.random.Generator | int | None = None,
    order: int = 32,
) -> FidelityReport:
    """Run all three routes at one phase point."""
    mean, stderr = monte_carlo_favg(phi, samples, rng)
    return FidelityReport(
        phi=wrap_phase(phi),
        analytic=analytic_favg(phi),
        quadrature=quadrature_favg(phi, order),
        mc_mean=mean,
        mc_stderr=stderr,
        samples=samples,
    )
