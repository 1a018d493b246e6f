"""Two-body wavefunction Psi(theta1, theta2) built from a relative eigenstate.

    Psi(theta1, theta2) = exp(i p (theta1 + theta2) / 2) phi(theta1 - theta2) / sqrt(2 pi)

The sqrt(2 pi) makes the total norm one and both marginals exactly 1/(2 pi).
Particles are distinguishable; no exchange symmetrisation is applied.
"""
from dataclasses import dataclass

import numpy as np

from .fourier import refine_extremum, uniform_grid, wrap_angle

UNCORRELATED_RATIO = 1.05


@dataclass(eq=False)
class TwoBodyState:
    relative: object  # spectral.RelativeEigenstate

    @property
    def sector(self):
        return self.relative.sector

    @property
    def p(self):
        return self.relative.p

    @property
    def energy(self):
        return self.relative.energy

    def __call__(self, theta1, theta2):
        theta1, theta2 = np.broadcast_arrays(np.asarray(theta1, float), np.asarray(theta2, float))
        com = np.exp(0.5j * self.p * (theta1 + theta2))
        return com * self.relative(theta1 - theta2) / np.sqrt(2 * np.pi)

    def fourier_modes(self):
        """Psi as sum_k A_k exp(i j1 theta1) exp(i j2 theta2) with integer j1 = p/2 + k, j2 = p/2 - k.

        Returns (j1, j2, A) with A_k = a_k / (2 pi).
        """
        k = self.relative.wavenumbers
        j1 = np.rint(0.5 * self.p + k).astype(int)
        j2 = np.rint(0.5 * self.p - k).astype(int)
        return j1, j2, np.asarray(self.relative.amplitudes, dtype=complex) / (2 * np.pi)


def density_grid(state, n):
    """N x N matrix of |Psi|^2; row i is theta1 = x_i, column j is theta2 = x_j."""
    if n < 64:
        raise ValueError("density grid needs n >= 64")
    x = uniform_grid(n)
    psi = state(x[:, None], x[None, :])
    return np.abs(psi) ** 2


def marginals(density, n=None):
    """Marginal densities (particle 1, particle 2) from a density grid."""
    n = density.shape[0] if n is None else n
    h = 2 * np.pi / n
    return density.sum(axis=1) * h, density.sum(axis=0) * h


def relative_density_profile(state, n):
    """Sampled |phi(x)|^2 on the uniform grid; returns (x, density)."""
    if n < 64:
        raise ValueError("profile needs n >= 64")
    x = uniform_grid(n)
    return x, state.relative.density(x)


@dataclass
class CorrelationReport:
    label: str
    peak: float
    ratio: float


def relative_peak(relative, n=1024):
    """Location in [-pi, pi) of the global maximum of |phi|^2, Newton-refined."""
    x = uniform_grid(n)
    modes, F = relative.density_series()
    dens = relative.density(x)
    best, best_val = x[np.argmax(dens)], -np.inf
    # refine the top few grid candidates; near-degenerate peaks are common
    for i in np.argsort(dens)[-4:]:
        xr, _ = refine_extremum(F, modes, x[i])
        val = relative.density(xr)
        if val > best_val + 1e-15:
            best, best_val = xr, val
    return float(wrap_angle(best))


def classify_correlation(state, threshold=np.pi / 2, n=1024):
    """Label a state correlated (peak |x*| < threshold), anti-correlated, or uncorrelated."""
    x = uniform_grid(n)
    dens = state.relative.density(x)
    lo = dens.min()
    ratio = float(dens.max() / lo) if lo > 0 else np.inf
    peak = relative_peak(state.relative, n)
    if ratio < UNCORRELATED_RATIO:
        label = "uncorrelated"
    elif abs(peak) < threshold:
        label = "correlated"
    else:
        label = "anti-correlated"
    return CorrelationReport(label, peak, ratio)
