"""Position measurement of particle 1 and the conditional state of particle 2.

An imperfect measurement centred on theta0 with sharpness n leaves

    psi(theta2) = int G_n(theta1 - theta0) Psi(theta1, theta2) dtheta1,
    G_n(theta) = N_n cos^{2n}(theta / 2),

which is evaluated exactly in Fourier space: G_n has harmonics |j| <= n
only.  The perfect measurement is the n -> infinity limit, i.e. the slice
Psi(theta0, theta2).  Outcomes are renormalised; the norm before
renormalisation is kept in ``meta["detection_norm"]``.  After the
measurement particle 1 is gone and particle 2 evolves freely.
"""
from dataclasses import dataclass

import numpy as np

from .domain import gauge_fourier_coefficients, periodic_bump
from .wavefunction import RingWavefunction

COLLAPSE_TOL = 1e-12


class MeasurementError(ArithmeticError):
    """The conditional state has (numerically) zero norm."""


@dataclass(frozen=True)
class MeasurementKernel:
    n: int
    center: float = 0.0

    def __call__(self, theta):
        return periodic_bump(np.asarray(theta) - self.center, self.n)

    def harmonic(self, j):
        """Fourier coefficient g_j of G_n (zero beyond |j| > n)."""
        c = gauge_fourier_coefficients(self.n)
        j = np.asarray(j)
        out = np.zeros(j.shape)
        inside = np.abs(j) <= self.n
        out[inside] = c[j[inside] + self.n]
        return out


def _check_band(j2, coeffs, n):
    significant = np.abs(coeffs) > 1e-13 * np.max(np.abs(coeffs))
    if np.any(np.abs(j2[significant]) >= n // 2):
        raise ValueError(f"grid of {n} points cannot resolve harmonics up to {np.max(np.abs(j2[significant]))}")


def conditional_coefficients(state, theta0, kernel=None):
    """Unnormalised Fourier coefficients of the particle-2 state; (modes, coeffs)."""
    j1, j2, A = state.fourier_modes()
    weight = np.ones(j1.shape) if kernel is None else 2 * np.pi * kernel.harmonic(j1)
    return j2, A * weight * np.exp(1j * j1 * theta0)


def _finish(state, modes, coeffs, n, meta):
    _check_band(modes, coeffs, n)
    norm = 2 * np.pi * float(np.sum(np.abs(coeffs) ** 2))
    if norm < COLLAPSE_TOL:
        raise MeasurementError(f"conditional state norm {norm:.3e} is below {COLLAPSE_TOL:g}")
    meta = dict(meta, detection_norm=norm, p=state.p, q=state.relative.shape.q,
                kappa=state.relative.shape.kappa)
    return RingWavefunction.from_fourier(modes, coeffs / np.sqrt(norm), n, meta)


def measure_perfect(state, theta0, n=256):
    modes, coeffs = conditional_coefficients(state, theta0)
    return _finish(state, modes, coeffs, n, {"theta0": float(theta0), "kernel_n": None})


def measure_imperfect(state, kernel, n=256):
    modes, coeffs = conditional_coefficients(state, kernel.center, kernel)
    return _finish(state, modes, coeffs, n, {"theta0": float(kernel.center), "kernel_n": kernel.n})
