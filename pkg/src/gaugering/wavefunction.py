"""Single-particle wavefunctions sampled on a uniform ring grid."""
from dataclasses import dataclass, field

import numpy as np

from .fourier import is_power_of_two, uniform_grid


@dataclass(eq=False)
class RingWavefunction:
    """Complex samples psi(theta_j) at theta_j = -pi + 2 pi j / N, N a power of two.

    ``meta`` carries provenance such as the pre-normalisation norm of a
    measurement outcome.
    """

    amplitudes: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.ndim != 1 or not is_power_of_two(self.amplitudes.size):
            raise ValueError(f"grid size must be a power of two, got {self.amplitudes.shape}")

    @property
    def n(self):
        return self.amplitudes.size

    @property
    def dtheta(self):
        return 2 * np.pi / self.n

    @property
    def theta(self):
        return uniform_grid(self.n)

    @property
    def density(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(np.sum(self.density) * self.dtheta)

    def normalized(self):
        return RingWavefunction(self.amplitudes / np.sqrt(self.norm()), dict(self.meta))

    def fourier(self):
        """Integer modes k and coefficients c_k with psi(theta) = sum_k c_k exp(i k theta)."""
        k = np.rint(np.fft.fftfreq(self.n, 1.0 / self.n)).astype(int)
        c = np.fft.fft(self.amplitudes) * np.where(k % 2, -1.0, 1.0) / self.n
        return k, c

    @classmethod
    def from_fourier(cls, modes, coeffs, n, meta=None):
        modes = np.asarray(modes)
        theta = uniform_grid(n)
        psi = np.exp(1j * np.outer(theta, modes)) @ np.asarray(coeffs, dtype=complex)
        return cls(psi, dict(meta or {}))
