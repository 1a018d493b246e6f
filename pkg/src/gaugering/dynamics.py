"""Free evolution of one particle on the ring.

Convention: i d/dt psi = -(1/2) d^2/dtheta^2 psi, with single-particle time in
units of m R^2 / hbar.  (Two-body time runs in 2 m R^2 / hbar with a bare
-d^2 kinetic term; one two-body unit equals two single-particle units.)
Under this convention Fourier mode k picks up exp(-i k^2 t / 2) and every
state revives exactly after t = 4 pi.
"""
import warnings
from dataclasses import dataclass
from functools import partial

import numpy as np

from .fourier import refine_extremum, uniform_grid
from .parallel import pmap
from .wavefunction import RingWavefunction

REVIVAL_TIME = 4 * np.pi


def _kinetic_phase(n, t):
    k = np.fft.fftfreq(n, 1.0 / n)
    return np.exp(-0.5j * k ** 2 * t)


def propagate(psi, t):
    """Exact spectral propagation by time t; no time stepping involved."""
    out = np.fft.ifft(np.fft.fft(psi.amplitudes) * _kinetic_phase(psi.n, t))
    return RingWavefunction(out, dict(psi.meta, t=psi.meta.get("t", 0.0) + t))


@dataclass(frozen=True)
class QinSolution:
    """Rotating packet C0 cos(m theta - ell t) exp(i (ell theta - (m^2 + ell^2) t / 2)).

    It solves free ring evolution only for m = 1 (or ell = 0); larger m is
    evaluated as written but is not a solution.
    """

    m: int
    ell: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")
        if int(self.ell) != self.ell:
            raise ValueError("ell must be an integer")

    @property
    def amplitude(self):
        return 1.0 / np.sqrt(np.pi)

    @property
    def velocity(self):
        return self.ell / self.m

    @property
    def exact(self):
        return self.m == 1 or self.ell == 0

    def __call__(self, theta, t):
        theta = np.asarray(theta, dtype=float)
        m, ell = self.m, self.ell
        return (self.amplitude * np.cos(m * theta - ell * t)
                * np.exp(1j * (ell * theta - 0.5 * (m * m + ell * ell) * t)))


def qin_reference(m, ell, n=256, t=0.0):
    sol = QinSolution(m, ell)
    if not sol.exact:
        warnings.warn(f"Qin packet with m={m}, ell={ell} does not solve free ring evolution",
                      RuntimeWarning, stacklevel=2)
    psi = RingWavefunction(sol(uniform_grid(n), t), {"t": float(t), "qin": (m, ell)})
    return psi.normalized()


@dataclass
class Diagnostics:
    mean_angle: float  # nan when the resultant vanishes
    resultant: float
    circular_variance: float
    angular_momentum: float
    kinetic_energy: float
    norm: float


def dispersion_diagnostics(psi):
    rho = psi.density * psi.dtheta
    total = rho.sum()
    z = np.sum(rho * np.exp(1j * psi.theta)) / total
    r = abs(z)
    k, c = psi.fourier()
    w = np.abs(c) ** 2
    return Diagnostics(
        mean_angle=float(np.angle(z)) if r >= 1e-12 else float("nan"),
        resultant=float(r),
        circular_variance=float(1.0 - r),
        angular_momentum=float(np.sum(k * w) / np.sum(w)),
        kinetic_energy=float(0.5 * np.sum(k ** 2 * w) / np.sum(w)),
        norm=float(total),
    )


def density_peak(psi, guess=None):
    """Newton-refined location of the density maximum (nearest to ``guess`` if given)."""
    k, c = psi.fourier()
    order = np.argsort(k)
    k, c = k[order], c[order]
    # |psi|^2 = sum_j F_j exp(i j theta), j = k - k'
    F = np.convolve(c, np.conj(c[::-1]))
    modes = np.arange(k[0] - k[-1], k[-1] - k[0] + 1)
    dens = psi.density
    if guess is None:
        x0 = psi.theta[np.argmax(dens)]
    else:
        cand = [i for i in range(psi.n) if dens[i] >= dens[i - 1] and dens[i] >= dens[(i + 1) % psi.n]]
        dist = np.abs(np.angle(np.exp(1j * (psi.theta[cand] - guess))))
        x0 = psi.theta[cand[int(np.argmin(dist))]]
    x, _ = refine_extremum(F, modes, x0)
    return x


def _frame(t, psi0):
    psi = propagate(psi0, t)
    return psi.density, dispersion_diagnostics(psi)


@dataclass
class Evolution:
    times: np.ndarray
    densities: np.ndarray  # frames x N
    diagnostics: list

    @property
    def circular_variance(self):
        return np.array([d.circular_variance for d in self.diagnostics])


def evolve_and_record(psi0, t_max, frames, workers=None):
    """Density and diagnostics at ``frames`` equally spaced times in [0, t_max].

    Each frame is a single exact propagation from t = 0.
    """
    if frames < 2:
        raise ValueError("need at least two frames")
    times = np.linspace(0.0, float(t_max), int(frames))
    out = pmap(partial(_frame, psi0=psi0), times, workers)
    return Evolution(times, np.array([d for d, _ in out]), [g for _, g in out])
