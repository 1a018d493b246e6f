"""Ring geometry, the long-range gauge profile and the effective potential.

Everything here is dimensionless: lengths in units of the ring radius and
two-body time in units of 2 m R^2 / hbar.  The gauge profile is

    delta(x) = Q cos^{2q}(x / 2),    Q = 4^q (q!)^2 / (2 pi (2q)!)

and the relative-coordinate potential in momentum sector p is
V(x) = (p/2 + kappa delta(x))^2.  Both are trigonometric polynomials, so
they are stored by their exact Fourier coefficients.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .fourier import local_extrema, parabolic_offset, refine_extremum, uniform_grid

# Beyond this exponent the coefficient tables get longer than any basis we
# would diagonalise; gammaln itself stays finite far past it.
MAX_Q = 1 << 16


@dataclass(frozen=True)
class ModelUnits:
    """Labels for the nondimensionalisation; carries no numbers."""

    length_unit: str = "R (ring radius)"
    time_unit_two_body: str = "2 m R^2 / hbar"
    time_unit_single: str = "m R^2 / hbar"


def _check_exponent(q):
    if isinstance(q, bool) or int(q) != q:
        raise ValueError(f"exponent must be an integer, got {q!r}")
    q = int(q)
    if q < 1:
        raise ValueError(f"exponent must be >= 1, got {q}")
    if q > MAX_Q:
        raise ValueError(f"exponent {q} exceeds the supported limit {MAX_Q}")
    return q


def log_normalization(q):
    """log Q for the cos^{2q}(x/2) profile, evaluated in log-space."""
    q = _check_exponent(q)
    return q * np.log(4.0) + 2.0 * gammaln(q + 1) - np.log(2.0 * np.pi) - gammaln(2 * q + 1)


def normalization(q):
    return float(np.exp(log_normalization(q)))


@lru_cache(maxsize=256)
def _coefficients(q):
    m = np.arange(-q, q + 1)
    log_binom = gammaln(2 * q + 1) - gammaln(q + m + 1) - gammaln(q - m + 1)
    c = np.exp(log_normalization(q) + log_binom - q * np.log(4.0))
    c[:q] = c[:q:-1]  # exact mirror symmetry c_{-m} == c_m
    c.setflags(write=False)
    return c


def gauge_fourier_coefficients(q):
    """Fourier coefficients c_m, m = -q..q, of Q cos^{2q}(x/2).

    Uses cos^{2q}(x/2) = 4^{-q} sum_j C(2q, j) exp(i (q - j) x), so
    c_m = Q C(2q, q + m) / 4^q.  The array is indexed by m + q.
    Extreme coefficients underflow to zero for q beyond ~500, which is
    harmless at double precision.
    """
    return _coefficients(_check_exponent(q)).copy()


def periodic_bump(x, q):
    """Evaluate Q cos^{2q}(x/2), normalised to unit integral over the ring."""
    x = np.asarray(x, dtype=float)
    c = np.abs(np.cos(0.5 * x))
    with np.errstate(divide="ignore"):
        logc = np.log(c)
    return np.exp(log_normalization(q) + 2 * q * logc)


@dataclass(frozen=True)
class GaugeShape:
    """Gauge profile delta(x) with range exponent q and coupling kappa."""

    q: int
    kappa: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "q", _check_exponent(self.q))
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def normalization(self):
        return normalization(self.q)

    def __call__(self, x):
        return periodic_bump(x, self.q)

    def fourier_coefficients(self):
        return gauge_fourier_coefficients(self.q)


@dataclass(frozen=True)
class MomentumSector:
    """Centre-of-mass momentum p.

    Single-valuedness on the torus forces phi(x + 2 pi) = (-1)^p phi(x),
    so odd p sectors carry antiperiodic relative wavefunctions.
    """

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or int(self.p) != self.p:
            raise ValueError(f"centre-of-mass momentum must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    @property
    def periodic(self):
        return self.p % 2 == 0

    @property
    def parity(self):
        return "periodic" if self.periodic else "antiperiodic"


@dataclass(frozen=True, eq=False)
class EffectivePotential:
    """V(x) = (p/2 + kappa delta(x))^2 with its exact Fourier coefficients.

    ``coefficients[m + 2q]`` multiplies exp(i m x) for |m| <= 2q.
    """

    shape: GaugeShape
    sector: MomentumSector
    coefficients: np.ndarray = field(repr=False)

    @property
    def degree(self):
        return 2 * self.shape.q

    @property
    def modes(self):
        return np.arange(-self.degree, self.degree + 1)

    def coefficient(self, m):
        m = int(m)
        if abs(m) > self.degree:
            return 0.0
        return float(self.coefficients[m + self.degree])

    def __call__(self, x):
        """Pointwise evaluation from the closed form."""
        return (0.5 * self.sector.p + self.shape.kappa * self.shape(x)) ** 2

    def series(self, x):
        """Evaluation from the Fourier coefficients."""
        phase = np.exp(1j * np.multiply.outer(np.asarray(x, dtype=float), self.modes))
        return (phase @ self.coefficients).real


def effective_potential(shape, sector):
    q, kappa, p = shape.q, shape.kappa, sector.p
    c = shape.fourier_coefficients()
    square = np.convolve(c, c)
    # keep v_m == v_{-m} bit-for-bit: take the m >= 0 half and mirror it
    half = kappa ** 2 * square[2 * q:]
    half[: q + 1] += p * kappa * c[q:]
    half[0] += 0.25 * p * p
    coeffs = np.concatenate([half[:0:-1], half])
    coeffs.setflags(write=False)
    return EffectivePotential(shape, sector, coeffs)


@dataclass
class WellReport:
    """Local minima of V on the ring.

    ``locations`` lie in (-pi, pi]; minima come in +/- pairs unless they sit
    at 0 or pi, and ``distinct`` counts them modulo that reflection.
    """

    flat: bool
    locations: np.ndarray
    values: np.ndarray
    barrier_heights: np.ndarray
    max_gradient: float = 0.0

    @property
    def count(self):
        return len(self.locations)

    @property
    def distinct(self):
        return int(np.sum(self.locations >= -1e-12))

    @property
    def shape(self):
        if self.flat:
            return "flat"
        return {1: "single", 2: "double"}.get(self.count, f"{self.count}-well")


def classify_wells(pot, grid_size=256, flat_tol=1e-9, grad_tol=1e-9):
    """Locate the wells of an effective potential.

    Minima are bracketed on a uniform grid, moved to the vertex of the
    local parabola, then polished with Newton steps on the exact Fourier
    series until |V'| < grad_tol.  A potential whose derivative is below
    ``flat_tol`` everywhere on the grid is reported flat.
    """
    if grid_size < 64:
        raise ValueError("grid_size must be >= 64")
    x = uniform_grid(grid_size)
    h = x[1] - x[0]
    f = pot(x)
    modes, coeffs = pot.modes, pot.coefficients
    d1 = (np.exp(1j * np.outer(x, modes)) @ (1j * modes * coeffs)).real
    if np.max(np.abs(d1)) < flat_tol:
        empty = np.array([])
        return WellReport(True, empty, empty, empty, float(np.max(np.abs(d1))))

    mins, grads = [], []
    for i in local_extrema(f, "min"):
        offset = parabolic_offset(f[i - 1], f[i], f[(i + 1) % grid_size])
        xr, g = refine_extremum(coeffs, modes, x[i] + offset * h, tol=1e-14)
        mins.append(xr)
        grads.append(g)
    mins = np.array(mins)
    if np.max(grads) > grad_tol:
        raise ArithmeticError(f"well refinement stalled at |V'| = {max(grads):.3e}")
    # report x = pi rather than -pi
    mins = np.where(np.isclose(mins, -np.pi, atol=1e-12), np.pi, mins)
    order = np.argsort(mins)
    mins = mins[order]
    values = pot(mins)

    maxima = x[local_extrema(f, "max")]
    barriers = []
    for xm, vm in zip(mins, values):
        if len(maxima) == 0:
            barriers.append(0.0)
            continue
        # nearest maximum on either side along the circle
        dist = (maxima - xm) % (2 * np.pi)
        right = maxima[np.argmin(dist)]
        left = maxima[np.argmax(dist)]
        barriers.append(float(min(pot(right), pot(left)) - vm))
    return WellReport(False, mins, values, np.array(barriers), float(max(grads)))
