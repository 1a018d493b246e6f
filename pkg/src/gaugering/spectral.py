"""Plane-wave Galerkin solver for the relative-coordinate eigenproblem.

In momentum sector p the relative wavefunction obeys

    [-d^2/dx^2 + (p/2 + kappa delta(x))^2] phi = (eps / 2) phi,

so the two-body energy eps is twice the operator eigenvalue.  The potential
is a trigonometric polynomial of degree 2q, which makes the Galerkin matrix
H_{kk'} = k^2 delta_{kk'} + v_{k-k'} exact and banded; the only
approximation is the plane-wave cutoff.
"""
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy import linalg

from .domain import GaugeShape, MomentumSector, effective_potential
from .fourier import trig_eval
from .parallel import pmap

DEFAULT_P_RANGE = (-6, 6)
DEGENERACY_TOL = 1e-9


class EigensolverError(RuntimeError):
    """Diagonalisation failed or produced eigenpairs outside tolerance."""


class SectorMismatch(ValueError):
    pass


def default_basis_size(q):
    return max(129, 8 * q + 1)


@dataclass(frozen=True)
class PlaneWaveBasis:
    """Wavenumbers -K..K for periodic sectors, -K-1/2..K+1/2 for antiperiodic ones."""

    sector: MomentumSector
    cutoff: int

    @classmethod
    def from_size(cls, sector, n_basis):
        n_basis = int(n_basis)
        if n_basis < 1:
            raise ValueError("basis size must be positive")
        return cls(sector, (n_basis - 1) // 2)

    @property
    def wavenumbers(self):
        K = self.cutoff
        if self.sector.periodic:
            return np.arange(-K, K + 1, dtype=float)
        return np.arange(-K - 1, K + 1, dtype=float) + 0.5

    @property
    def size(self):
        return 2 * self.cutoff + (1 if self.sector.periodic else 2)


def _offsets(basis):
    k = basis.wavenumbers
    return np.rint(k[:, None] - k[None, :]).astype(int)


def _check_basis(pot, basis):
    if pot.sector != basis.sector:
        raise SectorMismatch(f"potential is for p={pot.sector.p}, basis for p={basis.sector.p}")
    if basis.size < 4 * pot.shape.q + 1:
        raise ValueError(f"basis size {basis.size} cannot hold the potential bandwidth (need >= {4 * pot.shape.q + 1})")


def assemble_hamiltonian(pot, basis):
    """Dense real-symmetric Galerkin matrix of -d^2/dx^2 + V in ``basis``."""
    _check_basis(pot, basis)
    d = _offsets(basis)
    deg = pot.degree
    inside = np.abs(d) <= deg
    H = np.where(inside, pot.coefficients[np.clip(d + deg, 0, 2 * deg)], 0.0)
    H[np.diag_indices_from(H)] += basis.wavenumbers ** 2
    return H


def banded_hamiltonian(pot, basis):
    """Lower banded storage (``scipy.linalg.eig_banded`` layout) of the same matrix."""
    _check_basis(pot, basis)
    deg = pot.degree
    n = basis.size
    bands = min(deg, n - 1)
    ab = np.zeros((bands + 1, n))
    ab[0] = basis.wavenumbers ** 2 + pot.coefficient(0)
    for j in range(1, bands + 1):
        ab[j, : n - j] = pot.coefficient(j)
    return ab


@dataclass
class Eigenpairs:
    values: np.ndarray
    vectors: np.ndarray
    max_residual: float
    orthonormality_error: float


def eigensolve(H, count=1):
    """Lowest ``count`` eigenpairs of a real-symmetric matrix, ascending.

    Each pair is checked against ||H v - lambda v|| <= 1e-10 ||H|| and the
    vectors against orthonormality; a violation raises rather than
    returning a partial result.
    """
    H = np.asarray(H, dtype=float)
    n = H.shape[0]
    if H.ndim != 2 or H.shape[1] != n:
        raise ValueError("matrix must be square")
    if not 1 <= count <= n:
        raise ValueError(f"count must lie in 1..{n}")
    if not np.all(np.isfinite(H)):
        raise EigensolverError("matrix has non-finite entries")
    try:
        values, vectors = linalg.eigh(H, subset_by_index=[0, count - 1])
    except linalg.LinAlgError as exc:
        raise EigensolverError(f"LAPACK did not converge for a {n}x{n} matrix: {exc}") from exc
    scale = max(linalg.norm(H, 2), 1.0)
    resid = linalg.norm(H @ vectors - vectors * values, axis=0)
    ortho = np.max(np.abs(vectors.T @ vectors - np.eye(count)))
    if np.max(resid) > 1e-10 * scale or ortho > 1e-10:
        raise EigensolverError(
            f"eigenpairs out of tolerance: max residual {np.max(resid):.3e} "
            f"(allowed {1e-10 * scale:.3e}), orthonormality error {ortho:.3e}"
        )
    return Eigenpairs(values, vectors, float(np.max(resid)), float(ortho))


def lowest_eigenvalue(pot, basis):
    """Ground eigenvalue via the banded solver; used in the sweeps."""
    ab = banded_hamiltonian(pot, basis)
    try:
        w = linalg.eigvals_banded(ab, lower=True, select="i", select_range=(0, 0))
    except linalg.LinAlgError as exc:
        raise EigensolverError(f"banded solver failed: {exc}") from exc
    return float(w[0])


@dataclass(eq=False)
class RelativeEigenstate:
    """Eigenpair (eps, phi) of the relative problem.

    phi(x) = sum_k a_k exp(i k x) / sqrt(2 pi), so the amplitudes have unit
    l2 norm exactly when phi has unit norm on [-pi, pi).
    """

    energy: float
    amplitudes: np.ndarray = field(repr=False)
    basis: PlaneWaveBasis
    shape: GaugeShape

    @property
    def sector(self):
        return self.basis.sector

    @property
    def p(self):
        return self.basis.sector.p

    @property
    def wavenumbers(self):
        return self.basis.wavenumbers

    @property
    def eigenvalue(self):
        return 0.5 * self.energy

    def __call__(self, x):
        return trig_eval(self.amplitudes, self.wavenumbers, x) / np.sqrt(2 * np.pi)

    def density_series(self):
        """Integer harmonics j and coefficients F_j with |phi(x)|^2 = sum_j F_j exp(i j x)."""
        a = np.asarray(self.amplitudes, dtype=complex)
        F = np.convolve(a, np.conj(a[::-1])) / (2 * np.pi)
        n = len(a)
        return np.arange(-(n - 1), n), F

    def density(self, x):
        modes, F = self.density_series()
        return trig_eval(F, modes, x).real

    def parity(self, tol=1e-8):
        """+1 if even under x -> -x, -1 if odd, 0 if neither within tol."""
        a = self.amplitudes
        if np.max(np.abs(a - a[::-1])) < tol:
            return 1
        if np.max(np.abs(a + a[::-1])) < tol:
            return -1
        return 0


def _fix_phase(v):
    # deterministic sign: largest-magnitude component positive
    i = np.argmax(np.abs(v))
    return v * np.sign(v[i]) if v[i] != 0 else v


def solve_sector(shape, sector, n_basis=None, count=1):
    """Lowest ``count`` relative eigenstates for (shape, sector)."""
    if not isinstance(sector, MomentumSector):
        sector = MomentumSector(sector)
    n_basis = default_basis_size(shape.q) if n_basis is None else n_basis
    basis = PlaneWaveBasis.from_size(sector, n_basis)
    pot = effective_potential(shape, sector)
    pairs = eigensolve(assemble_hamiltonian(pot, basis), count)
    return [
        RelativeEigenstate(2.0 * lam, _fix_phase(pairs.vectors[:, i]), basis, shape)
        for i, lam in enumerate(pairs.values)
    ]


def ground_energy(shape, p, n_basis=None):
    n_basis = default_basis_size(shape.q) if n_basis is None else n_basis
    sector = MomentumSector(p)
    basis = PlaneWaveBasis.from_size(sector, n_basis)
    return 2.0 * lowest_eigenvalue(effective_potential(shape, sector), basis)


def canonical_momentum(ps):
    """Smallest |p|, ties broken toward negative p."""
    return min(ps, key=lambda p: (abs(p), p))


def _energies_at_kappa(kappa, q, p_values, n_basis):
    shape = GaugeShape(q, kappa)
    return [ground_energy(shape, p, n_basis) for p in p_values]


@dataclass
class GroundStateScan:
    """Lowest eps per (p, kappa) cell; ``energies[i, j]`` is for p_values[i], kappa[j]."""

    q: int
    kappa: np.ndarray
    p_values: np.ndarray
    energies: np.ndarray
    n_basis: int
    widened: bool = False
    inconclusive: bool = False
    tol: float = DEGENERACY_TOL

    def minimizing_set(self, j):
        col = self.energies[:, j]
        emin = col.min()
        hit = col <= emin + self.tol * max(1.0, abs(emin))
        return tuple(int(p) for p in self.p_values[hit])

    @property
    def minimizing_sets(self):
        return [self.minimizing_set(j) for j in range(len(self.kappa))]

    @property
    def ground_p(self):
        return np.array([canonical_momentum(s) for s in self.minimizing_sets])

    @property
    def ground_energy(self):
        return self.energies.min(axis=0)

    def energy_curve(self, p):
        return self.energies[list(self.p_values).index(p)]

    def boundary_hits(self):
        lo, hi = self.p_values.min(), self.p_values.max()
        return [j for j, s in enumerate(self.minimizing_sets) if lo in s or hi in s]


PARITIES = ("all", "even", "odd")


def sector_momenta(lo, hi, parity="all"):
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")
    p = np.arange(lo, hi + 1)
    if parity == "even":
        p = p[p % 2 == 0]
    elif parity == "odd":
        p = p[p % 2 == 1]
    return p


def ground_state_scan(q, kappa_grid, p_range=DEFAULT_P_RANGE, n_basis=None, workers=None,
                      widen=True, max_abs_p=64, parity="all"):
    """Scan the lowest energy of every momentum sector over a kappa grid.

    ``parity`` restricts the scan to even or odd p; the default keeps both.
    If a minimiser lands on the edge of ``p_range`` the range is widened by
    four on each side and the scan repeated, up to |p| <= max_abs_p; a scan
    that still minimises on the edge is marked inconclusive.
    """
    kappa = np.atleast_1d(np.asarray(kappa_grid, dtype=float))
    if kappa.size == 0:
        raise ValueError("empty kappa grid")
    lo, hi = int(p_range[0]), int(p_range[1])
    if lo > hi:
        raise ValueError(f"empty momentum range {p_range}")
    n_basis = default_basis_size(q) if n_basis is None else int(n_basis)
    widened = False
    while True:
        p_values = sector_momenta(lo, hi, parity)
        if p_values.size == 0:
            raise ValueError(f"no {parity} momenta in [{lo}, {hi}]")
        cells = pmap(partial(_energies_at_kappa, q=q, p_values=tuple(int(p) for p in p_values), n_basis=n_basis),
                     kappa, workers)
        scan = GroundStateScan(q, kappa, p_values, np.array(cells).T, n_basis, widened)
        if not scan.boundary_hits() or len(p_values) == 1:
            return scan
        if not widen or max(abs(lo), abs(hi)) >= max_abs_p:
            scan.inconclusive = True
            return scan
        lo, hi = max(lo - 4, -max_abs_p), min(hi + 4, max_abs_p)
        widened = True


@dataclass(frozen=True)
class DiracLimitLevel:
    """Short-range limit level eps = (ell^2 + p^2)/2 with its cusp eigenfunctions."""

    ell: int
    p: int

    @property
    def energy(self):
        return 0.5 * (self.ell ** 2 + self.p ** 2)

    def even(self, x):
        return np.sin(0.5 * self.ell * np.abs(x))

    def odd(self, x):
        return np.sin(0.5 * self.ell * np.asarray(x))


def dirac_limit_reference(ell, p):
    if int(ell) != ell or ell == 0:
        raise ValueError("ell must be a nonzero integer")
    return DiracLimitLevel(int(ell), int(p))
