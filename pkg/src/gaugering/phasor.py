"""Binned phasor position operators and their Robertson-Schroedinger statistics.

Q_i = sum_n exp(i theta_n) D_i(R_n), where D_i(R_n) projects particle i onto
the angular bin R_n.  For a complete partition Q_i is unitary, so the
variance is taken as <Q^dag Q> - |<Q>|^2 = 1 - |<Q>|^2.  Every expectation
follows from the joint bin probabilities P[n, m] of (particle 1 in R_n,
particle 2 in R_m).

Two covariances are reported.  The plain one, <Q1 Q2> - <Q1><Q2>, vanishes
identically for translation-invariant states because sum_n exp(2 i theta_n)
is zero.  The conjugated one, <Q1 Q2^dag> - <Q1><Q2>^*, is the first
circular harmonic of the binned relative density and carries the
correlation signal.
"""
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from .domain import GaugeShape
from .parallel import pmap
from .spectral import DEFAULT_P_RANGE, default_basis_size, ground_state_scan, solve_sector
from .twobody import TwoBodyState

GL_NODES = 8
MIN_PANELS = 64


@dataclass(frozen=True)
class RingPartition:
    """N equal bins [-pi + offset + 2 pi n / N, ... + 2 pi (n + 1) / N)."""

    n_bins: int = 64
    offset: float = 0.0

    def __post_init__(self):
        if int(self.n_bins) != self.n_bins or self.n_bins < 1:
            raise ValueError("n_bins must be a positive integer")

    @property
    def width(self):
        return 2 * np.pi / self.n_bins

    @property
    def edges(self):
        return -np.pi + self.offset + self.width * np.arange(self.n_bins + 1)

    @property
    def midpoints(self):
        return -np.pi + self.offset + self.width * (np.arange(self.n_bins) + 0.5)

    @property
    def phases(self):
        return np.exp(1j * self.midpoints)

    def indicator(self, theta):
        """Bin index of each angle (angles taken mod 2 pi)."""
        u = (np.asarray(theta) + np.pi - self.offset) % (2 * np.pi)
        return np.minimum((u // self.width).astype(int), self.n_bins - 1)


def _bin_harmonics(partition, modes, nodes=GL_NODES):
    """w[j, n] ~ integral over bin n of exp(i j theta), by composite Gauss-Legendre.

    Bins wider than 2 pi / 64 are split into equal panels so the rule stays
    accurate on coarse partitions.
    """
    t, w = np.polynomial.legendre.leggauss(nodes)
    panels = -(-MIN_PANELS // partition.n_bins)
    half = 0.5 * partition.width / panels
    centers = (partition.edges[:-1, None] + half * (2 * np.arange(panels) + 1)).T  # panels x bins
    pts = (centers[None] + half * t[:, None, None]).reshape(-1, partition.n_bins)
    wts = np.repeat(half * w, panels)
    return np.einsum("a,jab->jb", wts, np.exp(1j * modes[:, None, None] * pts[None]))


def bin_probabilities(state, partition, nodes=GL_NODES, check=True):
    """Joint bin probabilities P[n, m] for a two-body eigenstate.

    The integrand |phi(theta1 - theta2)|^2 / (2 pi) is a finite Fourier
    series, so the double bin integral factorises harmonic by harmonic;
    each single-bin integral uses ``nodes``-point Gauss-Legendre per panel.  The
    result is circulant in (n - m); with ``check`` that is verified.
    """
    modes, F = state.relative.density_series()
    w = _bin_harmonics(partition, modes, nodes)
    P = np.einsum("j,jn,jm->nm", F, w, np.conj(w)).real / (2 * np.pi)
    if check:
        row = P[0]
        circ = np.array([np.roll(row, i) for i in range(partition.n_bins)])
        err = np.max(np.abs(P - circ))
        if err > 1e-12:
            raise ArithmeticError(f"bin probabilities not circulant (deviation {err:.2e})")
    return P


@dataclass
class PhasorStatistics:
    mean1: complex
    mean2: complex
    second1: float  # <Q1^dag Q1>
    second2: float
    covariance_plain: complex
    covariance_conj: complex
    commutator: complex

    @property
    def var1(self):
        return self.second1 - abs(self.mean1) ** 2

    @property
    def var2(self):
        return self.second2 - abs(self.mean2) ** 2

    @property
    def dQ1(self):
        return float(np.sqrt(max(self.var1, 0.0)))

    @property
    def dQ2(self):
        return float(np.sqrt(max(self.var2, 0.0)))

    @property
    def rs_left(self):
        return self.var1 * self.var2

    @property
    def rs_right_plain(self):
        return abs(self.covariance_plain) ** 2 + abs(self.commutator / 2j) ** 2

    @property
    def rs_right_conj(self):
        return abs(self.covariance_conj) ** 2 + abs(self.commutator / 2j) ** 2


def phasor_statistics(P, partition):
    P = np.asarray(P, dtype=float)
    z = partition.phases
    m1 = np.sum(P.sum(axis=1) * z)
    m2 = np.sum(P.sum(axis=0) * z)
    q1q2 = z @ P @ z
    q2q1 = np.sum(P.T * np.outer(z, z))  # <Q2 Q1>: same numbers, other operator order
    q1q2c = z @ P @ np.conj(z)
    return PhasorStatistics(
        mean1=complex(m1),
        mean2=complex(m2),
        second1=float(P.sum()),
        second2=float(P.sum()),
        # anticommutator average equals <Q1 Q2> as the operators commute
        covariance_plain=complex(0.5 * (q1q2 + q2q1) - m1 * m2),
        covariance_conj=complex(q1q2c - m1 * np.conj(m2)),
        commutator=complex(q1q2 - q2q1),
    )


def refine_grid(kappa_grid, centers=(np.pi, 2 * np.pi), half_width=0.1, step=0.01):
    """Merge kappa_grid with fine grids centred on (and containing) each special point, clipped to its range."""
    kappa = np.asarray(kappa_grid, dtype=float)
    lo, hi = kappa.min(), kappa.max()
    extra = [c + step * np.arange(-round(half_width / step), round(half_width / step) + 1)
             for c in centers if lo - half_width <= c <= hi + half_width]
    merged = np.concatenate([kappa, *extra]) if extra else kappa
    merged = np.sort(merged[(merged >= lo - 1e-12) & (merged <= hi + 1e-12)])
    keep = np.concatenate([[True], np.diff(merged) > 1e-12])
    return merged[keep]


@dataclass
class UncertaintyRecord:
    kappa: float
    ground_p: int
    epsilon: float
    dQ1: float
    dQ2: float
    dQ1dQ2: float
    cov_plain_abs: float
    cov_conj_abs: float
    cov_conj: complex
    rs_left: float
    rs_right: float  # plain variant
    rs_right_conj: float
    refined: bool
    degenerate: tuple


COLUMNS = ("kappa", "ground_p", "epsilon", "dQ1", "dQ2", "dQ1dQ2", "cov_plain_abs", "cov_conj_abs",
           "rs_left", "rs_right")


def _record(args, q, partition, n_basis):
    kappa, p, refined, degenerate = args
    state = TwoBodyState(solve_sector(GaugeShape(q, kappa), p, n_basis)[0])
    s = phasor_statistics(bin_probabilities(state, partition), partition)
    return UncertaintyRecord(
        kappa=float(kappa), ground_p=int(p), epsilon=float(state.energy),
        dQ1=s.dQ1, dQ2=s.dQ2, dQ1dQ2=s.dQ1 * s.dQ2,
        cov_plain_abs=abs(s.covariance_plain), cov_conj_abs=abs(s.covariance_conj), cov_conj=s.covariance_conj,
        rs_left=s.rs_left, rs_right=s.rs_right_plain, rs_right_conj=s.rs_right_conj,
        refined=bool(refined), degenerate=degenerate,
    )


@dataclass
class UncertaintyScan:
    q: int
    records: list
    inconclusive: bool

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records])

    def rows(self):
        return [[asdict(r)[c] for c in COLUMNS] for r in self.records]


def uncertainty_scan(q, kappa_grid, partition=None, n_basis=None, p_range=DEFAULT_P_RANGE,
                     refine=True, workers=None, parity="all", max_abs_p=64):
    """Phasor statistics of the ground state along a kappa grid.

    The grid is refined with step 0.01 around kappa = pi and 2 pi.  Ground
    momenta come from ``ground_state_scan`` with canonical tie-breaking.
    """
    partition = RingPartition() if partition is None else partition
    n_basis = default_basis_size(q) if n_basis is None else n_basis
    base = np.asarray(kappa_grid, dtype=float)
    kappa = refine_grid(base) if refine else base
    scan = ground_state_scan(q, kappa, p_range, n_basis, workers, max_abs_p=max_abs_p, parity=parity)
    coarse = set(np.round(base, 12))
    cells = [(k, p, np.round(k, 12) not in coarse, s)
             for k, p, s in zip(kappa, scan.ground_p, scan.minimizing_sets)]
    records = pmap(partial(_record, q=q, partition=partition, n_basis=n_basis), cells, workers)
    return UncertaintyScan(q, records, scan.inconclusive)
