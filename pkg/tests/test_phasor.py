import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugering.domain import GaugeShape
from gaugering.phasor import (
    COLUMNS,
    RingPartition,
    bin_probabilities,
    phasor_statistics,
    refine_grid,
    uncertainty_scan,
)
from gaugering.spectral import solve_sector
from gaugering.twobody import TwoBodyState


def state(kappa, p, q=1):
    return TwoBodyState(solve_sector(GaugeShape(q, kappa), p)[0])


def brute_force_bins(s, n_bins, sub=48):
    """Midpoint-rule double integral of |Psi|^2 over every pair of bins."""
    n = n_bins * sub
    h = 2 * np.pi / n
    # |Psi|^2 depends on theta1 - theta2 only, and midpoint differences are multiples of h
    diff = h * np.arange(n)
    f = np.abs(s(diff, 0.0)) ** 2 * h * h
    idx = np.arange(n)
    rho = f[(idx[:, None] - idx[None, :]) % n]
    return rho.reshape(n_bins, sub, n_bins, sub).sum(axis=(1, 3))


def test_partition_geometry():
    part = RingPartition(8)
    assert part.edges[0] == -np.pi and part.edges[-1] == pytest.approx(np.pi)
    assert part.indicator([-np.pi, np.pi - 1e-9, 0.0, 3 * np.pi]).tolist() == [0, 7, 4, 0]
    with pytest.raises(ValueError):
        RingPartition(0)


@pytest.mark.parametrize("kappa,p", [(3.8, -2), (6.3, -1), (np.pi, 0)])
def test_bin_probabilities_against_brute_force(kappa, p):
    s = state(kappa, p)
    part = RingPartition(16)
    P = bin_probabilities(s, part)
    assert P.sum() == pytest.approx(1.0, abs=1e-13)
    # midpoint rule is spectrally accurate for periodic integrands over the torus,
    # but each bin is an open interval, so agreement is only algebraic
    assert np.max(np.abs(P - brute_force_bins(s, 16))) < 1e-6


def test_gauss_legendre_converged():
    s = state(6.3, -2, q=4)
    part = RingPartition(64)
    a = bin_probabilities(s, part, nodes=8)
    b = bin_probabilities(s, part, nodes=16)
    assert np.max(np.abs(a - b)) < 1e-14


@pytest.mark.parametrize("kappa,p", [(0.5, 0), (3.8, -2), (6.3, -1), (2 * np.pi, -2)])
def test_statistics_identities(kappa, p):
    part = RingPartition(64)
    st_ = phasor_statistics(bin_probabilities(state(kappa, p), part), part)
    assert st_.second1 == pytest.approx(1.0, abs=1e-13)
    assert abs(st_.mean1) < 1e-13 and abs(st_.mean2) < 1e-13
    assert st_.dQ1 == pytest.approx(1.0, abs=1e-12)
    assert abs(st_.commutator) < 1e-14
    assert abs(st_.covariance_plain) < 1e-12
    assert st_.rs_left >= st_.rs_right_plain - 1e-12
    assert st_.rs_left >= st_.rs_right_conj - 1e-12


def test_conjugated_covariance_is_binned_first_harmonic():
    s = state(3.8, -2)
    part = RingPartition(64)
    st_ = phasor_statistics(bin_probabilities(s, part), part)
    # fine-grid oracle of <exp(i (theta1 - theta2))> with bin-midpoint phases
    P = brute_force_bins(s, 64, sub=16)
    z = part.phases
    ref = z @ P @ np.conj(z)
    assert st_.covariance_conj == pytest.approx(ref, abs=1e-5)
    assert abs(st_.covariance_conj) > 0.3


def test_uncorrelated_state_has_zero_covariance():
    part = RingPartition(32)
    st_ = phasor_statistics(bin_probabilities(state(0.0, 0), part), part)
    assert abs(st_.covariance_conj) < 1e-14


@settings(max_examples=15, deadline=None)
@given(n_bins=st.integers(2, 40), offset=st.floats(-1, 1))
def test_probabilities_are_valid(n_bins, offset):
    part = RingPartition(n_bins, offset)
    P = bin_probabilities(state(4.5, -2), part)
    assert P.sum() == pytest.approx(1.0, abs=1e-13)
    assert np.all(P > -1e-15)
    assert np.allclose(P, P.T, atol=1e-14)  # even relative density


def test_refine_grid():
    grid = refine_grid(np.linspace(0, 2 * np.pi, 5))
    for c, count in ((np.pi, 21), (2 * np.pi, 11)):
        assert np.min(np.abs(grid - c)) == 0.0
        near = grid[np.abs(grid - c) <= 0.1 + 1e-12]
        assert len(near) == count
    assert grid.min() == 0.0 and grid.max() == 2 * np.pi
    assert np.all(np.diff(grid) > 0)
    assert np.array_equal(refine_grid([0.5, 1.0]), [0.5, 1.0])


def test_free_state_uniform_bins():
    P = bin_probabilities(state(0.0, 0), RingPartition(16))
    assert np.max(np.abs(P - 1 / 256)) < 1e-15


@pytest.mark.parametrize("kappa,p", [(3.8, -2), (6.3, -1)])
def test_uniform_row_sums(kappa, p):
    P = bin_probabilities(state(kappa, p), RingPartition(64))
    assert np.max(np.abs(P.sum(axis=1) - 1 / 64)) < 1e-14
    assert np.max(np.abs(P.sum(axis=0) - 1 / 64)) < 1e-14


def test_correlated_mass_on_diagonal():
    P = bin_probabilities(state(3.8, -2), RingPartition(64))
    assert np.array_equal(np.argmax(P, axis=1), np.arange(64))


def test_partition_refinement_converges():
    s = state(3.8, -2)
    cov = []
    for n in (32, 64, 128):
        part = RingPartition(n)
        cov.append(phasor_statistics(bin_probabilities(s, part), part).covariance_conj.real)
    # midpoint phases shrink the first harmonic by sinc(pi / N): O(1/N^2) steps, ratio ~ 4
    d1, d2 = cov[1] - cov[0], cov[2] - cov[1]
    assert d1 > 0 and d2 > 0
    assert d1 / d2 == pytest.approx(4.0, rel=0.01)


def test_rotation_invariance():
    s = state(6.3, -2)
    base, rot = RingPartition(64), RingPartition(64, 2 * np.pi / 64)
    a = phasor_statistics(bin_probabilities(s, base), base)
    b = phasor_statistics(bin_probabilities(s, rot), rot)
    assert abs(abs(a.mean1) - abs(b.mean1)) < 1e-12
    assert abs(a.var1 - b.var1) < 1e-12 and abs(a.var2 - b.var2) < 1e-12
    assert abs(abs(a.covariance_conj) - abs(b.covariance_conj)) < 1e-12
    assert abs(abs(a.covariance_plain) - abs(b.covariance_plain)) < 1e-12


def test_uncertainty_scan_small():
    scan = uncertainty_scan(1, [0.5, 3.8], refine=False)
    assert [r.ground_p for r in scan.records] == [0, -2]
    assert scan.rows()[1][0] == 3.8 and len(scan.rows()[0]) == len(COLUMNS)
    cov = scan.column("cov_conj_abs")
    assert cov[1] > cov[0]
    assert np.all(scan.column("rs_left") >= scan.column("rs_right") - 1e-12)
    assert not scan.inconclusive


def test_uncertainty_scan_refined_flags():
    scan = uncertainty_scan(1, [3.0, 3.3])
    refined = scan.column("refined")
    kappa = scan.column("kappa")
    assert not refined[kappa == 3.0][0] and refined[kappa == np.pi][0]
    at_pi = scan.records[int(np.argmin(np.abs(kappa - np.pi)))]
    assert at_pi.degenerate == (-2, 0) and at_pi.ground_p == 0
