import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugering.domain import (
    MAX_Q,
    GaugeShape,
    MomentumSector,
    classify_wells,
    effective_potential,
    gauge_fourier_coefficients,
    normalization,
    periodic_bump,
)
from gaugering.fourier import uniform_grid

from oracles import bump, bump_integral


def test_q1_coefficients():
    c = gauge_fourier_coefficients(1)
    assert c == pytest.approx([1 / (4 * np.pi), 1 / (2 * np.pi), 1 / (4 * np.pi)], rel=1e-15)
    assert normalization(1) == pytest.approx(1 / np.pi, rel=1e-15)


def test_q2_binomial_ratios():
    c = gauge_fourier_coefficients(2)
    assert c[2:] / c[4] == pytest.approx([6, 4, 1], rel=1e-14)
    assert np.array_equal(c, c[::-1])


@pytest.mark.parametrize("q", range(1, 65))
def test_mean_coefficient_is_inverse_circumference(q):
    c = gauge_fourier_coefficients(q)
    assert c[q] == pytest.approx(1 / (2 * np.pi), rel=1e-13)
    assert np.all(c > 0)
    assert np.array_equal(c, c[::-1])


@pytest.mark.parametrize("q", [1, 2, 4, 8, 16, 32, 64])
def test_normalization_by_quadrature(q):
    # independent oracle: Gamma-function normalisation + adaptive quadrature
    assert bump_integral(q) == pytest.approx(1.0, abs=1e-12)
    x = uniform_grid(4096)
    assert periodic_bump(x, q).sum() * 2 * np.pi / 4096 == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("q", [1, 3, 10, 64])
def test_profile_matches_gamma_form(q):
    x = np.linspace(-np.pi, np.pi, 101)
    assert periodic_bump(x, q) == pytest.approx(bump(x, q), rel=1e-12, abs=1e-300)


def test_large_exponent_supported():
    c = gauge_fourier_coefficients(512)
    assert c[512] == pytest.approx(1 / (2 * np.pi), rel=1e-12)
    assert np.all(np.isfinite(c))


@pytest.mark.parametrize("bad", [0, -3, MAX_Q + 1, 1.5])
def test_rejects_bad_exponent(bad):
    with pytest.raises(ValueError):
        gauge_fourier_coefficients(bad)


def test_even_and_periodic():
    x = uniform_grid(512)
    sym = np.concatenate([x[1:], [np.pi]])  # symmetric grid about zero
    for q in (1, 7, 40):
        assert np.array_equal(periodic_bump(sym, q), periodic_bump(-sym, q))
        assert periodic_bump(x + 2 * np.pi, q) == pytest.approx(periodic_bump(x, q), rel=1e-12, abs=1e-14)


def test_sector_parity():
    assert MomentumSector(0).periodic and MomentumSector(-2).periodic
    assert MomentumSector(3).parity == "antiperiodic"
    assert MomentumSector(-1).parity == "antiperiodic"
    with pytest.raises(ValueError):
        MomentumSector(0.5)


@pytest.mark.parametrize("p", [-3, 0, 4])
def test_free_potential_is_constant(p):
    pot = effective_potential(GaugeShape(3, 0.0), MomentumSector(p))
    x = uniform_grid(64)
    assert np.all(pot(x) == p * p / 4)
    assert pot.coefficient(0) == p * p / 4
    assert np.count_nonzero(pot.coefficients) == (1 if p else 0)


def test_closed_form_potentials_at_kappa_pi():
    x = uniform_grid(256)
    shape = GaugeShape(1, np.pi)
    v0 = effective_potential(shape, MomentumSector(0))
    v2 = effective_potential(shape, MomentumSector(-2))
    assert np.max(np.abs(v0.series(x) - np.cos(x / 2) ** 4)) < 1e-12
    assert np.max(np.abs(v2.series(x) - np.sin(x / 2) ** 4)) < 1e-12
    assert np.max(np.abs(v0(x) - np.cos(x / 2) ** 4)) < 1e-12


@pytest.mark.parametrize("q", [1, 3, 8, 20])
def test_convolution_consistency(q):
    x = uniform_grid(max(64, 4 * q + 1))
    pot = effective_potential(GaugeShape(q, 1.7), MomentumSector(0))
    assert np.max(np.abs(pot.series(x) - (1.7 * bump(x, q)) ** 2)) < 1e-12 * max(1, np.max(pot(x)))


def test_cross_term_mean():
    # <p kappa delta> = p kappa / (2 pi) for every q
    for q in (1, 5, 33):
        shape = GaugeShape(q, 2.3)
        with_p = effective_potential(shape, MomentumSector(2)).coefficient(0)
        without = effective_potential(shape, MomentumSector(0)).coefficient(0)
        assert with_p - without - 1.0 == pytest.approx(2 * 2.3 / (2 * np.pi), rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(q=st.integers(1, 30), kappa=st.floats(-20, 20), p=st.integers(-8, 8))
def test_potential_properties(q, kappa, p):
    shape, flipped = GaugeShape(q, kappa), GaugeShape(q, -kappa)
    pot = effective_potential(shape, MomentumSector(p))
    mirror = effective_potential(flipped, MomentumSector(-p))
    x = uniform_grid(128)
    assert np.array_equal(pot(x), mirror(x))
    assert np.array_equal(pot.coefficients, mirror.coefficients)
    assert np.all(pot(x) >= 0)
    assert np.array_equal(pot.coefficients, pot.coefficients[::-1])
    assert pot.coefficients.dtype == float


def test_wells_flat_at_zero_coupling():
    report = classify_wells(effective_potential(GaugeShape(1, 0.0), MomentumSector(-2)))
    assert report.flat and report.shape == "flat"


def test_double_well_locations():
    report = classify_wells(effective_potential(GaugeShape(1, 3.8), MomentumSector(-2)))
    x_star = 2 * np.arccos(np.sqrt(np.pi / 3.8))  # cos^2(x/2) = pi / kappa
    assert report.shape == "double" and report.distinct == 1
    assert report.locations == pytest.approx([-x_star, x_star], abs=1e-6)
    assert report.max_gradient < 1e-9
    # barrier is the hump at x = 0, V(0) = (3.8/pi - 1)^2
    assert report.barrier_heights == pytest.approx([(3.8 / np.pi - 1) ** 2] * 2, abs=1e-6)


def test_single_well_at_pi():
    report = classify_wells(effective_potential(GaugeShape(1, np.pi), MomentumSector(0)))
    assert report.shape == "single"
    assert report.locations == pytest.approx([np.pi], abs=1e-9)
    assert report.barrier_heights == pytest.approx([1.0], abs=1e-9)


def test_wells_need_grid():
    with pytest.raises(ValueError):
        classify_wells(effective_potential(GaugeShape(1, 1.0), MomentumSector(0)), 32)
