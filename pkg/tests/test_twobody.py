import numpy as np
import pytest

from gaugering.domain import GaugeShape
from gaugering.fourier import uniform_grid
from gaugering.spectral import solve_sector
from gaugering.twobody import (
    TwoBodyState,
    classify_correlation,
    density_grid,
    marginals,
    relative_density_profile,
    relative_peak,
)


def state(q, kappa, p):
    return TwoBodyState(solve_sector(GaugeShape(q, kappa), p)[0])


@pytest.fixture(scope="module")
def correlated():
    return state(1, 3.8, -2)


def test_fourier_modes_reconstruct_state(correlated):
    j1, j2, A = correlated.fourier_modes()
    assert np.all(j1 + j2 == correlated.p)
    t1, t2 = np.meshgrid(uniform_grid(16), uniform_grid(16), indexing="ij")
    direct = correlated(t1, t2)
    series = np.einsum("k,kab->ab", A, np.exp(1j * (j1[:, None, None] * t1 + j2[:, None, None] * t2)))
    assert np.max(np.abs(direct - series)) < 1e-13


@pytest.mark.parametrize("p", [-2, -1, 0, 3])
def test_single_valued_on_torus(p):
    s = state(1, 2.5, p)
    t = np.linspace(-np.pi, np.pi, 11)
    assert s(t + 2 * np.pi, t) == pytest.approx(s(t, t), abs=1e-12)
    assert s(t, t + 2 * np.pi) == pytest.approx(s(t, t), abs=1e-12)


def test_density_grid_layout(correlated):
    n = 64
    rho = density_grid(correlated, n)
    x = uniform_grid(n)
    assert rho[5, 17] == pytest.approx(abs(correlated(x[5], x[17])) ** 2, rel=1e-13)
    # depends only on theta1 - theta2: every diagonal is constant
    assert np.allclose(np.diag(rho), rho[0, 0], rtol=1e-12)
    assert rho.sum() * (2 * np.pi / n) ** 2 == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        density_grid(correlated, 32)


@pytest.mark.parametrize("kappa,p", [(3.8, -2), (6.3, -1), (0.5, 0)])
def test_marginals_uniform(kappa, p):
    m1, m2 = marginals(density_grid(state(1, kappa, p), 128))
    assert np.max(np.abs(m1 - 1 / (2 * np.pi))) < 1e-12
    assert np.max(np.abs(m2 - 1 / (2 * np.pi))) < 1e-12


def test_relative_profile(correlated):
    x, d = relative_density_profile(correlated, 128)
    assert x[0] == -np.pi and len(d) == 128
    assert d.sum() * 2 * np.pi / 128 == pytest.approx(1.0, abs=1e-12)


def test_correlated_at_3_8(correlated):
    report = classify_correlation(correlated)
    assert report.label == "correlated"
    assert report.peak == pytest.approx(0.0, abs=1e-10)
    assert report.ratio > 5


def test_anticorrelated_at_6_3():
    report = classify_correlation(state(1, 6.3, -2))
    assert report.label == "anti-correlated"
    assert abs(report.peak) > np.pi / 2


def test_free_state_uncorrelated():
    assert classify_correlation(state(1, 0.0, 0)).label == "uncorrelated"


def test_peak_is_stationary_point():
    s = state(1, 6.3, -2).relative
    x = relative_peak(s)
    h = 1e-5
    assert abs(s.density(x + h) - s.density(x - h)) / (2 * h) < 1e-8
    grid = uniform_grid(4096)
    assert s.density(x) >= s.density(grid).max() - 1e-14
