"""Independent reference computations for the test suite.

None of these touch the plane-wave machinery: energies come from
second-order finite differences in real space (Richardson-extrapolated),
integrals from adaptive quadrature or brute-force grids.
"""
import math

import numpy as np
from scipy import integrate
from scipy.sparse import diags
from scipy.sparse.linalg import eigsh


def bump(x, q):
    """Q cos^{2q}(x/2) with Q from the Gamma-function form of the normalisation."""
    Q = math.factorial(q) / (2 * math.sqrt(math.pi) * math.gamma(q + 0.5))
    return Q * np.cos(np.asarray(x) / 2) ** (2 * q)


def bump_integral(q):
    return integrate.quad(lambda x: bump(x, q), -np.pi, np.pi, epsabs=1e-13, epsrel=0, limit=200)[0]


def fd_lowest(q, kappa, p, n):
    """Lowest eps of -phi'' + (p/2 + kappa delta)^2 phi = (eps/2) phi by finite differences.

    Odd p gets the antiperiodic wrap phi(x + 2 pi) = -phi(x).
    """
    h = 2 * np.pi / n
    x = -np.pi + h * np.arange(n)
    V = (p / 2 + kappa * bump(x, q)) ** 2
    off = -np.ones(n - 1) / h ** 2
    A = diags([2 / h ** 2 + V, off, off], [0, 1, -1]).tolil()
    wrap = (-1.0 if p % 2 else 1.0) / h ** 2
    A[0, n - 1] = A[n - 1, 0] = -wrap
    lam = eigsh(A.tocsc(), k=1, sigma=-1.0, which="LM", return_eigenvectors=False)[0]
    return 2 * lam


def fd_ground(q, kappa, p, n=4096):
    """Richardson extrapolation of the O(h^2) finite-difference energy."""
    coarse, fine = fd_lowest(q, kappa, p, n // 2), fd_lowest(q, kappa, p, n)
    return (4 * fine - coarse) / 3


def circular_first_moment(density, lo=-np.pi, hi=np.pi):
    """<exp(i theta)> for a density on [lo, hi) by adaptive quadrature."""
    norm = integrate.quad(density, lo, hi, epsabs=1e-13)[0]
    re = integrate.quad(lambda t: density(t) * np.cos(t), lo, hi, epsabs=1e-13)[0]
    im = integrate.quad(lambda t: density(t) * np.sin(t), lo, hi, epsabs=1e-13)[0]
    return complex(re, im) / norm
