"""Helpers for periodic grids and finite trigonometric series on the ring."""
import numpy as np


def uniform_grid(n):
    """Left-closed uniform grid x_j = -pi + 2 pi j / n on [-pi, pi)."""
    n = int(n)
    if n < 1:
        raise ValueError("grid size must be positive")
    return -np.pi + 2.0 * np.pi * np.arange(n) / n


def is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


def trig_eval(coeffs, modes, x):
    """Evaluate sum_m coeffs[m] exp(i modes[m] x) at the points x.

    ``modes`` may hold half-integers (antiperiodic functions).
    """
    x = np.asarray(x, dtype=float)
    phase = np.exp(1j * np.multiply.outer(x, np.asarray(modes, dtype=float)))
    return phase @ np.asarray(coeffs)


def trig_derivatives(coeffs, modes, x):
    """Real parts of the first and second derivative of a trig series at x."""
    modes = np.asarray(modes, dtype=float)
    phase = np.exp(1j * np.multiply.outer(np.asarray(x, dtype=float), modes))
    d1 = phase @ (1j * modes * coeffs)
    d2 = phase @ (-(modes ** 2) * coeffs)
    return d1.real, d2.real


def parabolic_offset(f_left, f_mid, f_right):
    """Vertex offset, in units of the grid spacing, of the parabola through three samples."""
    denom = f_left - 2.0 * f_mid + f_right
    if denom == 0.0:
        return 0.0
    return 0.5 * (f_left - f_right) / denom


def local_extrema(samples, kind="min"):
    """Indices of strict-or-flat local extrema of a periodic sampled function."""
    f = np.asarray(samples, dtype=float)
    left, right = np.roll(f, 1), np.roll(f, -1)
    if kind == "min":
        mask = (f <= left) & (f < right)
    elif kind == "max":
        mask = (f >= left) & (f > right)
    else:
        raise ValueError(f"unknown extremum kind {kind!r}")
    return np.flatnonzero(mask)


def wrap_angle(x):
    """Map angles into [-pi, pi)."""
    return (np.asarray(x) + np.pi) % (2.0 * np.pi) - np.pi


def refine_extremum(coeffs, modes, x0, tol=1e-12, maxiter=60):
    """Polish a stationary point of a real trig series by Newton iteration.

    Returns the refined location (wrapped into [-pi, pi)) and the final
    |f'| there. Falls back to ``x0`` if Newton wanders off.
    """
    x = float(x0)
    for _ in range(maxiter):
        d1, d2 = trig_derivatives(coeffs, modes, x)
        if d2 == 0.0:
            break
        step = d1 / d2
        # a Newton step longer than a grid cell means we left the basin
        if abs(step) > 0.5:
            break
        x -= step
        if abs(step) < tol:
            break
    d1, _ = trig_derivatives(coeffs, modes, x)
    return float(wrap_angle(x)), abs(float(d1))
