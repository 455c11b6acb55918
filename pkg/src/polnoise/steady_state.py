"""Characteristic polynomials, stability, and relaxation frequencies.

The linearized fluctuation dynamics around the x-polarized stationary
solution splits into an amplitude block (x quadrature with the total
inversion) and a polarization block (y-mode quadratures with the spin
difference). Each block has a characteristic polynomial D(omega) whose
squared modulus is the common denominator of every noise spectrum, and
whose interior minima locate the relaxation-oscillation resonances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .params import Branch, LaserParams, OperatingPoint, derive_operating_point, require_lasing

# A resonance counts as marginal when the largest eigenvalue real part
# sits within this band around zero.
MARGINAL_TOL = 1e-9

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CharPolyPair:
    """Callable characteristic polynomials of the two fluctuation blocks.

    Attributes
    ----------
    d_x_of_omega:
        Amplitude-block polynomial D_x(omega), vectorized over omega.
    d_y_of_omega:
        Polarization-block polynomial D_y(omega), vectorized over omega.
    """

    d_x_of_omega: Callable[[np.ndarray], np.ndarray]
    d_y_of_omega: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues of both drift blocks and the resulting verdict."""

    eigenvalues_x: np.ndarray
    eigenvalues_y: np.ndarray
    max_real_part: float
    verdict: str  # "stable" | "marginal" | "unstable"


def char_poly_pair(params: LaserParams, op: OperatingPoint | None = None) -> CharPolyPair:
    """Build the characteristic polynomials of the linearization.

    D_x(omega) = -i*omega*(Gamma - i*omega) + 2*kappa_x*gamma*(r-1)

    D_y(omega) = (Gamma_s - i*omega) * ((2*omega_p)^2 + (2*kappa_a + i*omega)^2)
                 + 2*kappa_x*gamma*(r-1) * (2*alpha*omega_p - 2*kappa_a - i*omega)

    Both equal det(-i*omega*I - A) of the corresponding drift block.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)

    kx = op.kappa_x
    ka = params.kappa_a
    wp = params.omega_p
    al = params.alpha
    gb = op.gamma_big
    gbs = op.gamma_big_s
    e = params.gamma * (params.r - 1.0)

    def d_x(omega):
        w = np.asarray(omega, dtype=float)
        return -1j * w * (gb - 1j * w) + 2.0 * kx * e

    def d_y(omega):
        w = np.asarray(omega, dtype=float)
        return (gbs - 1j * w) * ((2.0 * wp) ** 2 + (2.0 * ka + 1j * w) ** 2) + 2.0 * kx * e * (
            2.0 * al * wp - 2.0 * ka - 1j * w
        )

    return CharPolyPair(d_x_of_omega=d_x, d_y_of_omega=d_y)


def char_poly_values(pair: CharPolyPair, omega) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate both polynomials on a frequency array."""
    return pair.d_x_of_omega(omega), pair.d_y_of_omega(omega)


def drift_matrices(params: LaserParams, op: OperatingPoint | None = None):
    """Drift matrices of the two fluctuation blocks.

    Returns
    -------
    (a_x, a_y):
        a_x is 2x2 over (delta X_x, delta D); a_y is 3x3 over
        (delta X_y, delta Y_y, delta d).
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)

    q = op.q
    c = op.c_sat
    kx = op.kappa_x
    ka = params.kappa_a
    wp = params.omega_p
    al = params.alpha
    s2 = np.sqrt(2.0)

    a_x = np.array(
        [
            [0.0, s2 * c * q],
            [-2.0 * s2 * kx * q, -op.gamma_big],
        ]
    )
    a_y = np.array(
        [
            [2.0 * ka, -2.0 * wp, -s2 * al * c * q],
            [2.0 * wp, 2.0 * ka, -s2 * c * q],
            [0.0, 2.0 * s2 * kx * q, -op.gamma_big_s],
        ]
    )
    return a_x, a_y


def stability_report(params: LaserParams, op: OperatingPoint | None = None) -> StabilityReport:
    """Eigenvalues of both drift blocks and a stability verdict.

    The verdict is "stable" when every eigenvalue real part is negative,
    "unstable" when one is positive, and "marginal" when the largest
    real part sits within MARGINAL_TOL of zero.
    """
    a_x, a_y = drift_matrices(params, op)
    ev_x = np.linalg.eigvals(a_x)
    ev_y = np.linalg.eigvals(a_y)
    worst = float(max(ev_x.real.max(), ev_y.real.max()))
    if abs(worst) <= MARGINAL_TOL:
        verdict = "marginal"
    elif worst > 0:
        verdict = "unstable"
    else:
        verdict = "stable"
    return StabilityReport(
        eigenvalues_x=ev_x, eigenvalues_y=ev_y, max_real_part=worst, verdict=verdict
    )


def _golden_min(f, a: float, b: float, rel_tol: float = 1e-10) -> float:
    # plain golden-section search; f assumed unimodal on [a, b]
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > rel_tol * max(abs(a), abs(b), 1e-300):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def _interior_minima(f, grid: np.ndarray) -> list[tuple[float, float]]:
    """Bracket and refine every interior local minimum of f on the grid.

    Returns (location, value) pairs. Endpoints never qualify; a spectrum
    whose modulus decreases monotonically toward an edge yields nothing.
    """
    vals = f(grid)
    out = []
    for i in range(1, len(grid) - 1):
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1]:
            x = _golden_min(lambda w: float(f(np.array([w]))[0]), grid[i - 1], grid[i + 1])
            out.append((x, float(f(np.array([x]))[0])))
    return out


def relaxation_frequencies(
    params: LaserParams, op: OperatingPoint | None = None, n_grid: int = 4000
) -> tuple[float | None, float | None]:
    """Relaxation-oscillation frequencies of the two blocks.

    Omega_1 is the interior minimum of |D_x(omega)|^2 and Omega_2 the
    deepest interior minimum of |D_y(omega)|^2, each located on a
    logarithmic scan from 1e-3*gamma to 1e3*kappa and refined by
    golden-section search to 1e-10 relative width. A block whose
    modulus has no interior minimum (overdamped) reports None.
    """
    pair = char_poly_pair(params, op)
    grid = np.geomspace(1e-3 * params.gamma, 1e3 * params.kappa, n_grid)

    def ax2(w):
        return np.abs(pair.d_x_of_omega(w)) ** 2

    def ay2(w):
        return np.abs(pair.d_y_of_omega(w)) ** 2

    min_x = _interior_minima(ax2, grid)
    min_y = _interior_minima(ay2, grid)
    omega_1 = min(min_x, key=lambda t: t[1])[0] if min_x else None
    omega_2 = min(min_y, key=lambda t: t[1])[0] if min_y else None
    return omega_1, omega_2
