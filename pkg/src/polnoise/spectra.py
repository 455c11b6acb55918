"""Closed-form quadrature and Stokes-parameter noise spectra.

All spectra are spectral densities of the fluctuations around the
x-polarized stationary solution, expressed in the rotating frame of
that solution and evaluated on a real frequency grid. Two evaluation
modes exist:

``canonical``
    Rational forms algebraically identical to the covariance
    contraction of the linearized model; they match the matrix oracle
    to floating-point accuracy.

``as_printed``
    A legacy set of compact closed forms retained for diagnostic
    comparison. The amplitude channel coincides with the canonical one;
    the polarization channels deviate (including an overall sign error
    in the cross spectrum and a dimensionally inconsistent squared term
    in the low-frequency coefficient of the phase-quadrature spectrum).

The channels are sxx (amplitude quadrature of the lasing mode), sxy and
syy (amplitude and phase quadratures of the orthogonal mode), and cxy
(their symmetrized cross spectrum). Stokes-parameter spectra are the
same four channels scaled by 8*Q^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Branch, LaserParams, OperatingPoint, derive_operating_point, require_lasing
from .steady_state import char_poly_pair

MODES = ("canonical", "as_printed")


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing grid of non-negative angular frequencies."""

    omega: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omega, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("frequency grid must be a non-empty 1-d array")
        if w[0] < 0:
            raise ValueError("frequency grid must be non-negative")
        if not np.all(np.diff(w) > 0):
            raise ValueError("frequency grid must be strictly increasing")
        object.__setattr__(self, "omega", w)

    @classmethod
    def default(cls) -> "FrequencyGrid":
        """Zero plus 2000 logarithmic points from 0.01 to 1000 GHz."""
        return cls(np.concatenate(([0.0], np.geomspace(0.01, 1000.0, 2000))))

    def __len__(self):
        return self.omega.size


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """Four quadrature noise spectra on a common frequency grid."""

    omega: np.ndarray
    sxx: np.ndarray
    sxy: np.ndarray
    syy: np.ndarray
    cxy: np.ndarray
    mode: str


@dataclass(frozen=True, eq=False)
class StokesSpectra:
    """Stokes-parameter fluctuation spectra; s0 and s1 coincide."""

    omega: np.ndarray
    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    cross_23: np.ndarray
    mode: str


def _xx_numerator(params: LaserParams, op: OperatingPoint, w2):
    g = params.gamma
    return op.kappa_x * (w2 + g * g * params.r * (1.0 - (params.r - 1.0) * params.p / 2.0))


def _canonical_y_coeffs(params: LaserParams, op: OperatingPoint):
    """Polynomial coefficients of the canonical polarization channels.

    Each numerator is kappa_x * (w^4 + A*w^2 + 4*B) for sxy and syy and
    kappa_x * (C2*w^2 + C0) for cxy, over the common |D_y|^2.
    """
    k = params.kappa
    ka = params.kappa_a
    kx = op.kappa_x
    wp = params.omega_p
    al = params.alpha
    e = params.gamma * (params.r - 1.0)
    g = op.gamma_big_s

    a_sxy = al * al * e * g - 4.0 * al * wp * e - 4.0 * kx * e + g * g + 4.0 * ka * ka + 4.0 * wp * wp
    b_sxy = (
        e * e * (al * al * (k * k + 4.0 * k * ka + 3.0 * ka * ka) + 2.0 * al * wp * (k + ka) + kx * kx)
        + e
        * g
        * (al * al * ka * ka + 2.0 * al * wp * (k + 3.0 * ka) - 2.0 * ka * (k + ka) + 3.0 * wp * wp)
        + g * g * (ka * ka + wp * wp)
    )

    a_syy = 3.0 * e * g - 4.0 * al * wp * e + g * g + 4.0 * ka * ka + 4.0 * wp * wp
    b_syy = g * (e * (al * al * wp * wp - 4.0 * al * ka * wp + 3.0 * ka * ka) + g * (ka * ka + wp * wp))

    c2 = 2.0 * al * e * (g + k + ka)
    c0 = -4.0 * e * (
        e * al * al * k * wp
        + e * al * al * ka * wp
        - e * al * k * ka
        - e * al * ka * ka
        + g * al * al * ka * wp
        - g * al * k * ka
        - 3.0 * g * al * ka * ka
        + 2.0 * g * al * wp * wp
        - g * k * wp
        - 4.0 * g * ka * wp
    )
    return (a_sxy, b_sxy), (a_syy, b_syy), (c2, c0)


def _printed_y_numerators(params: LaserParams, op: OperatingPoint, w2, fix_syy_units: bool):
    # these keep gamma_s and E separate exactly as the compact forms do
    k = params.kappa
    ka = params.kappa_a
    kx = op.kappa_x
    wp = params.omega_p
    al = params.alpha
    gs = params.gamma_s
    e = params.gamma * (params.r - 1.0)

    a_x = (
        (2.0 * ka - e) ** 2
        + (2.0 * wp + al * e) ** 2
        - 4.0 * k * e
        + gs * (gs + e * (al * al + 2.0))
    )
    b_x = (
        (ka * gs - k * e) ** 2
        + (wp * gs + al * k * e) ** 2
        + gs * e * (al * ka + wp) ** 2
    )
    num_sxy = kx * (w2 * w2 + a_x * w2 + 4.0 * b_x) / 2.0

    a_y = 4.0 * (ka * ka + wp * wp) + gs * gs + e * (4.0 * al * wp + gs)
    bracket = wp * wp * (al * al + 2.0) + ka * ka
    if not fix_syy_units:
        # reproduced verbatim: this square makes the term dimensionally
        # inconsistent with its neighbours
        bracket = bracket * bracket
    b_y = gs * gs * (ka * ka + wp * wp) + gs * e * bracket + wp * wp * e * e * (al * al + 1.0)
    num_syy = kx * (w2 * w2 + a_y * w2 + 4.0 * b_y) / 2.0

    num_cxy = (
        -kx
        * e
        * (
            al * kx * w2
            + 2.0 * k * wp * e * (al * al + 1.0)
            + 2.0 * gs * (k * (al * ka + wp) + al * ka * (ka - al * wp))
        )
        / 2.0
    )
    return num_sxy, num_syy, num_cxy


def _channels(
    params: LaserParams,
    op: OperatingPoint,
    omega: np.ndarray,
    mode: str,
    fix_syy_units: bool = False,
):
    """Evaluate all four channels on a signed frequency array.

    Internal: accepts negative frequencies so symmetry properties can
    be probed directly. The public entry points restrict to grids.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    pair = char_poly_pair(params, op)
    w = np.asarray(omega, dtype=float)
    w2 = w * w
    dx2 = np.abs(pair.d_x_of_omega(w)) ** 2
    dy2 = np.abs(pair.d_y_of_omega(w)) ** 2

    sxx = _xx_numerator(params, op, w2) / dx2
    if mode == "canonical":
        (a1, b1), (a2, b2), (c2, c0) = _canonical_y_coeffs(params, op)
        kx = op.kappa_x
        sxy = kx * (w2 * w2 + a1 * w2 + 4.0 * b1) / dy2
        syy = kx * (w2 * w2 + a2 * w2 + 4.0 * b2) / dy2
        cxy = kx * (c2 * w2 + c0) / dy2
    else:
        num_sxy, num_syy, num_cxy = _printed_y_numerators(params, op, w2, fix_syy_units)
        sxy = num_sxy / dy2
        syy = num_syy / dy2
        cxy = num_cxy / dy2
    return sxx, sxy, syy, cxy


def quadrature_spectra(
    params: LaserParams,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
    fix_syy_units: bool = False,
) -> SpectrumSet:
    """Closed-form quadrature noise spectra on a frequency grid.

    Parameters
    ----------
    params, op:
        Laser parameters and (optionally precomputed) x-branch
        operating point; requires r > 1.
    grid:
        Frequency grid, default FrequencyGrid.default().
    mode:
        "canonical" (matches the matrix oracle) or "as_printed"
        (legacy compact forms, see module docstring).
    fix_syy_units:
        Only meaningful in as_printed mode: remove the square from the
        dimensionally inconsistent syy coefficient term.

    Returns
    -------
    SpectrumSet
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)
    if grid is None:
        grid = FrequencyGrid.default()
    sxx, sxy, syy, cxy = _channels(params, op, grid.omega, mode, fix_syy_units)
    return SpectrumSet(omega=grid.omega, sxx=sxx, sxy=sxy, syy=syy, cxy=cxy, mode=mode)


def stokes_spectra(
    params: LaserParams,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
) -> StokesSpectra:
    """Stokes-parameter fluctuation spectra: quadratures scaled by 8*Q^2.

    delta S0 = delta S1 = 2*sqrt(2)*Q * delta X_x, delta S2 and delta S3
    likewise from the y-mode quadratures, so every Stokes spectrum is
    8*Q^2 times the corresponding quadrature spectrum and s0 == s1.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    qs = quadrature_spectra(params, op, grid, mode)
    scale = 8.0 * op.q2
    return StokesSpectra(
        omega=qs.omega,
        s0=scale * qs.sxx,
        s1=scale * qs.sxx,
        s2=scale * qs.sxy,
        s3=scale * qs.syy,
        cross_23=scale * qs.cxy,
        mode=mode,
    )


def mean_stokes(params: LaserParams, op: OperatingPoint | None = None) -> tuple:
    """Mean Stokes vector (S0, S1, S2, S3) of the x-polarized solution."""
    if op is None:
        op = derive_operating_point(params, Branch.X)
    return (2.0 * op.q2, 2.0 * op.q2, 0.0, 0.0)
