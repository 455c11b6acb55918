"""Independent frequency-domain oracle for the noise spectra.

The linearized fluctuation equations have the Langevin form
dv/dt = A v + F with white noise of symmetrized diffusion matrix Diff.
With the e^{+i*omega*t} transform convention the spectral covariance is

    S(omega) = M^{-1} Diff M^{-dagger},   M = -i*omega*I - A.

This module builds the drift and diffusion matrices directly from the
operating point and evaluates the contraction with explicit analytic
inverses (2x2 cofactor, 3x3 adjugate), never reusing the closed-form
polynomial expressions. Agreement between the two routes is therefore a
real cross-check, not a tautology.

The diffusion matrices are symmetric but not positive semidefinite
(they describe a phase-space quasi-distribution), so the model admits
no time-domain noise sampling; the oracle works in frequency domain
only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Branch, LaserParams, OperatingPoint, derive_operating_point, require_lasing
from .spectra import FrequencyGrid, SpectrumSet
from .steady_state import drift_matrices

# A grid point whose resolvent condition estimate exceeds this is
# reported as singular rather than silently amplified.
COND_LIMIT = 1e14
HERMITICITY_TOL = 1e-12
RESOLVENT_TOL = 1e-10


class SingularResolvent(ArithmeticError):
    """The resolvent is numerically singular at one or more grid points."""


class GridMismatch(ValueError):
    """Two spectrum sets do not share the same frequency grid."""


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Drift and diffusion matrices of both fluctuation blocks."""

    params: LaserParams
    op: OperatingPoint
    drift_x: np.ndarray
    drift_y: np.ndarray
    diffusion_x: np.ndarray
    diffusion_y: np.ndarray


@dataclass(frozen=True, eq=False)
class OracleSpectra:
    """Oracle-evaluated channels plus numerical self-diagnostics."""

    omega: np.ndarray
    sxx: np.ndarray
    sxy: np.ndarray
    syy: np.ndarray
    cxy: np.ndarray
    hermiticity_defect: float
    resolvent_residual: float
    cond_x: np.ndarray
    cond_y: np.ndarray


@dataclass(frozen=True, eq=False)
class ComparisonResult:
    """Per-channel comparison of closed forms against the oracle."""

    omega: np.ndarray
    channels: dict
    max_residuals: dict
    worst_channel: str
    worst_residual: float
    rel_tol: float
    abs_floor: float
    passed: bool

    def rows(self):
        """Long-format rows: omega, channel, closed, oracle, residual."""
        for name, (closed, oracle, resid) in self.channels.items():
            for i in range(self.omega.size):
                yield (
                    float(self.omega[i]),
                    name,
                    float(closed[i]),
                    float(oracle[i]),
                    float(resid[i]),
                )


def diffusion_matrices(params: LaserParams, op: OperatingPoint):
    """Symmetrized diffusion matrices of the two blocks.

    Block x is over (vacuum quadrature noise, pump/population noise);
    the population entry carries the pump-statistics factor (1 - p/2).
    Block y is over (two vacuum quadratures, spin noise).
    """
    q = op.q
    c = op.c_sat
    kx = op.kappa_x
    s2 = np.sqrt(2.0)
    d_x = np.array(
        [
            [kx, -s2 * kx * q],
            [-s2 * kx * q, (kx / c) * op.gamma_big * (1.0 - params.p / 2.0)],
        ]
    )
    d_y = np.array(
        [
            [kx, 0.0, 0.0],
            [0.0, kx, -s2 * kx * q],
            [0.0, -s2 * kx * q, (kx / c) * op.gamma_big_s],
        ]
    )
    return d_x, d_y


def build_linear_model(params: LaserParams, op: OperatingPoint | None = None) -> LinearModel:
    """Assemble drift and diffusion matrices for the x-branch solution."""
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)
    a_x, a_y = drift_matrices(params, op)
    d_x, d_y = diffusion_matrices(params, op)
    return LinearModel(
        params=params, op=op, drift_x=a_x, drift_y=a_y, diffusion_x=d_x, diffusion_y=d_y
    )


def _inv2(m):
    """Analytic inverse of a stack of 2x2 matrices, shape (n, 2, 2)."""
    det = m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]
    out = np.empty_like(m)
    out[:, 0, 0] = m[:, 1, 1]
    out[:, 0, 1] = -m[:, 0, 1]
    out[:, 1, 0] = -m[:, 1, 0]
    out[:, 1, 1] = m[:, 0, 0]
    return out / det[:, None, None], det


def _inv3(m):
    """Adjugate inverse of a stack of 3x3 matrices, shape (n, 3, 3)."""
    a, b, c = m[:, 0, 0], m[:, 0, 1], m[:, 0, 2]
    d, e, f = m[:, 1, 0], m[:, 1, 1], m[:, 1, 2]
    g, h, i = m[:, 2, 0], m[:, 2, 1], m[:, 2, 2]
    co00 = e * i - f * h
    co01 = -(d * i - f * g)
    co02 = d * h - e * g
    co10 = -(b * i - c * h)
    co11 = a * i - c * g
    co12 = -(a * h - b * g)
    co20 = b * f - c * e
    co21 = -(a * f - c * d)
    co22 = a * e - b * d
    det = a * co00 + b * co01 + c * co02
    adj = np.empty_like(m)
    # adjugate = transpose of the cofactor matrix
    adj[:, 0, 0], adj[:, 0, 1], adj[:, 0, 2] = co00, co10, co20
    adj[:, 1, 0], adj[:, 1, 1], adj[:, 1, 2] = co01, co11, co21
    adj[:, 2, 0], adj[:, 2, 1], adj[:, 2, 2] = co02, co12, co22
    return adj / det[:, None, None], det


def _frob(m):
    return np.sqrt(np.sum(np.abs(m) ** 2, axis=(1, 2)))


def _spectral_matrix(a, diff, omega):
    """S(omega) = M^{-1} Diff M^{-dagger} for one block, vectorized."""
    n = a.shape[0]
    w = omega[:, None, None]
    m = -1j * w * np.eye(n)[None, :, :] - a[None, :, :]
    inv, _det = _inv2(m) if n == 2 else _inv3(m)
    cond = _frob(m) * _frob(inv)
    resid = np.max(np.abs(m @ inv - np.eye(n)[None, :, :]))
    s = inv @ diff[None, :, :] @ inv.conj().transpose(0, 2, 1)
    herm = np.max(np.abs(s - s.conj().transpose(0, 2, 1)))
    return s, cond, float(resid), float(herm)


def oracle_spectra(
    model: LinearModel, grid: FrequencyGrid | None = None, cond_limit: float = COND_LIMIT
) -> OracleSpectra:
    """Evaluate all four channels by direct matrix contraction.

    Raises
    ------
    SingularResolvent
        If the resolvent condition estimate exceeds cond_limit at any
        grid point.

    Notes
    -----
    The Hermiticity defect of S(omega) and the worst resolvent identity
    residual max|M M^{-1} - I| are computed as self-diagnostics and
    enforced at HERMITICITY_TOL (relative to the channel scale) and
    RESOLVENT_TOL.
    """
    if grid is None:
        grid = FrequencyGrid.default()
    w = grid.omega

    s_x, cond_x, resid_x, herm_x = _spectral_matrix(model.drift_x, model.diffusion_x, w)
    s_y, cond_y, resid_y, herm_y = _spectral_matrix(model.drift_y, model.diffusion_y, w)

    bad = np.flatnonzero((cond_x > cond_limit) | (cond_y > cond_limit))
    if bad.size:
        raise SingularResolvent(
            f"resolvent condition estimate exceeds {cond_limit:g} at "
            f"{bad.size} grid point(s), first omega = {w[bad[0]]!r}"
        )

    scale = max(np.max(np.abs(s_x)), np.max(np.abs(s_y)))
    herm = max(herm_x, herm_y)
    resid = max(resid_x, resid_y)
    if herm > HERMITICITY_TOL * scale:
        raise ArithmeticError(f"spectral matrix lost Hermiticity: defect {herm:g}")
    if resid > RESOLVENT_TOL:
        raise ArithmeticError(f"resolvent identity violated: residual {resid:g}")

    return OracleSpectra(
        omega=w,
        sxx=s_x[:, 0, 0].real,
        sxy=s_y[:, 0, 0].real,
        syy=s_y[:, 1, 1].real,
        cxy=0.5 * (s_y[:, 0, 1] + s_y[:, 1, 0]).real,
        hermiticity_defect=herm,
        resolvent_residual=resid,
        cond_x=cond_x,
        cond_y=cond_y,
    )


def compare(
    closed: SpectrumSet,
    oracle: OracleSpectra,
    rel_tol: float = 1e-9,
    abs_floor: float = 1e-15,
) -> ComparisonResult:
    """Per-channel relative residuals of closed forms against the oracle.

    The residual at each point is |closed - oracle| / max(|oracle|,
    abs_floor); the comparison passes when every channel stays within
    rel_tol. Frequencies must match exactly.
    """
    if closed.omega.shape != oracle.omega.shape or not np.array_equal(closed.omega, oracle.omega):
        raise GridMismatch("closed-form and oracle grids differ")

    channels = {}
    max_residuals = {}
    for name in ("sxx", "sxy", "syy", "cxy"):
        c = getattr(closed, name)
        o = getattr(oracle, name)
        resid = np.abs(c - o) / np.maximum(np.abs(o), abs_floor)
        channels[name] = (c, o, resid)
        max_residuals[name] = float(resid.max())

    worst_channel = max(max_residuals, key=max_residuals.get)
    worst = max_residuals[worst_channel]
    return ComparisonResult(
        omega=closed.omega,
        channels=channels,
        max_residuals=max_residuals,
        worst_channel=worst_channel,
        worst_residual=worst,
        rel_tol=rel_tol,
        abs_floor=abs_floor,
        passed=worst <= rel_tol,
    )
