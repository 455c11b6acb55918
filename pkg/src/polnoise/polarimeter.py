"""Virtual polarimeter: photocurrent spectra and cross-correlations.

The measurement chain is a rotatable retarder (angle theta selecting
the y-mode quadrature) followed by a polarizing beam splitter (angle
phi) and two unit-efficiency detectors. Normalized photocurrent noise
spectra are shot-noise referenced, so 1 is the standard quantum limit,
values below 1 indicate squeezing.

With the beam splitter at phi and retarder at theta the detected
combinations reduce to the lasing-mode amplitude spectrum sxx and the
rotated orthogonal-mode spectrum

    X_theta^2(omega) = cos^2(theta)*sxy + 2*sin(theta)*cos(theta)*cxy
                       + sin^2(theta)*syy.

C12 is the normalized cross-correlation spectrum of the two detector
currents; C23 the normalized cross-correlation of the S2 and S3 Stokes
fluctuations. Every derived quantity here is also reachable through an
independent route (Stokes spectra, or a three-measurement
reconstruction) and the routes are checked against each other rather
than collapsed into one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import Branch, LaserParams, OperatingPoint, derive_operating_point, require_lasing
from .spectra import FrequencyGrid, SpectrumSet, quadrature_spectra, stokes_spectra

# A beam-splitter projection counts as degenerate (all light on one
# detector) when the smaller of cos^2(phi), sin^2(phi) falls below this.
DEGENERATE_TOL = 1e-24

# Internal route-agreement tolerance for dual-path identities.
TRIANGLE_TOL = 1e-12


class DivisionByZeroMean(ZeroDivisionError):
    """A normalized spectrum was requested for a zero-mean photocurrent."""


class DegenerateSplit(ValueError):
    """The beam splitter sends all light to one detector."""


class ZeroDenominator(ArithmeticError):
    """A normalized correlation is undefined on the whole grid."""


@dataclass(frozen=True)
class PolarimeterSetting:
    """Analyzer orientation, angles stored in radians.

    phi is the polarizing beam-splitter angle relative to the lasing
    polarization, theta the retarder angle selecting the measured
    quadrature of the orthogonal mode. Detector efficiency is unity.
    """

    phi: float
    theta: float

    @classmethod
    def from_degrees(cls, phi_deg: float, theta_deg: float) -> "PolarimeterSetting":
        return cls(math.radians(phi_deg), math.radians(theta_deg))

    def degrees(self) -> tuple[float, float]:
        return math.degrees(self.phi), math.degrees(self.theta)


# Settings that measure the three Stokes-parameter noise spectra with
# the difference current.
PRESETS = {
    "s1": PolarimeterSetting.from_degrees(0.0, 0.0),
    "s2": PolarimeterSetting.from_degrees(45.0, 0.0),
    "s3": PolarimeterSetting.from_degrees(45.0, 90.0),
}


@dataclass(frozen=True)
class MeanPhotocurrents:
    """Mean currents of the two detectors and their sum and difference."""

    i1: float
    i2: float
    i_plus: float
    i_minus: float


@dataclass(frozen=True, eq=False)
class PhotocurrentSpectra:
    """Normalized noise spectra of the detector currents.

    n1 or n2 is None when the corresponding mean current vanishes (the
    normalization divides by it); access through channel() to get the
    explicit error instead of an attribute surprise.
    """

    omega: np.ndarray
    n1: np.ndarray | None
    n2: np.ndarray | None
    n_minus: np.ndarray
    n_plus: np.ndarray
    setting: PolarimeterSetting
    mode: str

    def channel(self, name: str) -> np.ndarray:
        value = getattr(self, name)
        if value is None:
            raise DivisionByZeroMean(
                f"channel {name} undefined: its mean photocurrent is zero at "
                f"phi = {math.degrees(self.setting.phi):g} deg"
            )
        return value


@dataclass(frozen=True, eq=False)
class CorrelationSpectrum:
    """A normalized correlation spectrum with its undefined points.

    values holds NaN at undefined_indices (denominator zero or of the
    wrong sign under the square root at isolated grid points).
    """

    omega: np.ndarray
    values: np.ndarray
    undefined_indices: np.ndarray


@dataclass(frozen=True)
class TriangleReport:
    """Pairwise deviations between three routes to the same spectrum."""

    quadrature_vs_stokes: float
    quadrature_vs_detector: float
    stokes_vs_detector: float

    def worst(self) -> float:
        return max(
            self.quadrature_vs_stokes, self.quadrature_vs_detector, self.stokes_vs_detector
        )


def _weights(setting: PolarimeterSetting):
    c, s = math.cos(setting.phi), math.sin(setting.phi)
    return c * c, s * s, math.cos(2.0 * setting.phi), math.sin(2.0 * setting.phi)


def mean_photocurrents(
    params: LaserParams, op: OperatingPoint | None = None, setting: PolarimeterSetting | None = None
) -> MeanPhotocurrents:
    """Mean detector currents for the x-polarized stationary state.

    The detected flux is set by the outcoupling rate kappa (not by the
    branch-specific kappa_x), with unit detector efficiency.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    if setting is None:
        setting = PRESETS["s1"]
    c2, s2, _, _ = _weights(setting)
    total = 2.0 * op.q2 * params.kappa
    i1 = total * c2
    i2 = total * s2
    return MeanPhotocurrents(i1=i1, i2=i2, i_plus=total, i_minus=i1 - i2)


def classical_stokes_from_measurements(
    i_00: float, i_90: float, i_45: float, i_45_circ: float, kappa: float
) -> tuple:
    """Invert four analyzer measurements into mean Stokes parameters.

    The four inputs are mean currents of a single detector behind a
    linear analyzer at 0, 90 and 45 degrees and behind a circular
    analyzer, each equal to kappa/2 times (S0 + projected component).
    """
    s0 = (i_00 + i_90) / kappa
    s1 = (i_00 - i_90) / kappa
    s2 = 2.0 * i_45 / kappa - s0
    s3 = 2.0 * i_45_circ / kappa - s0
    return (s0, s1, s2, s3)


def x_theta_spectrum(spectra: SpectrumSet, theta: float) -> np.ndarray:
    """Noise spectrum of the orthogonal-mode quadrature at angle theta."""
    ct, st = math.cos(theta), math.sin(theta)
    return ct * ct * spectra.sxy + 2.0 * st * ct * spectra.cxy + st * st * spectra.syy


def _resolve_spectra(params, op, grid, mode, spectra):
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)
    if spectra is None:
        spectra = quadrature_spectra(params, op, grid, mode)
    return op, spectra


def photocurrent_noise_spectra(
    params: LaserParams,
    setting: PolarimeterSetting,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
    spectra: SpectrumSet | None = None,
) -> PhotocurrentSpectra:
    """Shot-noise-normalized spectra of the two detector currents.

    Returns the individual-detector spectra n1 and n2 (None for a
    detector with zero mean current), the difference-current spectrum
    n_minus and the sum-current spectrum n_plus. All are of the form
    1 + 8*kappa*(projection of sxx and X_theta^2).
    """
    op, spectra = _resolve_spectra(params, op, grid, mode, spectra)
    c2, s2, c2p, s2p = _weights(setting)
    k8 = 8.0 * params.kappa
    xtt = x_theta_spectrum(spectra, setting.theta)
    sxx = spectra.sxx

    means = mean_photocurrents(params, op, setting)
    rel = DEGENERATE_TOL * means.i_plus
    n1 = 1.0 + k8 * (c2 * sxx + s2 * xtt) if means.i1 > rel else None
    n2 = 1.0 + k8 * (s2 * sxx + c2 * xtt) if means.i2 > rel else None
    n_minus = 1.0 + k8 * (c2p * c2p * sxx + s2p * s2p * xtt)
    n_plus = 1.0 + k8 * sxx
    return PhotocurrentSpectra(
        omega=spectra.omega,
        n1=n1,
        n2=n2,
        n_minus=n_minus,
        n_plus=n_plus,
        setting=setting,
        mode=spectra.mode,
    )


def stokes_noise_measurement(
    params: LaserParams,
    setting: PolarimeterSetting,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
) -> np.ndarray:
    """Difference-current noise spectrum computed through Stokes spectra.

    Evaluates 1 + (kappa/Q^2) times the projected Stokes fluctuation
    spectrum and verifies it against the photocurrent-route n_minus to
    TRIANGLE_TOL before returning it. Both routes are kept alive on
    purpose; the agreement is an identity of the model, not of the
    code.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)
    st = stokes_spectra(params, op, grid, mode)
    _, _, c2p, s2p = _weights(setting)
    ct, stv = math.cos(setting.theta), math.sin(setting.theta)
    projected = c2p * c2p * st.s1 + s2p * s2p * (
        ct * ct * st.s2 + 2.0 * ct * stv * st.cross_23 + stv * stv * st.s3
    )
    via_stokes = 1.0 + (params.kappa / op.q2) * projected

    check = photocurrent_noise_spectra(
        params, setting, op, FrequencyGrid(st.omega) if grid is None else grid, mode
    )
    dev = float(np.max(np.abs(via_stokes - check.n_minus)))
    scale = max(1.0, float(np.max(np.abs(check.n_minus))))
    if dev > TRIANGLE_TOL * scale:
        raise ArithmeticError(
            f"Stokes route and photocurrent route disagree: max deviation {dev:g}"
        )
    return via_stokes


def consistency_triangle(
    params: LaserParams,
    setting: PolarimeterSetting,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
) -> TriangleReport:
    """Close the three-route triangle for the difference-current spectrum.

    Route 1 projects the quadrature spectra (n_minus), route 2 projects
    the Stokes spectra, route 3 reassembles the difference spectrum
    from the individual detector spectra and their cross-correlation:
    n_minus = (i1*n1 + i2*n2 - 2*sqrt(i1*i2*n1*n2)*C12) / i_plus.
    Requires a non-degenerate split so route 3 exists.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    pc = photocurrent_noise_spectra(params, setting, op, grid, mode)
    if pc.n1 is None or pc.n2 is None:
        raise DegenerateSplit("triangle needs both detectors illuminated")
    via_quadrature = pc.n_minus
    via_stokes = stokes_noise_measurement(params, setting, op, grid, mode)

    c12 = c12_spectrum(params, setting, op, grid, mode)
    means = mean_photocurrents(params, op, setting)
    cross = np.sqrt(means.i1 * means.i2 * pc.n1 * pc.n2) * c12.values
    via_detector = (means.i1 * pc.n1 + means.i2 * pc.n2 - 2.0 * cross) / means.i_plus

    def dev(a, b):
        return float(np.max(np.abs(a - b)))

    return TriangleReport(
        quadrature_vs_stokes=dev(via_quadrature, via_stokes),
        quadrature_vs_detector=dev(via_quadrature, via_detector),
        stokes_vs_detector=dev(via_stokes, via_detector),
    )


def c12_spectrum(
    params: LaserParams,
    setting: PolarimeterSetting,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
    spectra: SpectrumSet | None = None,
) -> CorrelationSpectrum:
    """Normalized cross-correlation spectrum of the two detector currents.

    C12 = 8*kappa*cos(phi)*sin(phi)*(sxx - X_theta^2) / sqrt(n1*n2).
    Raises DegenerateSplit when one detector is dark. Grid points where
    n1*n2 <= 0 (possible only for unphysical inputs) come back NaN and
    are listed in undefined_indices.
    """
    op, spectra = _resolve_spectra(params, op, grid, mode, spectra)
    c, s = math.cos(setting.phi), math.sin(setting.phi)
    if min(c * c, s * s) < DEGENERATE_TOL:
        raise DegenerateSplit(
            f"phi = {math.degrees(setting.phi):g} deg sends all light to one detector"
        )
    pc = photocurrent_noise_spectra(params, setting, op, None, mode, spectra)
    numer = 8.0 * params.kappa * c * s * (spectra.sxx - x_theta_spectrum(spectra, setting.theta))
    prod = pc.n1 * pc.n2
    bad = np.flatnonzero(prod <= 0.0)
    values = np.full_like(prod, np.nan)
    ok = prod > 0.0
    values[ok] = numer[ok] / np.sqrt(prod[ok])
    if bad.size == values.size:
        raise ZeroDenominator("C12 denominator vanishes on the entire grid")
    return CorrelationSpectrum(omega=spectra.omega, values=values, undefined_indices=bad)


def c23_spectrum(
    params: LaserParams,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
    spectra: SpectrumSet | None = None,
) -> CorrelationSpectrum:
    """Normalized cross-correlation spectrum of S2 and S3 fluctuations.

    C23 = cxy / sqrt(sxy*syy). Isolated grid points with a
    non-positive product under the root come back NaN and are listed;
    a denominator dead on the whole grid raises ZeroDenominator.
    """
    op, spectra = _resolve_spectra(params, op, grid, mode, spectra)
    prod = spectra.sxy * spectra.syy
    bad = np.flatnonzero(prod <= 0.0)
    values = np.full_like(prod, np.nan)
    ok = prod > 0.0
    values[ok] = spectra.cxy[ok] / np.sqrt(prod[ok])
    if bad.size == values.size:
        raise ZeroDenominator("C23 denominator vanishes on the entire grid")
    return CorrelationSpectrum(omega=spectra.omega, values=values, undefined_indices=bad)


def c23_reconstruction(
    params: LaserParams,
    op: OperatingPoint | None = None,
    grid: FrequencyGrid | None = None,
    mode: str = "canonical",
) -> CorrelationSpectrum:
    """C23 recovered from three difference-current measurements.

    Measures the normalized difference spectra at (45, 0), (45, 90) and
    (45, 45) degrees, converts each back to a Stokes fluctuation
    spectrum with the factor Q^2/kappa, and isolates the S2-S3 cross
    spectrum from the diagonal measurement:

        A = (Q^2/kappa) * (m1 - 1)          # S2 spectrum
        B = (Q^2/kappa) * (m2 - 1)          # S3 spectrum
        X = (Q^2/kappa) * (m3 - 1) - (A + B)/2   # cross spectrum
        C23 = X / sqrt(A * B)

    This is the measurement-side route to the same quantity as
    c23_spectrum and agrees with it to numerical rounding in either
    evaluation mode.
    """
    if op is None:
        op = derive_operating_point(params, Branch.X)
    require_lasing(params, op)
    if grid is None:
        grid = FrequencyGrid.default()
    m1 = stokes_noise_measurement(params, PRESETS["s2"], op, grid, mode)
    m2 = stokes_noise_measurement(params, PRESETS["s3"], op, grid, mode)
    m3 = stokes_noise_measurement(
        params, PolarimeterSetting.from_degrees(45.0, 45.0), op, grid, mode
    )
    scale = op.q2 / params.kappa
    a = scale * (m1 - 1.0)
    b = scale * (m2 - 1.0)
    x = scale * (m3 - 1.0) - 0.5 * (a + b)
    prod = a * b
    bad = np.flatnonzero(prod <= 0.0)
    values = np.full_like(prod, np.nan)
    ok = prod > 0.0
    values[ok] = x[ok] / np.sqrt(prod[ok])
    if bad.size == values.size:
        raise ZeroDenominator("reconstructed C23 denominator vanishes on the entire grid")
    return CorrelationSpectrum(omega=grid.omega, values=values, undefined_indices=bad)
