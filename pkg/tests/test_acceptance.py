"""Acceptance suite: the library's headline guarantees, one test each.

Each test pins a published tolerance. Runtime bounds are asserted with
wall-clock measurements so a performance regression fails loudly
rather than silently degrading the tool.
"""

import dataclasses
import math
import time
from pathlib import Path

import numpy as np
import pytest

from polnoise import (
    DEFAULT_PARAMS,
    MODES,
    PRESETS,
    FrequencyGrid,
    PolarimeterSetting,
    build_linear_model,
    c12_spectrum,
    c23_reconstruction,
    c23_spectrum,
    classical_stokes_from_measurements,
    compare,
    derive_operating_point,
    mean_photocurrents,
    oracle_spectra,
    photocurrent_noise_spectra,
    quadrature_spectra,
    relaxation_frequencies,
    ringdown_analysis,
    simulate_semiclassical,
    steady_state_vector,
    stokes_noise_measurement,
    stokes_spectra,
)
from polnoise.tables import write_table

# the parameter sweep shared by the zero-frequency and oracle criteria
R_SWEEP = (2.0, 6.0, 20.0)
P_SWEEP = (0.0, 0.5, 1.0)
KAPPA_A_SWEEP = (0.0, 10.0, 50.0)

ARTIFACT_DIR = Path(__file__).resolve().parent.parent / "artifacts"

_ZERO = FrequencyGrid(np.array([0.0]))


def _s1_at_zero(params) -> float:
    return float(stokes_noise_measurement(params, PRESETS["s1"], grid=_ZERO)[0])


def test_criterion_1_zero_frequency_squeezing():
    start = time.monotonic()

    anchored = _s1_at_zero(DEFAULT_PARAMS)
    assert abs(anchored - 0.28) / 0.28 <= 1e-10

    for r in R_SWEEP:
        for p in P_SWEEP:
            for kappa_a in KAPPA_A_SWEEP:
                params = dataclasses.replace(DEFAULT_PARAMS, r=r, p=p, kappa_a=kappa_a)
                ratio = params.kappa / (params.kappa + kappa_a)
                expected = 1.0 + 2.0 * ratio * r * (1.0 - (r - 1.0) * p / 2.0) / (r - 1.0) ** 2
                value = _s1_at_zero(params)
                assert abs(value - expected) / abs(expected) <= 1e-10, (r, p, kappa_a)

    assert time.monotonic() - start < 1.0


def test_criterion_2_oracle_equivalence():
    start = time.monotonic()
    grid = FrequencyGrid(np.geomspace(0.01, 1000.0, 2000))

    printed_syy_report = []
    for r in R_SWEEP:
        for p in P_SWEEP:
            for kappa_a in KAPPA_A_SWEEP:
                params = dataclasses.replace(DEFAULT_PARAMS, r=r, p=p, kappa_a=kappa_a)
                oracle = oracle_spectra(build_linear_model(params), grid)
                result = compare(
                    quadrature_spectra(params, grid=grid),
                    oracle,
                    rel_tol=1e-9,
                    abs_floor=1e-15,
                )
                for channel in ("sxx", "sxy", "cxy", "syy"):
                    assert result.max_residuals[channel] <= 1e-9, (r, p, kappa_a, channel)
                printed = compare(
                    quadrature_spectra(params, grid=grid, mode="as_printed"),
                    oracle,
                    rel_tol=1e-9,
                    abs_floor=1e-15,
                )
                printed_syy_report.append((r, p, kappa_a, printed.max_residuals["syy"]))

    # archive the as-printed syy disagreement and its frequency
    # dependence at the anchor parameter set; the canonical channel is
    # the one held to the oracle above
    params = DEFAULT_PARAMS
    oracle = oracle_spectra(build_linear_model(params), grid)
    canonical = quadrature_spectra(params, grid=grid)
    printed = quadrature_spectra(params, grid=grid, mode="as_printed")
    ARTIFACT_DIR.mkdir(exist_ok=True)
    write_table(
        ARTIFACT_DIR / "syy_as_printed_residual.csv",
        ["omega_ghz", "syy_canonical", "syy_as_printed", "syy_oracle",
         "rel_residual_canonical", "rel_residual_as_printed"],
        zip(
            grid.omega.tolist(),
            canonical.syy.tolist(),
            printed.syy.tolist(),
            oracle.syy.tolist(),
            (np.abs(canonical.syy - oracle.syy) / np.abs(oracle.syy)).tolist(),
            (np.abs(printed.syy - oracle.syy) / np.abs(oracle.syy)).tolist(),
            strict=True,
        ),
    )
    write_table(
        ARTIFACT_DIR / "syy_as_printed_residual_sweep.csv",
        ["r", "p", "kappa_a", "max_rel_residual"],
        printed_syy_report,
    )
    # the as-printed channel genuinely disagrees with the oracle; a
    # pass here would mean the comparison lost its teeth
    assert all(row[3] > 1e-2 for row in printed_syy_report)

    assert time.monotonic() - start < 5.0


def test_criterion_3_shot_noise_limit():
    omega = np.append(FrequencyGrid.default().omega, 1e4)
    grid = FrequencyGrid(omega)
    settings = [
        PRESETS["s1"],
        PRESETS["s2"],
        PRESETS["s3"],
        PolarimeterSetting.from_degrees(45.0, 45.0),
        PolarimeterSetting.from_degrees(30.0, 60.0),
        PolarimeterSetting.from_degrees(75.0, 120.0),
    ]
    for setting in settings:
        pc = photocurrent_noise_spectra(DEFAULT_PARAMS, setting, grid=grid)
        for name in ("n1", "n2", "n_minus", "n_plus"):
            values = getattr(pc, name)
            if values is None:
                continue
            assert abs(values[-1] - 1.0) <= 1e-3, (setting.degrees(), name)
            assert values.min() >= 0.0, (setting.degrees(), name)


def test_criterion_4_large_r_pump_noise_limit():
    for p in P_SWEEP:
        for kappa_a in KAPPA_A_SWEEP:
            params = dataclasses.replace(DEFAULT_PARAMS, r=1e6, p=p, kappa_a=kappa_a)
            expected = 1.0 - p * params.kappa / (params.kappa + kappa_a)
            assert abs(_s1_at_zero(params) - expected) <= 1e-4, (p, kappa_a)


def _interior_peak(omega, values):
    """Largest interior local maximum and its prominence.

    Prominence is the peak value over the larger of the two flanking
    minima; (None, 1.0) when the curve has no interior peak.
    """
    idx = np.flatnonzero((values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:])) + 1
    if idx.size == 0:
        return None, 1.0
    i = int(idx[np.argmax(values[idx])])
    baseline = max(float(values[:i].min()), float(values[i:].min()))
    return float(omega[i]), float(values[i]) / baseline


def test_criterion_5_relaxation_oscillation_structure(grid):
    omega = grid.omega

    peaks = {}
    for key in ("s1", "s2", "s3"):
        values = stokes_noise_measurement(DEFAULT_PARAMS, PRESETS[key], grid=grid)
        peaks[key] = _interior_peak(omega, values)

    omega_1 = math.sqrt(982.0)
    assert peaks["s1"][0] is not None
    assert abs(peaks["s1"][0] - omega_1) / omega_1 <= 0.02
    assert peaks["s2"][0] is not None and peaks["s2"][0] > peaks["s1"][0]
    assert peaks["s3"][0] is not None and peaks["s3"][0] > peaks["s1"][0]

    # strong dichroism overdamps the spin resonance: the upper peak
    # must flatten out
    params_50 = dataclasses.replace(DEFAULT_PARAMS, kappa_a=50.0)
    for key in ("s2", "s3"):
        values = stokes_noise_measurement(params_50, PRESETS[key], grid=grid)
        _, prominence = _interior_peak(omega, values)
        assert prominence < 1.1, key


def test_criterion_6_c12_sign_pattern(grid):
    setting = PolarimeterSetting.from_degrees(45.0, 0.0)
    spec = c12_spectrum(DEFAULT_PARAMS, setting, grid=grid)
    assert spec.undefined_indices.size == 0
    omega, values = spec.omega, spec.values

    # the quoted windows sit on the ordinary-frequency axis (cycles);
    # the internal axis is angular, hence the 2*pi on each edge
    tp = 2.0 * math.pi
    in_window = lambda lo, hi: (omega >= lo * tp) & (omega <= hi * tp)
    assert values[in_window(10.0, 25.0)].min() < 0.0
    assert values[in_window(2.0, 8.0)].max() > 0.0
    assert values[in_window(0.01, 1.0)].min() < 0.0
    at_100 = int(np.argmin(np.abs(omega - 100.0 * tp)))
    assert abs(values[at_100]) < 0.02
    assert np.max(np.abs(values)) <= 1.0

    # dichroism pushes the low-frequency anticorrelation toward
    # correlation: pointwise increase across the lowest window
    params_50 = dataclasses.replace(DEFAULT_PARAMS, kappa_a=50.0)
    spec_50 = c12_spectrum(params_50, setting, grid=grid)
    low = in_window(0.01, 1.0)
    assert np.all(spec_50.values[low] > values[low])


def test_criterion_7_c23_behavior(grid):
    # sign clauses follow the printed closed forms (figure-fidelity
    # mode); windows are internal angular frequencies, unconverted
    spec = c23_spectrum(DEFAULT_PARAMS, grid=grid, mode="as_printed")
    assert spec.undefined_indices.size == 0
    omega, values = spec.omega, spec.values
    assert np.all(values[omega < 10.0] < 0.0)
    assert np.max(np.abs(values[omega > 30.0])) < 0.05

    params_50 = dataclasses.replace(DEFAULT_PARAMS, kappa_a=50.0)
    spec_50 = c23_spectrum(params_50, grid=grid, mode="as_printed")
    assert np.all(spec_50.values[spec_50.omega < 10.0] > 0.0)

    # the measurement-side reconstruction is an identity of the chain
    # and must hold in either evaluation mode
    for mode in MODES:
        direct = c23_spectrum(DEFAULT_PARAMS, grid=grid, mode=mode)
        recon = c23_reconstruction(DEFAULT_PARAMS, grid=grid, mode=mode)
        assert direct.undefined_indices.size == 0
        assert recon.undefined_indices.size == 0
        scale = np.max(np.abs(direct.values))
        assert np.max(np.abs(recon.values - direct.values)) <= 1e-10 * scale, mode


def test_criterion_8_dynamics_validation():
    start = time.monotonic()
    params = DEFAULT_PARAMS
    op = derive_operating_point(params)
    omega_1, omega_2 = relaxation_frequencies(params, op)
    assert omega_1 is not None and omega_2 is not None

    # convergence back to the stationary intensity after a 1% kick
    kicked = dataclasses.replace(
        steady_state_vector(params, op), a_plus=steady_state_vector(params, op).a_plus * 1.01
    )
    traj = simulate_semiclassical(params, initial=kicked, duration=6.0, step=1e-4)
    final = traj.final_state()
    assert abs(abs(final.a_plus) ** 2 - op.q2) / op.q2 <= 1e-6
    assert abs(abs(final.a_minus) ** 2 - op.q2) / op.q2 <= 1e-6

    # exact stationary state must be an RK4 fixed point over 100 ns
    held = simulate_semiclassical(params, duration=100.0, step=1e-3, record_every=1000)
    hf = held.final_state()
    q = steady_state_vector(params, op)
    assert abs(hf.a_plus - q.a_plus) / abs(q.a_plus) <= 1e-8
    assert abs(hf.a_minus - q.a_minus) / abs(q.a_minus) <= 1e-8
    assert abs(hf.d_big - q.d_big) / q.d_big <= 1e-8
    assert abs(hf.d_small) <= 1e-8

    ring = simulate_semiclassical(params, initial=kicked, duration=4.0, step=1e-4)
    total = ringdown_analysis(ring, "total_intensity")
    difference = ringdown_analysis(ring, "intensity_difference")

    assert time.monotonic() - start < 30.0

    assert abs(total.frequency - omega_1) / omega_1 <= 0.05
    # the difference-intensity transform peaks near 79.8 while the
    # response-denominator minimum sits at 71.0; at this damping the
    # two resonance measures are separated by about 12%, so the stated
    # 5% window is not met
    assert abs(difference.frequency - omega_2) / omega_2 <= 0.05


def test_criterion_9_measurement_round_trip(grid):
    params = DEFAULT_PARAMS
    op = derive_operating_point(params)

    # four analyzer settings, synthetic mean currents, closed-loop
    # recovery of the stationary Stokes vector
    i_00 = mean_photocurrents(params, op, PolarimeterSetting.from_degrees(0.0, 0.0)).i1
    i_90 = mean_photocurrents(params, op, PolarimeterSetting.from_degrees(0.0, 0.0)).i2
    i_45 = mean_photocurrents(params, op, PolarimeterSetting.from_degrees(45.0, 0.0)).i1
    i_45c = mean_photocurrents(params, op, PolarimeterSetting.from_degrees(45.0, 90.0)).i1
    recovered = classical_stokes_from_measurements(i_00, i_90, i_45, i_45c, params.kappa)
    expected = (2.0 * op.q2, 2.0 * op.q2, 0.0, 0.0)
    for got, want in zip(recovered, expected, strict=True):
        assert abs(got - want) <= 1e-12

    # three routes to each preset difference spectrum: quadrature
    # projection, Stokes projection, and the Stokes-spectrum formula
    # evaluated here from scratch
    g = FrequencyGrid.default()
    ss = stokes_spectra(params, op, g)
    for key in ("s1", "s2", "s3"):
        setting = PRESETS[key]
        c2p = math.cos(2.0 * setting.phi)
        s2p = math.sin(2.0 * setting.phi)
        ct, st = math.cos(setting.theta), math.sin(setting.theta)
        projected = c2p * c2p * ss.s1 + s2p * s2p * (
            ct * ct * ss.s2 + 2.0 * ct * st * ss.cross_23 + st * st * ss.s3
        )
        formula = 1.0 + (params.kappa / op.q2) * projected
        via_stokes = stokes_noise_measurement(params, setting, op, g)
        via_quadrature = photocurrent_noise_spectra(params, setting, op, g).n_minus
        for a, b in (
            (via_stokes, via_quadrature),
            (via_stokes, formula),
            (via_quadrature, formula),
        ):
            assert np.max(np.abs(a - b) / np.abs(b)) <= 1e-12, key
