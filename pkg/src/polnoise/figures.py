"""Figure presets: rendered plots with their underlying tables.

Every preset writes a PNG and a CSV side by side, so the delimited data
behind each curve stays available for downstream processing. Rendering
is headless (Agg) and deterministic.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .params import DEFAULT_PARAMS, LaserParams
from .polarimeter import (
    PRESETS,
    PolarimeterSetting,
    c12_spectrum,
    c23_spectrum,
    stokes_noise_measurement,
)
from .spectra import FrequencyGrid
from .tables import columns_to_rows, write_table

# Dichroism values of the three-panel comparison presets.
KAPPA_A_SWEEP = (0.0, 10.0, 50.0)

_C12_SETTING = PolarimeterSetting.from_degrees(45.0, 0.0)


def _stokes_noise_rows(params: LaserParams, grid: FrequencyGrid, mode: str):
    s1 = stokes_noise_measurement(params, PRESETS["s1"], grid=grid, mode=mode)
    s2 = stokes_noise_measurement(params, PRESETS["s2"], grid=grid, mode=mode)
    s3 = stokes_noise_measurement(params, PRESETS["s3"], grid=grid, mode=mode)
    return s1, s2, s3


def _fig_stokes(params: LaserParams, kappa_a: float, stem: str, out_dir: Path, mode: str):
    params = replace(params, kappa_a=kappa_a)
    grid = FrequencyGrid.default()
    s1, s2, s3 = _stokes_noise_rows(params, grid, mode)
    w = grid.omega

    csv_path = out_dir / f"{stem}.csv"
    write_table(
        csv_path,
        ["omega_ghz", "s1_norm", "s2_norm", "s3_norm"],
        columns_to_rows(w.tolist(), s1.tolist(), s2.tolist(), s3.tolist()),
    )

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(w[1:], s1[1:], label="S1 noise")
    ax.plot(w[1:], s2[1:], label="S2 noise")
    ax.plot(w[1:], s3[1:], label="S3 noise")
    ax.axhline(1.0, color="0.5", lw=0.8, ls="--", label="shot noise")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("normalized noise power")
    ax.set_title(f"Stokes-parameter noise, kappa_a = {kappa_a:g} GHz")
    ax.legend()
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _fig_c12_pump(params: LaserParams, stem: str, out_dir: Path, mode: str):
    grid = FrequencyGrid.default()
    w = grid.omega
    main = c12_spectrum(params, _C12_SETTING, grid=grid, mode=mode).values
    by_p = {
        p: c12_spectrum(replace(params, p=p), _C12_SETTING, grid=grid, mode=mode).values
        for p in (0.0, 0.5, 1.0)
    }

    csv_path = out_dir / f"{stem}.csv"
    write_table(
        csv_path,
        ["omega_ghz", "c12", "c12_p0", "c12_p0_5", "c12_p1"],
        columns_to_rows(
            w.tolist(), main.tolist(), by_p[0.0].tolist(), by_p[0.5].tolist(), by_p[1.0].tolist()
        ),
    )

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(w[1:], main[1:], label="C12")
    ax.axhline(0.0, color="0.5", lw=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("C12")
    ax.set_title("Detector cross-correlation spectrum")
    inset = ax.inset_axes([0.55, 0.12, 0.4, 0.35])
    for p, vals in by_p.items():
        inset.plot(w[1:], vals[1:], label=f"p = {p:g}")
    inset.set_xscale("log")
    inset.set_xlim(0.01, 10.0)
    inset.tick_params(labelsize=7)
    inset.legend(fontsize=6)
    ax.legend(loc="upper left")
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _fig_kappa_sweep(params: LaserParams, stem: str, out_dir: Path, mode: str, which: str):
    grid = FrequencyGrid.default()
    w = grid.omega
    curves = {}
    for ka in KAPPA_A_SWEEP:
        pk = replace(params, kappa_a=ka)
        if which == "c12":
            curves[ka] = c12_spectrum(pk, _C12_SETTING, grid=grid, mode=mode).values
        else:
            curves[ka] = c23_spectrum(pk, grid=grid, mode=mode).values

    csv_path = out_dir / f"{stem}.csv"
    labels = [f"{which}_ka{int(ka)}" for ka in KAPPA_A_SWEEP]
    write_table(
        csv_path,
        ["omega_ghz"] + labels,
        columns_to_rows(w.tolist(), *[curves[ka].tolist() for ka in KAPPA_A_SWEEP]),
    )

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for ka in KAPPA_A_SWEEP:
        ax.plot(w[1:], curves[ka][1:], label=f"kappa_a = {ka:g} GHz")
    ax.axhline(0.0, color="0.5", lw=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel(which.upper())
    title = "Detector cross-correlation" if which == "c12" else "S2-S3 cross-correlation"
    ax.set_title(f"{title} vs dichroism")
    ax.legend()
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


FIGURE_NAMES = ("4a", "4b", "4c", "5a", "5b", "6")


def render_figure(
    name: str,
    out_dir,
    params: LaserParams | None = None,
    mode: str = "canonical",
) -> list[Path]:
    """Render one figure preset; returns the written file paths.

    Presets 4a/4b/4c are the Stokes noise spectra at dichroism 0/10/50,
    5a the detector cross-correlation with a pump-statistics inset,
    5b and 6 the dichroism sweeps of C12 and C23.
    """
    if params is None:
        params = DEFAULT_PARAMS
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if name == "4a":
        return _fig_stokes(params, 0.0, "fig4a", out_dir, mode)
    if name == "4b":
        return _fig_stokes(params, 10.0, "fig4b", out_dir, mode)
    if name == "4c":
        return _fig_stokes(params, 50.0, "fig4c", out_dir, mode)
    if name == "5a":
        return _fig_c12_pump(params, "fig5a", out_dir, mode)
    if name == "5b":
        return _fig_kappa_sweep(params, "fig5b", out_dir, mode, "c12")
    if name == "6":
        return _fig_kappa_sweep(params, "fig6", out_dir, mode, "c23")
    raise ValueError(f"unknown figure {name!r}; choose from {FIGURE_NAMES}")
