"""Command-line interface.

Subcommands cover the full pipeline: stationary analysis, spectra,
virtual-polarimeter outputs, cross-correlations, time-domain
simulation, closed-form-versus-oracle verification, and figure
presets. Exit codes: 0 success, 1 configuration error, 2 failed
physical precondition (below threshold or diverged trajectory),
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields, replace

import numpy as np

from .dynamics import Diverged, simulate_semiclassical, steady_state_vector
from .figures import FIGURE_NAMES, render_figure
from .oracle import build_linear_model, compare, oracle_spectra
from .params import DEFAULT_PARAMS, BelowThreshold, Branch, LaserParams, derive_operating_point
from .polarimeter import (
    PolarimeterSetting,
    c12_spectrum,
    c23_spectrum,
    photocurrent_noise_spectra,
)
from .spectra import MODES, FrequencyGrid, quadrature_spectra
from .steady_state import relaxation_frequencies, stability_report
from .tables import fmt, render_table, columns_to_rows

_PARAM_KEYS = tuple(f.name for f in fields(LaserParams))

# Non-laser configuration keys and their defaults.
_EXTRA_DEFAULTS = {
    "phi_deg": 45.0,
    "theta_deg": 0.0,
    "duration": 10.0,
    "step": 1e-4,
    "perturb": 1.0,
    "record_every": 1,
}

VERIFY_REL_TOL = 1e-9
VERIFY_ABS_FLOOR = 1e-15


class ConfigError(ValueError):
    pass


def _parse_assignments(pairs) -> dict:
    """Parse key=value strings into a typed configuration dict."""
    out = {}
    for raw in pairs:
        if "=" not in raw:
            raise ConfigError(f"expected key=value, got {raw!r}")
        key, value = raw.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key not in _PARAM_KEYS and key not in _EXTRA_DEFAULTS:
            raise ConfigError(f"unknown configuration key {key!r}")
        try:
            out[key] = int(value) if key == "record_every" else float(value)
        except ValueError:
            raise ConfigError(f"invalid numeric value for {key}: {value!r}") from None
    return out


def _read_config(path) -> dict:
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    pairs = []
    for i, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{i}: expected key=value, got {stripped!r}")
        pairs.append(stripped)
    return _parse_assignments(pairs)


def _build_config(args) -> tuple[LaserParams, dict]:
    config = dict(_EXTRA_DEFAULTS)
    if args.config:
        config.update(_read_config(args.config))
    if args.set:
        config.update(_parse_assignments(args.set))
    overrides = {k: v for k, v in config.items() if k in _PARAM_KEYS}
    extra = {k: v for k, v in config.items() if k in _EXTRA_DEFAULTS}
    params = replace(DEFAULT_PARAMS, **overrides)
    return params, extra


def _emit(args, header, rows) -> None:
    text = render_table(header, rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_steady(args, params, extra) -> int:
    op = derive_operating_point(params, Branch.X)
    if params.r <= 1:
        print(f"error: r = {fmt(params.r)} <= 1, no lasing solution", file=sys.stderr)
        return 2
    report = stability_report(params, op)
    omega_1, omega_2 = relaxation_frequencies(params, op)
    lines = [
        f"branch={op.branch.value}",
        f"kappa_x={fmt(op.kappa_x)}",
        f"kappa_y={fmt(op.kappa_y)}",
        f"q={fmt(op.q)}",
        f"q2={fmt(op.q2)}",
        f"d_big0={fmt(op.d_big0)}",
        f"d_small0={fmt(op.d_small0)}",
        f"delta={fmt(op.delta)}",
        f"r_th={fmt(op.r_th)}",
        f"c_sat={fmt(op.c_sat)}",
        f"gamma_big={fmt(op.gamma_big)}",
        f"gamma_big_s={fmt(op.gamma_big_s)}",
        f"verdict={report.verdict}",
        f"max_real_part={fmt(report.max_real_part)}",
        "omega_1=" + (fmt(omega_1) if omega_1 is not None else "none"),
        "omega_2=" + (fmt(omega_2) if omega_2 is not None else "none"),
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_spectra(args, params, extra) -> int:
    spectra = quadrature_spectra(params, mode=args.mode)
    _emit(
        args,
        ["omega_ghz", "sxx", "sxy", "syy", "cxy"],
        columns_to_rows(
            spectra.omega.tolist(),
            spectra.sxx.tolist(),
            spectra.sxy.tolist(),
            spectra.syy.tolist(),
            spectra.cxy.tolist(),
        ),
    )
    return 0


def _cmd_polarimeter(args, params, extra) -> int:
    setting = PolarimeterSetting.from_degrees(extra["phi_deg"], extra["theta_deg"])
    pc = photocurrent_noise_spectra(params, setting, mode=args.mode)
    header = ["omega_ghz"]
    cols = [pc.omega.tolist()]
    # a detector with zero mean current has no normalized spectrum;
    # only defined channels are reported
    for name in ("n1", "n2", "n_minus", "n_plus"):
        values = getattr(pc, name)
        if values is not None:
            header.append(name)
            cols.append(values.tolist())
    _emit(args, header, columns_to_rows(*cols))
    return 0


def _cmd_c12(args, params, extra) -> int:
    setting = PolarimeterSetting.from_degrees(extra["phi_deg"], extra["theta_deg"])
    spec = c12_spectrum(params, setting, mode=args.mode)
    _emit(
        args,
        ["omega_ghz", "c12"],
        columns_to_rows(spec.omega.tolist(), spec.values.tolist()),
    )
    return 0


def _cmd_c23(args, params, extra) -> int:
    spec = c23_spectrum(params, mode=args.mode)
    _emit(
        args,
        ["omega_ghz", "c23"],
        columns_to_rows(spec.omega.tolist(), spec.values.tolist()),
    )
    return 0


def _cmd_simulate(args, params, extra) -> int:
    start = steady_state_vector(params)
    if extra["perturb"] != 1.0:
        start = replace(start, a_plus=start.a_plus * extra["perturb"])
    traj = simulate_semiclassical(
        params,
        initial=start,
        duration=extra["duration"],
        step=extra["step"],
        record_every=int(extra["record_every"]),
    )
    if args.out:
        traj.to_csv(args.out)
    else:
        sys.stdout.write(
            render_table(
                ["t", "re_a_plus", "im_a_plus", "re_a_minus", "im_a_minus", "D", "d"],
                columns_to_rows(
                    traj.t.tolist(),
                    traj.a_plus.real.tolist(),
                    traj.a_plus.imag.tolist(),
                    traj.a_minus.real.tolist(),
                    traj.a_minus.imag.tolist(),
                    traj.d_big.tolist(),
                    traj.d_small.tolist(),
                ),
            )
        )
    return 0


def _cmd_verify(args, params, extra) -> int:
    grid = FrequencyGrid.default()
    model = build_linear_model(params)
    oracle = oracle_spectra(model, grid)
    canonical = compare(
        quadrature_spectra(params, grid=grid, mode="canonical"),
        oracle,
        rel_tol=VERIFY_REL_TOL,
        abs_floor=VERIFY_ABS_FLOOR,
    )
    printed = compare(
        quadrature_spectra(params, grid=grid, mode="as_printed"),
        oracle,
        rel_tol=VERIFY_REL_TOL,
        abs_floor=VERIFY_ABS_FLOOR,
    )

    rows = list(canonical.rows())
    for omega, channel, closed, oracle_v, resid in printed.rows():
        rows.append((omega, channel + "_as_printed", closed, oracle_v, resid))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(
                render_table(["omega_ghz", "channel", "closed", "oracle", "rel_residual"], rows)
            )

    for name in ("sxx", "sxy", "syy", "cxy"):
        print(f"{name}: max_rel_residual={fmt(canonical.max_residuals[name])}")
        print(f"{name}_as_printed: max_rel_residual={fmt(printed.max_residuals[name])}")
    print(f"oracle_hermiticity_defect={fmt(oracle.hermiticity_defect)}")
    print(f"oracle_resolvent_residual={fmt(oracle.resolvent_residual)}")
    if not canonical.passed:
        print(
            f"verification FAILED: {canonical.worst_channel} residual "
            f"{fmt(canonical.worst_residual)} exceeds {fmt(VERIFY_REL_TOL)}",
            file=sys.stderr,
        )
        return 3
    print("verification passed")
    return 0


def _cmd_figure(args, params, extra) -> int:
    out_dir = args.out if args.out else "."
    paths = render_figure(args.name, out_dir, params=params, mode=args.mode)
    for path in paths:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="polnoise",
        description="Polarization quantum-noise spectra of a spin-flip laser model",
    )
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override one configuration key (repeatable)",
    )
    parser.add_argument("--mode", choices=MODES, default="canonical", help="closed-form variant")
    parser.add_argument("--out", help="output file (or directory for figures)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady", help="stationary solution, stability, resonances")
    sub.add_parser("spectra", help="quadrature noise spectra table")
    sub.add_parser("polarimeter", help="normalized photocurrent noise spectra")
    sub.add_parser("c12", help="detector cross-correlation spectrum")
    sub.add_parser("c23", help="S2-S3 cross-correlation spectrum")
    sub.add_parser("simulate", help="nonlinear trajectory")
    sub.add_parser("verify", help="closed forms against the matrix oracle")
    fig = sub.add_parser("figure", help="render a figure preset with its table")
    fig.add_argument("name", choices=FIGURE_NAMES)

    args = parser.parse_args(argv)

    try:
        params, extra = _build_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    handlers = {
        "steady": _cmd_steady,
        "spectra": _cmd_spectra,
        "polarimeter": _cmd_polarimeter,
        "c12": _cmd_c12,
        "c23": _cmd_c23,
        "simulate": _cmd_simulate,
        "verify": _cmd_verify,
        "figure": _cmd_figure,
    }
    try:
        return handlers[args.command](args, params, extra)
    except BelowThreshold as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Diverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
