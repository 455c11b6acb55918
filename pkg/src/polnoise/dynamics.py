"""Semiclassical nonlinear dynamics of the two circular field modes.

Integrates the coupled equations for the circularly polarized field
amplitudes a_plus, a_minus, the total inversion D and the spin
difference d with a fixed-step classical Runge-Kutta scheme. Fields
evolve in the reference frame rotating at the stationary emission
frequency of the x-polarized branch, where that solution is a true
equilibrium of the flow (and hence an exact fixed point of the
integrator, up to roundoff). Intensities and populations are identical
in the laboratory frame; only the overall optical phase differs.

The pump rate is set through the pump ratio, R = r * gamma * kappa_x / c,
so r = 1 is exactly threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Branch, LaserParams, OperatingPoint, derive_operating_point
from .tables import write_table, columns_to_rows

# Amplitude bound beyond which the integration is declared divergent.
DIVERGENCE_FACTOR = 1e12

# Leading fraction of every ringdown record discarded before analysis.
BURN_IN_FRACTION = 0.1

OBSERVABLES = ("total_intensity", "intensity_difference", "inversion", "spin")


class Diverged(ArithmeticError):
    """The trajectory left the physical region (amplitude overflow)."""


class NoOscillation(ValueError):
    """The analyzed observable has no oscillatory component."""


@dataclass(frozen=True)
class StateVector:
    """Instantaneous semiclassical state (rotating frame)."""

    a_plus: complex
    a_minus: complex
    d_big: float
    d_small: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-sampled semiclassical trajectory."""

    t: np.ndarray
    a_plus: np.ndarray
    a_minus: np.ndarray
    d_big: np.ndarray
    d_small: np.ndarray

    def observable(self, name: str) -> np.ndarray:
        """One of the real observables listed in OBSERVABLES."""
        if name == "total_intensity":
            return np.abs(self.a_plus) ** 2 + np.abs(self.a_minus) ** 2
        if name == "intensity_difference":
            return np.abs(self.a_plus) ** 2 - np.abs(self.a_minus) ** 2
        if name == "inversion":
            return self.d_big
        if name == "spin":
            return self.d_small
        raise ValueError(f"unknown observable {name!r}; choose from {OBSERVABLES}")

    def final_state(self) -> StateVector:
        return StateVector(
            a_plus=complex(self.a_plus[-1]),
            a_minus=complex(self.a_minus[-1]),
            d_big=float(self.d_big[-1]),
            d_small=float(self.d_small[-1]),
        )

    def to_csv(self, path) -> None:
        """Write t,re_a_plus,im_a_plus,re_a_minus,im_a_minus,D,d."""
        write_table(
            path,
            ["t", "re_a_plus", "im_a_plus", "re_a_minus", "im_a_minus", "D", "d"],
            columns_to_rows(
                [float(v) for v in self.t],
                [float(v) for v in self.a_plus.real],
                [float(v) for v in self.a_plus.imag],
                [float(v) for v in self.a_minus.real],
                [float(v) for v in self.a_minus.imag],
                [float(v) for v in self.d_big],
                [float(v) for v in self.d_small],
            ),
        )


@dataclass(frozen=True)
class RingdownResult:
    """Dominant oscillation of a relaxation transient."""

    frequency: float  # angular, same unit as the rates
    decay_rate: float
    peak_bin: int
    frequency_resolution: float


def steady_state_vector(params: LaserParams, op: OperatingPoint | None = None) -> StateVector:
    """The x-polarized stationary state as an integrator state."""
    if op is None:
        op = derive_operating_point(params, Branch.X)
    return StateVector(
        a_plus=complex(op.q), a_minus=complex(op.q), d_big=op.d_big0, d_small=op.d_small0
    )


def simulate_semiclassical(
    params: LaserParams,
    initial: StateVector | None = None,
    duration: float = 10.0,
    step: float = 1e-4,
    record_every: int = 1,
) -> Trajectory:
    """Integrate the nonlinear equations with fixed-step RK4.

    Parameters
    ----------
    params:
        Laser parameters; the pump rate follows from r.
    initial:
        Starting state, default the stationary state itself.
    duration, step:
        Total time and RK4 step, in the common inverse-rate unit.
    record_every:
        Keep every n-th step in the returned trajectory (the initial
        state is always kept).

    Raises
    ------
    Diverged
        If an amplitude exceeds 1e12 * sqrt(i_sat).
    """
    op = derive_operating_point(params, Branch.X)
    if initial is None:
        initial = steady_state_vector(params, op)
    if step <= 0 or duration <= 0:
        raise ValueError("duration and step must be positive")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")

    kappa = params.kappa
    coup = params.kappa_a + 1j * params.omega_p
    gain = op.c_sat * (1.0 - 1j * params.alpha)
    c = op.c_sat
    gamma = params.gamma
    gamma_s = params.gamma_s
    pump = params.r * gamma * op.kappa_x / c
    # rotating-frame shift: the stationary emission frequency
    shift = 1j * op.delta

    def rhs(ap, am, db, ds):
        ip = ap.real * ap.real + ap.imag * ap.imag
        im = am.real * am.real + am.imag * am.imag
        tot = ip + im
        dif = ip - im
        dap = -kappa * ap - coup * am + gain * (db + ds) * ap - shift * ap
        dam = -kappa * am - coup * ap + gain * (db - ds) * am - shift * am
        ddb = pump - gamma * db - c * tot * db - c * dif * ds
        dds = -gamma_s * ds - c * dif * db - c * tot * ds
        return dap, dam, ddb, dds

    n_steps = int(round(duration / step))
    limit = DIVERGENCE_FACTOR * np.sqrt(params.i_sat)

    ap, am = complex(initial.a_plus), complex(initial.a_minus)
    db, ds = float(initial.d_big), float(initial.d_small)

    ts = [0.0]
    aps = [ap]
    ams = [am]
    dbs = [db]
    dss = [ds]

    h = step
    for i in range(1, n_steps + 1):
        k1 = rhs(ap, am, db, ds)
        k2 = rhs(ap + 0.5 * h * k1[0], am + 0.5 * h * k1[1], db + 0.5 * h * k1[2], ds + 0.5 * h * k1[3])
        k3 = rhs(ap + 0.5 * h * k2[0], am + 0.5 * h * k2[1], db + 0.5 * h * k2[2], ds + 0.5 * h * k2[3])
        k4 = rhs(ap + h * k3[0], am + h * k3[1], db + h * k3[2], ds + h * k3[3])
        ap += (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        am += (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        db += (h / 6.0) * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        ds += (h / 6.0) * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        worst = max(abs(ap), abs(am))
        # NaN compares false everywhere, so test it separately
        if worst > limit or worst != worst:
            raise Diverged(f"amplitude exceeded {limit:g} at t = {i * h:g}")
        if i % record_every == 0 or i == n_steps:
            ts.append(i * h)
            aps.append(ap)
            ams.append(am)
            dbs.append(db)
            dss.append(ds)

    return Trajectory(
        t=np.array(ts),
        a_plus=np.array(aps),
        a_minus=np.array(ams),
        d_big=np.array(dbs),
        d_small=np.array(dss),
    )


def ringdown_analysis(
    trajectory: Trajectory, observable: str = "total_intensity", burn_in: float = BURN_IN_FRACTION
) -> RingdownResult:
    """Dominant frequency and decay rate of a relaxation transient.

    Discards the leading burn-in fraction, subtracts the final sample
    (the steady asymptote the transient decays to), and takes the
    discrete spectrum of the remaining record. The peak bin is refined
    by parabolic interpolation of the log magnitude; the decay rate
    comes from a least-squares line through the logarithm of the local
    maxima of the rectified signal.

    Raises
    ------
    NoOscillation
        If the detrended record is constant to roundoff, or its
        spectral peak sits in the zero bin (monotonic relaxation).
    """
    x = trajectory.observable(observable) if isinstance(observable, str) else np.asarray(observable)
    t = trajectory.t
    n0 = int(len(x) * burn_in)
    x = x[n0:]
    t = t[n0:]
    if len(x) < 8:
        raise ValueError("record too short for ringdown analysis")
    dt = float(t[1] - t[0])
    y = x - x[-1]
    if np.max(np.abs(y)) <= 1e-13 * max(1.0, abs(float(x[-1]))):
        raise NoOscillation("observable is constant over the analyzed window")

    mag = np.abs(np.fft.rfft(y))
    peak = int(np.argmax(mag))
    if peak == 0:
        raise NoOscillation("spectral peak at zero frequency: monotonic relaxation")

    if 1 <= peak < mag.size - 1:
        lm, l0, lp = np.log(mag[peak - 1 : peak + 2] + 1e-300)
        denom = lm - 2.0 * l0 + lp
        dk = 0.0 if denom == 0 else 0.5 * (lm - lp) / denom
    else:
        dk = 0.0
    df = 1.0 / (len(y) * dt)
    freq = 2.0 * np.pi * (peak + dk) * df

    env = np.abs(y)
    idx = np.flatnonzero((env[1:-1] > env[:-2]) & (env[1:-1] > env[2:])) + 1
    if idx.size >= 3:
        slope = np.polyfit(t[idx], np.log(env[idx] + 1e-300), 1)[0]
        decay = -float(slope)
    else:
        decay = float("nan")

    return RingdownResult(
        frequency=float(freq), decay_rate=decay, peak_bin=peak, frequency_resolution=2.0 * np.pi * df
    )
