"""Physical parameters and the stationary lasing operating point.

All rates share one unit (called GHz throughout; really an inverse time
unit) and no 2*pi conversions happen anywhere in the package. The pump
is specified relative to threshold by r = R/R_th, the pump statistics by
p <= 1 (p=1 regular, p=0 Poissonian), and the absolute photon scale by
the saturation intensity i_sat, which fixes the saturation parameter
c = gamma/(2*i_sat).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Branch(Enum):
    """Which linearly polarized stationary solution."""

    X = "x"
    Y = "y"


class BelowThreshold(ValueError):
    """Raised when a lasing quantity is requested below threshold."""


@dataclass(frozen=True)
class LaserParams:
    """User-facing rates and dimensionless parameters.

    Parameters
    ----------
    kappa:
        Cavity damping rate (the outcoupling rate entering photocurrents).
    kappa_a:
        Linear dichroism; may be zero or negative.
    omega_p:
        Linear birefringence.
    alpha:
        Linewidth enhancement factor.
    gamma:
        Upper-level population decay rate.
    gamma_s:
        Spin-relaxation combination gamma + 2*(spin-flip rate); hence
        gamma_s >= gamma.
    r:
        Pump ratio R/R_th; r > 1 means lasing.
    p:
        Pump-statistics parameter, p <= 1.
    i_sat:
        Saturation intensity (photon-number scale), default 1.
    """

    kappa: float
    kappa_a: float
    omega_p: float
    alpha: float
    gamma: float
    gamma_s: float
    r: float
    p: float
    i_sat: float = 1.0


# Parameter set close to the experimental VCSEL values used for all
# default computations (alpha = -3 per the text source; +3 reachable by
# override).
DEFAULT_PARAMS = LaserParams(
    kappa=100.0,
    kappa_a=0.0,
    omega_p=40.0,
    alpha=-3.0,
    gamma=1.0,
    gamma_s=50.0,
    r=6.0,
    p=1.0,
    i_sat=1.0,
)


@dataclass(frozen=True)
class OperatingPoint:
    """Derived stationary lasing state of one linearly polarized branch.

    Fields mirror the closed-form stationary solution: field amplitude
    q = Q (the linearly polarized mode has amplitude sqrt(2)*Q),
    populations d_big0 and d_small0, detuning delta, threshold pump rate
    r_th, saturation parameter c_sat, and the linearization shorthands
    gamma_big = gamma*r and gamma_big_s = gamma_s + gamma*(r-1).
    """

    branch: Branch
    kappa_x: float
    kappa_y: float
    q: float
    q2: float
    d_big0: float
    d_small0: float
    delta: float
    r_th: float
    c_sat: float
    gamma_big: float
    gamma_big_s: float


def validate(params: LaserParams) -> list[str]:
    """Return the list of violated invariants (empty list means valid)."""
    bad = []
    if not params.kappa > 0:
        bad.append("kappa > 0")
    if not params.kappa + params.kappa_a > 0:
        bad.append("kappa + kappa_a > 0")
    if not params.gamma > 0:
        bad.append("gamma > 0")
    if not params.gamma_s >= params.gamma:
        bad.append("gamma_s >= gamma")
    if not params.p <= 1:
        bad.append("p <= 1")
    if not params.i_sat > 0:
        bad.append("i_sat > 0")
    return bad


def validate_for_lasing(params: LaserParams) -> list[str]:
    """Like validate() but also requires an above-threshold pump."""
    bad = validate(params)
    if not params.r > 1:
        bad.append("below threshold")
    return bad


def derive_operating_point(params: LaserParams, branch: Branch = Branch.X) -> OperatingPoint:
    """Compute the stationary operating point of the chosen branch.

    Raises
    ------
    BelowThreshold
        If r < 1 (no real field amplitude). r = 1 returns the threshold
        point with q = 0.
    ValueError
        If the parameters violate a basic invariant.
    """
    bad = validate(params)
    if bad:
        raise ValueError("invalid parameters: " + "; ".join(bad))
    if params.r < 1:
        raise BelowThreshold(f"r = {params.r} < 1")

    kappa_x = params.kappa + params.kappa_a
    kappa_y = params.kappa - params.kappa_a
    c_sat = params.gamma / (2.0 * params.i_sat)
    q2 = params.i_sat * (params.r - 1.0)
    q = q2 ** 0.5

    if branch is Branch.X:
        kappa_b = kappa_x
        delta = -(kappa_x * params.alpha + params.omega_p)
    else:
        kappa_b = kappa_y
        delta = -(kappa_y * params.alpha - params.omega_p)

    return OperatingPoint(
        branch=branch,
        kappa_x=kappa_x,
        kappa_y=kappa_y,
        q=q,
        q2=q2,
        d_big0=kappa_b / c_sat,
        d_small0=0.0,
        delta=delta,
        r_th=params.gamma * kappa_b / c_sat,
        c_sat=c_sat,
        gamma_big=params.gamma * params.r,
        gamma_big_s=params.gamma_s + params.gamma * (params.r - 1.0),
    )


def require_lasing(params: LaserParams, op: OperatingPoint) -> None:
    # the linearization divides by Q; r must exceed 1 strictly
    if params.r <= 1 or op.q <= 0:
        raise BelowThreshold(f"r = {params.r} <= 1: no lasing solution to linearize")
