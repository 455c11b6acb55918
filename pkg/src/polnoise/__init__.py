"""Quantum polarization-noise spectra of spin-flip VCSEL models.

Stationary solutions, linearized drift/diffusion matrices, closed-form
quadrature and Stokes-parameter noise spectra with an independent
frequency-domain matrix oracle, a virtual polarimeter producing
photocurrent spectra and the C12/C23 cross-correlation spectra, and a
semiclassical integrator for the nonlinear equations.
"""

from .params import (
    Branch,
    BelowThreshold,
    DEFAULT_PARAMS,
    LaserParams,
    OperatingPoint,
    derive_operating_point,
    validate,
)
from .steady_state import (
    CharPolyPair,
    StabilityReport,
    char_poly_pair,
    relaxation_frequencies,
    stability_report,
)
from .spectra import (
    FrequencyGrid,
    MODES,
    SpectrumSet,
    StokesSpectra,
    mean_stokes,
    quadrature_spectra,
    stokes_spectra,
)
from .oracle import (
    ComparisonResult,
    GridMismatch,
    LinearModel,
    SingularResolvent,
    build_linear_model,
    compare,
    oracle_spectra,
)
from .polarimeter import (
    DegenerateSplit,
    DivisionByZeroMean,
    PolarimeterSetting,
    PRESETS,
    c12_spectrum,
    c23_reconstruction,
    c23_spectrum,
    classical_stokes_from_measurements,
    mean_photocurrents,
    photocurrent_noise_spectra,
    stokes_noise_measurement,
    x_theta_spectrum,
)
from .dynamics import (
    Diverged,
    NoOscillation,
    RingdownResult,
    StateVector,
    Trajectory,
    ringdown_analysis,
    simulate_semiclassical,
    steady_state_vector,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BelowThreshold",
    "DEFAULT_PARAMS",
    "LaserParams",
    "OperatingPoint",
    "derive_operating_point",
    "validate",
    "CharPolyPair",
    "StabilityReport",
    "char_poly_pair",
    "relaxation_frequencies",
    "stability_report",
    "FrequencyGrid",
    "MODES",
    "SpectrumSet",
    "StokesSpectra",
    "mean_stokes",
    "quadrature_spectra",
    "stokes_spectra",
    "ComparisonResult",
    "GridMismatch",
    "LinearModel",
    "SingularResolvent",
    "build_linear_model",
    "compare",
    "oracle_spectra",
    "DegenerateSplit",
    "DivisionByZeroMean",
    "PolarimeterSetting",
    "PRESETS",
    "c12_spectrum",
    "c23_reconstruction",
    "c23_spectrum",
    "classical_stokes_from_measurements",
    "mean_photocurrents",
    "photocurrent_noise_spectra",
    "stokes_noise_measurement",
    "x_theta_spectrum",
    "Diverged",
    "NoOscillation",
    "RingdownResult",
    "StateVector",
    "Trajectory",
    "ringdown_analysis",
    "simulate_semiclassical",
    "steady_state_vector",
    "__version__",
]
