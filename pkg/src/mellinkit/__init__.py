"""Numerical Mellin analysis on the positive half-line.

Transforms and norms live on geometric grids (uniform in log x); calculus
is done through the Mellin derivative x f'(x) + c f(x); exactly-known
bandlimited models drive exponential sampling, reconstruction and
band-edge estimation.
"""

from .bandlimited import (
    BandlimitedModel,
    ExpSampleSet,
    KernelResult,
    exp_reconstruct,
    exp_sample,
    kernel_apply,
    lin_kernel,
    reconstruction_tail_estimate,
    synthesize,
)
from .calculus import (
    StirlingTable,
    derivative_norm,
    derivative_spectrum_gap,
    differentiate_samples,
    log_derivative_norm,
    mellin_derivative,
    stirling_coeffs,
)
from .errors import (
    AliasingWarning,
    ConvergenceWarning,
    DerivativeUnavailableError,
    MellinKitError,
    TruncationWarning,
    ValidationError,
    ZeroNormError,
)
from .functions import HalfLineFunction, log_substitute, mellin_translate
from .grids import GeometricGrid, SampledSignal, Spectrum, symmetric_t_grid
from .paley_wiener import (
    BandwidthEstimate,
    bernstein_ratio,
    boundary_decay_probe,
    estimate_bandwidth,
)
from .transform import (
    fourier_sum,
    mellin_forward,
    mellin_inverse,
    mellin_l2_norm,
    plancherel_gap,
    spectrum_l2_norm,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingWarning",
    "BandlimitedModel",
    "BandwidthEstimate",
    "ConvergenceWarning",
    "DerivativeUnavailableError",
    "ExpSampleSet",
    "GeometricGrid",
    "HalfLineFunction",
    "KernelResult",
    "MellinKitError",
    "SampledSignal",
    "Spectrum",
    "StirlingTable",
    "TruncationWarning",
    "ValidationError",
    "ZeroNormError",
    "bernstein_ratio",
    "boundary_decay_probe",
    "derivative_norm",
    "derivative_spectrum_gap",
    "differentiate_samples",
    "estimate_bandwidth",
    "exp_reconstruct",
    "exp_sample",
    "fourier_sum",
    "kernel_apply",
    "lin_kernel",
    "log_derivative_norm",
    "log_substitute",
    "mellin_derivative",
    "mellin_forward",
    "mellin_inverse",
    "mellin_l2_norm",
    "mellin_translate",
    "plancherel_gap",
    "reconstruction_tail_estimate",
    "spectrum_l2_norm",
    "stirling_coeffs",
    "symmetric_t_grid",
    "synthesize",
]
