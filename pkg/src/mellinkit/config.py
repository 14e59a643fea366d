"""Default numerical parameters and the thread cap.

All defaults are overridable through the function arguments of the modules
that consume them; they are collected here so a reproducible run can be
described by this file alone.
"""

import os

import numpy as np

# Log-domain grid for sampled signals: u = log x on [U_MIN, U_MAX], N points.
DEFAULT_U_MIN = -26.0
DEFAULT_U_MAX = 26.0
DEFAULT_GRID_N = 8192

# Frequency grid for spectra: t uniform and symmetric on [-T_MAX, T_MAX],
# M odd so that t = 0 is a grid point.
DEFAULT_T_MAX = 4.0 * np.pi
DEFAULT_SPECTRUM_M = 4097

# Exponential sampling series truncation (nodes k = -K..K).
DEFAULT_K = 512

# Band-edge estimation: highest derivative order used for the moment ladder.
DEFAULT_R_MAX = 30

# Reproducing-kernel quadrature window: half-width and step of the
# trapezoid rule in v = log y.
DEFAULT_KERNEL_WINDOW = 80.0
DEFAULT_KERNEL_STEP = 0.02

# Transform windows are considered adequate when the weighted signal at both
# grid ends is below this fraction of its peak; otherwise a TruncationWarning
# is attached to the computation.
END_DECAY_THRESHOLD = 1e-12

# Relative stability target for adaptive quadrature of model synthesis.
SYNTHESIS_TOL = 1e-12

# Kernel integrand end values above this fraction of the integrand peak
# trigger a window warning in the reproducing-kernel evaluation.
KERNEL_END_THRESHOLD = 1e-9

# Direct-summation transform kernels switch to the FFT-accelerated chirp-z
# path above this many (grid point x frequency) products.
CZT_CUTOFF = 1 << 18

THREADS_ENV_VAR = "MELLIN_KIT_THREADS"


def thread_count():
    """Inner-parallelism cap taken from MELLIN_KIT_THREADS (default 1)."""
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)
