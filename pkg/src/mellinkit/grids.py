"""Geometric grids and the sampled containers used by the transforms.

Signals live on geometrically spaced abscissas x_j = exp(u_j) with u_j
uniform; spectra live on uniform symmetric frequency grids t_j along a fixed
vertical line with real part ``c``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ValidationError

__all__ = ["GeometricGrid", "SampledSignal", "Spectrum", "symmetric_t_grid"]


@dataclass(frozen=True)
class GeometricGrid:
    """Log-uniform discretization of an interval of the positive half-line.

    The grid is defined by its log-abscissa bounds and point count; the
    induced points are x_j = exp(u_min + j*du) with du = (u_max-u_min)/(n-1),
    so log-spacing is uniform by construction.
    """

    u_min: float
    u_max: float
    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValidationError(f"grid needs at least 2 points, got n={self.n}")
        if not (np.isfinite(self.u_min) and np.isfinite(self.u_max)):
            raise ValidationError("grid log-bounds must be finite")
        if not self.u_min < self.u_max:
            raise ValidationError(
                f"grid requires u_min < u_max, got [{self.u_min}, {self.u_max}]"
            )
        x = np.exp(np.array([self.u_min, self.u_max]))
        if not (x > 0.0).all() or not np.isfinite(x).all():
            raise ValidationError(
                "grid points exp(u) must stay inside the positive normal "
                f"double range; got log-bounds [{self.u_min}, {self.u_max}]"
            )

    @cached_property
    def u(self):
        """Log-abscissas, uniform with spacing du."""
        return np.linspace(self.u_min, self.u_max, self.n)

    @cached_property
    def x(self):
        """Grid points on the positive half-line, strictly increasing."""
        return np.exp(self.u)

    @property
    def du(self):
        return (self.u_max - self.u_min) / (self.n - 1)

    @property
    def trapezoid_weights(self):
        w = np.ones(self.n)
        w[0] = w[-1] = 0.5
        return w

    def refine(self, extent_factor=2.0, du_factor=0.5):
        """New grid with scaled extents and log-spacing (default: doubled
        window, halved spacing)."""
        u_min = self.u_min * extent_factor
        u_max = self.u_max * extent_factor
        n = int(round((u_max - u_min) / (self.du * du_factor))) + 1
        return GeometricGrid(u_min, u_max, n)


def _as_complex_values(values, n, what):
    values = np.asarray(values, dtype=complex)
    if values.shape != (n,):
        raise ValidationError(
            f"{what} needs {n} values, got array of shape {values.shape}"
        )
    if not np.isfinite(values.view(float)).all():
        raise ValidationError(f"{what} contains non-finite values")
    return values


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples of a function on a GeometricGrid, together with the
    Mellin line parameter ``c`` the samples are meant to be analyzed on."""

    grid: GeometricGrid
    values: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(
            self, "values", _as_complex_values(self.values, self.grid.n, "signal")
        )
        if not np.isfinite(self.c):
            raise ValidationError("Mellin parameter c must be finite")

    @property
    def x(self):
        return self.grid.x

    @property
    def u(self):
        return self.grid.u

    def weighted_values(self):
        """The log-domain weighted samples h(u_j) = x_j^c f(x_j)."""
        h = np.exp(self.c * self.grid.u) * self.values
        if not np.isfinite(h.view(float)).all():
            raise ValidationError(
                "x^c * f(x) overflows on this grid; shrink the window or c"
            )
        return h


def symmetric_t_grid(t_max, m):
    """Uniform symmetric frequency grid with an exact zero at the center.

    m must be odd so that t = 0 is a grid point; endpoints are exactly
    +-t_max.
    """
    if not isinstance(m, (int, np.integer)) or m < 3 or m % 2 == 0:
        raise ValidationError(f"spectrum size must be odd and >= 3, got m={m}")
    if not (np.isfinite(t_max) and t_max > 0):
        raise ValidationError(f"t_max must be positive and finite, got {t_max}")
    half = m // 2
    return (np.arange(m) - half) * (float(t_max) / half)


@dataclass(frozen=True)
class Spectrum:
    """Transform values F(t_j) on a symmetric t-grid along the line c + it."""

    c: float
    t_max: float
    m: int
    values: np.ndarray
    t: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t", symmetric_t_grid(self.t_max, self.m))
        object.__setattr__(
            self, "values", _as_complex_values(self.values, self.m, "spectrum")
        )
        if not np.isfinite(self.c):
            raise ValidationError("Mellin parameter c must be finite")

    @property
    def dt(self):
        return self.t_max / (self.m // 2)

    @property
    def trapezoid_weights(self):
        w = np.ones(self.m)
        w[0] = w[-1] = 0.5
        return w
