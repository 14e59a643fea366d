"""Function-on-the-half-line abstraction, log substitution and translation.

A HalfLineFunction bundles pointwise evaluation with optional analytic
derivatives.  Consumers that need f^(k) but find none fall back to finite
differences (see calculus.mellin_derivative) unless told not to.
"""

import numpy as np

from .calculus import stirling_coeffs
from .errors import DerivativeUnavailableError, ValidationError

__all__ = ["HalfLineFunction", "log_substitute", "mellin_translate"]


class HalfLineFunction:
    """A deterministic pointwise-evaluable function.

    Parameters
    ----------
    fn : callable
        Vectorizable evaluation ``fn(x) -> complex``.
    derivative : callable, optional
        ``derivative(x, k) -> complex`` returning the k-th ordinary
        derivative; ``k = 0`` must reproduce ``fn``.
    name : str, optional
        Used in error messages only.
    """

    def __init__(self, fn, derivative=None, name=""):
        self._fn = fn
        self._derivative = derivative
        self.name = name or getattr(fn, "__name__", "function")

    @property
    def has_derivatives(self):
        return self._derivative is not None

    def __call__(self, x):
        return self._fn(x)

    def derivative(self, x, k):
        if k == 0:
            return self._fn(x)
        if self._derivative is None:
            raise DerivativeUnavailableError(
                f"derivative unavailable: {self.name} has no analytic derivatives"
            )
        return self._derivative(x, k)

    def __repr__(self):
        tag = "analytic derivatives" if self.has_derivatives else "values only"
        return f"HalfLineFunction({self.name}, {tag})"


def _wrap(f):
    if isinstance(f, HalfLineFunction):
        return f
    if callable(f):
        return HalfLineFunction(f)
    raise ValidationError(f"expected a callable or HalfLineFunction, got {type(f)!r}")


def log_substitute(f, c):
    """Change variables to the log domain: h(u) = e^{cu} f(e^u).

    The result is evaluated on the whole real line through the same
    contract.  When ``f`` carries analytic derivatives, so does ``h``: the
    chain rule through u = log x gives
    h^(k)(u) = sum_j S_c(k, j) e^{(c+j)u} f^(j)(e^u), with the triangular
    coefficients produced by ``stirling_coeffs``.
    """
    f = _wrap(f)
    c = float(c)

    def h(u):
        u = np.asarray(u, dtype=float)
        return np.exp(c * u) * f(np.exp(u))

    deriv = None
    if f.has_derivatives:

        def deriv(u, k):
            u = np.asarray(u, dtype=float)
            x = np.exp(u)
            row = stirling_coeffs(k, c)
            out = np.zeros(u.shape, dtype=complex)
            for j, s in enumerate(row):
                out += s * np.exp((c + j) * u) * np.asarray(
                    f.derivative(x, j), dtype=complex
                )
            return out

    return HalfLineFunction(h, deriv, name=f"log[{f.name}; c={c:g}]")


def mellin_translate(f, h, c):
    """Multiplicative translation x -> h^c f(hx) by a factor h > 0."""
    f = _wrap(f)
    h = float(h)
    if not (np.isfinite(h) and h > 0):
        raise ValidationError(f"translation factor must be positive, got {h}")
    c = float(c)
    scale = h**c

    def g(x):
        return scale * f(h * np.asarray(x, dtype=float))

    deriv = None
    if f.has_derivatives:

        def deriv(x, k):
            # d^k/dx^k [h^c f(hx)] = h^{c+k} f^(k)(hx)
            return scale * h**k * f.derivative(h * np.asarray(x, dtype=float), k)

    return HalfLineFunction(g, deriv, name=f"translate[{f.name}; h={h:g}]")
