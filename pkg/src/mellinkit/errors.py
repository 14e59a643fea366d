"""Exception and warning types shared across the toolkit."""


class MellinKitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(MellinKitError, ValueError):
    """Malformed input: bad grid shapes, non-finite data, broken file formats."""


class ZeroNormError(MellinKitError, ZeroDivisionError):
    """An operation that normalizes by a signal norm received the zero signal."""


class DerivativeUnavailableError(MellinKitError, RuntimeError):
    """Analytic derivatives were required but the function does not provide them."""


class TruncationWarning(UserWarning):
    """The sampled window does not contain the signal: values at the grid ends
    are not negligible, so window truncation is a visible error source."""


class ConvergenceWarning(UserWarning):
    """An adaptive quadrature or an iterative estimate stopped before its
    internal stability target was met."""


class AliasingWarning(UserWarning):
    """A sampling rate below the critical rate for the stated band was used."""
