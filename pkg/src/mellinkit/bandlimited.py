"""Bandlimited models, the log-sinc interpolation kernel, exponential
sampling and the reproducing-kernel integral.

A BandlimitedModel is an exactly-known test signal: a square-integrable
spectral density F supported on [-T, T] defines

    f(x) = (x^{-c} / 2*pi) * int_{-T}^{T} F(t) x^{-it} dt,

evaluated by adaptive Gauss-Legendre panels.  These models are the ground
truth against which sampling, reconstruction and transform paths are
verified.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from . import config
from ._util import map_blocks
from .errors import (
    AliasingWarning,
    ConvergenceWarning,
    TruncationWarning,
    ValidationError,
)

__all__ = [
    "lin_kernel",
    "BandlimitedModel",
    "synthesize",
    "ExpSampleSet",
    "exp_sample",
    "exp_reconstruct",
    "reconstruction_tail_estimate",
    "KernelResult",
    "kernel_apply",
]

_SERIES_CUTOFF = 1e-6  # |log x| below this evaluates sinc by its Taylor series
_SNAP_ULPS = 32.0
_U_BLOCK = 128


def _snap_tolerance(v):
    return _SNAP_ULPS * np.finfo(float).eps * np.maximum(1.0, np.abs(v))


def _log_sinc(v):
    """sin(pi v)/(pi v) evaluated at v = log x.

    Near v = 0 the removable singularity is handled by the 3-term Taylor
    series; at values within rounding distance of a nonzero integer the
    exact kernel zero is returned, which makes node interpolation exact.
    The generic branch reduces the argument so accuracy does not degrade for
    large |v|.
    """
    v = np.asarray(v, dtype=float)
    out = np.empty(v.shape)

    small = np.abs(v) < _SERIES_CUTOFF
    pv = np.pi * v[small]
    out[small] = 1.0 - pv**2 / 6.0 + pv**4 / 120.0

    rest = ~small
    vr = v[rest]
    nearest = np.round(vr)
    delta = vr - nearest
    sign = np.where(np.mod(nearest, 2.0) == 0.0, 1.0, -1.0)
    vals = sign * np.sin(np.pi * delta) / (np.pi * vr)
    vals[np.abs(delta) <= _snap_tolerance(vr)] = 0.0
    out[rest] = vals
    return out


def lin_kernel(c, x):
    """The log-sinc interpolation kernel x^{-c} sinc(log x), with the
    removable singularity at x = 1 evaluating to exactly 1."""
    x_in = np.asarray(x, dtype=float)
    scalar = x_in.ndim == 0
    x_arr = np.atleast_1d(x_in)
    if not np.isfinite(x_arr).all() or not (x_arr > 0).all():
        raise ValidationError("lin_kernel needs finite x > 0")
    s = _log_sinc(np.log(x_arr))
    out = np.zeros_like(s)
    live = s != 0.0
    out[live] = x_arr[live] ** (-float(c)) * s[live]
    return float(out[0]) if scalar else out


@lru_cache(maxsize=64)
def _gl_rule(order):
    nodes, weights = roots_legendre(order)
    return nodes, weights


def _panel_nodes(edges, order):
    xs, ws = _gl_rule(order)
    lo = edges[:-1]
    hi = edges[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = (mid[:, None] + half[:, None] * xs).ravel()
    weights = (half[:, None] * ws).ravel()
    return nodes, weights


@dataclass(frozen=True)
class BandlimitedModel:
    """Signal with exactly known spectral density F on [-T, T].

    ``density`` is either a callable F(t) -> complex (vectorized) or None,
    in which case ``knot_values`` holds uniform samples over [-T, T] that
    are interpolated piecewise-linearly.  ``panel_edges`` splits the band
    into quadrature panels; any jump or kink of F must lie on a panel edge
    for the Gauss-Legendre rule to keep its accuracy.
    """

    c: float
    band: float
    density: object = None
    knot_values: np.ndarray = None
    panel_edges: np.ndarray = None
    name: str = "model"

    def __post_init__(self):
        if not (np.isfinite(self.band) and self.band > 0):
            raise ValidationError(f"band edge must be positive, got {self.band}")
        if (self.density is None) == (self.knot_values is None):
            raise ValidationError(
                "exactly one of density (callable) or knot_values must be given"
            )
        if self.knot_values is not None:
            vals = np.asarray(self.knot_values, dtype=complex)
            if vals.ndim != 1 or len(vals) < 2:
                raise ValidationError("knot_values must be a 1-d array of >= 2 samples")
            if not np.isfinite(vals.view(float)).all():
                raise ValidationError("knot_values contain non-finite entries")
            object.__setattr__(self, "knot_values", vals)
            edges = np.linspace(-self.band, self.band, len(vals))
        else:
            if not callable(self.density):
                raise ValidationError("density must be callable")
            edges = np.linspace(-self.band, self.band, 9)
        if self.panel_edges is None:
            object.__setattr__(self, "panel_edges", edges)
        else:
            pe = np.asarray(self.panel_edges, dtype=float)
            if pe.ndim != 1 or len(pe) < 2 or not np.all(np.diff(pe) > 0):
                raise ValidationError("panel_edges must be strictly increasing")
            if not (np.isclose(pe[0], -self.band) and np.isclose(pe[-1], self.band)):
                raise ValidationError("panel_edges must span [-band, band]")
            object.__setattr__(self, "panel_edges", pe)

    @property
    def knot_t(self):
        if self.knot_values is None:
            return None
        return np.linspace(-self.band, self.band, len(self.knot_values))

    def density_values(self, t):
        """F(t), zero outside the band."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        inside = np.abs(t) <= self.band
        if self.density is not None:
            out[inside] = np.asarray(self.density(t[inside]), dtype=complex)
        else:
            kt = self.knot_t
            out[inside] = np.interp(t[inside], kt, self.knot_values.real) + 1j * (
                np.interp(t[inside], kt, self.knot_values.imag)
            )
        return out

    def spectral_quadrature(self, poly_degree=0):
        """(t nodes, positive weights, F values) integrating
        t^poly_degree * |F|^2-type integrands accurately over the band."""
        base = max(48, poly_degree // 2 + 8)
        nodes, weights = _panel_nodes(self.panel_edges, base)
        return nodes, weights, self.density_values(nodes)

    def _quad_level(self, level):
        # knot models have one panel per knot interval, so a low base order
        # suffices; callable densities get few panels and start higher
        base = 4 if self.knot_values is not None else 32
        nodes, weights = _panel_nodes(self.panel_edges, base << level)
        return nodes, weights * self.density_values(nodes)

    def weighted_values(self, u, spectral_power=0, tol=config.SYNTHESIS_TOL):
        """g-side evaluation (1/2*pi) int (-it)^k F(t) e^{-itu} dt.

        With k = 0 this is x^c f(x) at u = log x.  The Gauss-Legendre order
        per panel doubles until the result moves by less than ``tol``
        relative to its largest magnitude.
        """
        u = np.atleast_1d(np.asarray(u, dtype=float))

        def eval_level(level):
            t, wf = self._quad_level(level)
            if spectral_power:
                wf = wf * (-1j * t) ** spectral_power

            def block(ub):
                return np.exp(-1j * np.outer(ub, t)) @ wf

            return map_blocks(block, u, _U_BLOCK) / (2.0 * np.pi)

        prev = eval_level(0)
        for level in range(1, 8):
            cur = eval_level(level)
            scale = max(np.abs(cur).max(), np.finfo(float).tiny)
            if np.abs(cur - prev).max() <= tol * scale:
                return cur
            prev = cur
        warnings.warn(
            f"{self.name}: synthesis quadrature did not stabilize to {tol:g} "
            "at the maximum panel order",
            ConvergenceWarning,
            stacklevel=2,
        )
        return cur

    def values(self, x):
        """f(x) on the half-line."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if not (x > 0).all():
            raise ValidationError("model evaluation needs x > 0")
        u = np.log(x)
        return x ** (-self.c) * self.weighted_values(u)


def synthesize(model, x):
    """Evaluate an exactly-known bandlimited model at x > 0."""
    x_in = np.asarray(x, dtype=float)
    out = model.values(x_in)
    return complex(out[0]) if x_in.ndim == 0 else out


@dataclass(frozen=True)
class ExpSampleSet:
    """Samples f(e^{k/sigma}) for k = -K..K (node k = 0 sits at x = 1)."""

    c: float
    sigma: float
    K: int
    samples: np.ndarray

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValidationError(f"sampling rate must be positive, got {self.sigma}")
        if not isinstance(self.K, (int, np.integer)) or self.K < 1:
            raise ValidationError(f"truncation radius must be a positive int, got {self.K}")
        vals = np.asarray(self.samples, dtype=complex)
        if vals.shape != (2 * self.K + 1,):
            raise ValidationError(
                f"need {2 * self.K + 1} samples for K={self.K}, got {vals.shape}"
            )
        if not np.isfinite(vals.view(float)).all():
            raise ValidationError("sample values must be finite")
        object.__setattr__(self, "samples", vals)

    @property
    def k(self):
        return np.arange(-self.K, self.K + 1)

    @property
    def node_u(self):
        return self.k / self.sigma

    def weighted_samples(self):
        """g(k/sigma) = x_k^c f(x_k); finite whenever |c| K / sigma is
        inside the double exponent range."""
        g = np.exp(self.c * self.node_u) * self.samples
        if not np.isfinite(g.view(float)).all():
            raise ValidationError(
                "x^c f(x) overflows at the outer nodes; reduce K or |c|/sigma"
            )
        return g


def exp_sample(source, sigma, K, c=None):
    """Sample a model or function at the geometric nodes e^{k/sigma}.

    Models are evaluated in the log domain, so node positions may exceed
    the double range of x itself.  Rates below band/pi are flagged as
    aliasing (sub-critical), not refused.
    """
    sigma = float(sigma)
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValidationError(f"sampling rate must be positive, got {sigma}")
    K = int(K)
    if K < 1:
        raise ValidationError(f"truncation radius must be >= 1, got {K}")
    k = np.arange(-K, K + 1)

    if isinstance(source, BandlimitedModel):
        if c is not None and c != source.c:
            raise ValidationError("c disagrees with the model's parameter")
        if source.band > np.pi * sigma * (1.0 + 1e-12):
            warnings.warn(
                f"aliasing expected: band {source.band:g} exceeds pi*sigma = "
                f"{np.pi * sigma:g}",
                AliasingWarning,
                stacklevel=2,
            )
        u = k / sigma
        values = np.exp(-source.c * u) * source.weighted_values(u)
        return ExpSampleSet(c=source.c, sigma=sigma, K=K, samples=values)

    if c is None:
        raise ValidationError("sampling a bare function requires the parameter c")
    if K / sigma > 700.0:
        raise ValidationError(
            "nodes e^{K/sigma} leave the double range; sample a BandlimitedModel "
            "instead, which is evaluated in the log domain"
        )
    x = np.exp(k / sigma)
    try:
        values = np.asarray(source(x), dtype=complex)
    except Exception:
        for kk, xx in zip(k, x):
            try:
                source(xx)
            except Exception as exc:
                raise ValidationError(f"evaluation failed at node k={kk}") from exc
        raise
    bad = ~np.isfinite(values.view(float).reshape(len(values), 2)).all(axis=1)
    if bad.any():
        raise ValidationError(f"non-finite sample at node k={k[bad][0]}")
    return ExpSampleSet(c=float(c), sigma=sigma, K=K, samples=values)


def _reconstruct_block(samples, g, u_block):
    su = samples.sigma * u_block
    K = samples.K
    out = np.empty(len(u_block), dtype=complex)

    nearest = np.round(su)
    hits = (np.abs(su - nearest) <= _snap_tolerance(su)) & (np.abs(nearest) <= K)
    if hits.any():
        idx = nearest[hits].astype(int) + K
        out[hits] = samples.samples[idx]

    rest = ~hits
    if rest.any():
        v = su[rest, None] - samples.k[None, :]
        terms = g[None, :] * _log_sinc(v)
        center = terms[:, K]
        pairs = terms[:, K + 1 :] + terms[:, K - 1 :: -1]
        series = center + pairs.sum(axis=1)
        out[rest] = np.exp(-samples.c * u_block[rest]) * series
    return out


def exp_reconstruct(samples, x):
    """Truncated exponential-sampling series sum_k f_k lin(e^{-k} x^sigma).

    At a node x = e^{j/sigma} with |j| <= K the stored sample is returned
    bit-for-bit (the kernel is exactly the Kronecker delta there).  Off the
    nodes the series is accumulated pairing +k with -k, which cancels the
    leading tail drift of the slowly decaying kernel.
    """
    x_in = np.asarray(x, dtype=float)
    scalar = x_in.ndim == 0
    x_arr = np.atleast_1d(x_in)
    if not np.isfinite(x_arr).all() or not (x_arr > 0).all():
        raise ValidationError("reconstruction needs finite x > 0")
    u = np.log(x_arr)
    g = samples.weighted_samples()
    out = map_blocks(lambda ub: _reconstruct_block(samples, g, ub), u, _U_BLOCK)
    return complex(out[0]) if scalar else out


def reconstruction_tail_estimate(samples, x):
    """Heuristic bound on the magnitude of the omitted series tail.

    The outer weighted samples are fit with the envelope A / u^2 (the decay
    of models with piecewise-linear spectra); the omitted terms are then
    summed against the kernel envelope 1/(pi |sigma u - k|).  A factor 3
    covers slower-than-modeled decay down to roughly A / u^{1.5}.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    u = np.log(x_arr)
    g = np.abs(samples.weighted_samples())
    K, sigma = samples.K, samples.sigma
    outer = min(16, K)
    ks = np.abs(samples.k)
    sel = ks >= K - outer + 1
    amp = float(np.max(g[sel] * (ks[sel] / sigma) ** 2, initial=0.0))
    tail_k = np.arange(K + 1, 64 * K)
    env = amp * (sigma / tail_k) ** 2
    dist = np.maximum(tail_k[None, :] - sigma * np.abs(u)[:, None], 1.0)
    total = (env[None, :] / (np.pi * dist)).sum(axis=1)
    total = total + amp * sigma**2 / (np.pi * 64 * K)  # integral remainder
    est = 3.0 * 2.0 * total * np.exp(-samples.c * u)
    floor = 4.0 * np.finfo(float).eps * float(g.max(initial=0.0))
    out = np.abs(est) + floor
    return float(out[0]) if np.asarray(x).ndim == 0 else out


@dataclass(frozen=True)
class KernelResult:
    """Value of the reproducing-kernel integral plus a tail-bound estimate."""

    value: np.ndarray
    tail_bound: np.ndarray


def kernel_apply(
    source,
    sigma,
    x,
    c=None,
    window=None,
    step=None,
):
    """Reproducing-kernel integral sigma * int f(y) lin((x/y)^sigma) dy/y.

    Computed by the trapezoid rule in v = log y over [u - window, u + window]
    joined with [-window, window] (u = log x), where the integrand becomes
    g(v) sinc(sigma (u - v)) with g the weighted signal.  Returns the value
    together with a tail-bound estimate from a 1/v^2 decay model of the end
    integrand; ends above 1e-9 of the integrand peak raise a warning.
    """
    sigma = float(sigma)
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValidationError(f"kernel rate must be positive, got {sigma}")
    window = config.DEFAULT_KERNEL_WINDOW if window is None else float(window)
    step = config.DEFAULT_KERNEL_STEP if step is None else float(step)
    if window <= 0 or step <= 0 or step >= window:
        raise ValidationError("need 0 < step < window")

    if isinstance(source, BandlimitedModel):
        if c is not None and c != source.c:
            raise ValidationError("c disagrees with the model's parameter")
        c = source.c
        g_of = lambda v: source.weighted_values(v)
    else:
        if c is None:
            raise ValidationError("kernel_apply on a bare function requires c")
        c = float(c)
        fn = source

        def g_of(v):
            return np.exp(c * v) * np.asarray(fn(np.exp(v)), dtype=complex)

    x_in = np.asarray(x, dtype=float)
    scalar = x_in.ndim == 0
    x_arr = np.atleast_1d(x_in)
    if not np.isfinite(x_arr).all() or not (x_arr > 0).all():
        raise ValidationError("kernel_apply needs finite x > 0")
    u = np.log(x_arr)

    lo = min(-window, float(u.min()) - window)
    hi = max(window, float(u.max()) + window)
    n = int(np.ceil((hi - lo) / step)) + 1
    v = np.linspace(lo, hi, n)
    gv = g_of(v)
    w = np.ones(n)
    w[0] = w[-1] = 0.5

    values = np.empty(len(u), dtype=complex)
    bounds = np.empty(len(u))
    warned = False
    for i, ui in enumerate(u):
        integrand = gv * _log_sinc(sigma * (ui - v))
        peak = np.abs(integrand).max()
        end_lo, end_hi = abs(integrand[0]), abs(integrand[-1])
        if peak > 0 and max(end_lo, end_hi) > config.KERNEL_END_THRESHOLD * peak:
            warned = True
        total = sigma * (v[1] - v[0]) * np.sum(w * integrand)
        values[i] = np.exp(-c * ui) * total
        tail = sigma * (
            end_lo * max(abs(v[0] - ui), 1.0) + end_hi * max(abs(v[-1] - ui), 1.0)
        )
        bounds[i] = 3.0 * abs(np.exp(-c * ui)) * tail
    if warned:
        warnings.warn(
            "kernel integrand exceeds 1e-9 of its peak at the window ends; "
            "enlarge the window",
            TruncationWarning,
            stacklevel=2,
        )
    if scalar:
        return KernelResult(value=complex(values[0]), tail_bound=float(bounds[0]))
    return KernelResult(value=values, tail_bound=bounds)
