"""Invariant suite over the built-in corpus.

Every check returns a CheckResult row; the CLI ``verify`` subcommand prints
them as a pass/fail table.  The same rows back the test suite, so the table
and the tests cannot drift apart.
"""

import os
import tempfile
import warnings
from dataclasses import dataclass

import numpy as np

from . import config, io
from .bandlimited import (
    exp_reconstruct,
    exp_sample,
    kernel_apply,
    lin_kernel,
    reconstruction_tail_estimate,
    synthesize,
)
from .calculus import (
    derivative_spectrum_gap,
    log_derivative_norm,
    mellin_derivative,
    stirling_coeffs,
)
from .corpus import (
    RECORDED,
    box_spectrum,
    corpus,
    estimation_entries,
    flat_band_model,
    sampling_entry,
    sharpness_model,
    transform_entries,
    two_interval_model,
)
from .errors import MellinKitError
from .functions import HalfLineFunction, mellin_translate
from .grids import GeometricGrid, SampledSignal
from .paley_wiener import bernstein_ratio, boundary_decay_probe, estimate_bandwidth
from .transform import mellin_forward, mellin_inverse, mellin_l2_norm, plancherel_gap

__all__ = ["CheckResult", "run_verification", "VERIFICATION_CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


_SIGNALS = {}


def _signal(entry):
    """Model sampled on its recorded reference grid (cached)."""
    key = entry.name
    if key not in _SIGNALS:
        values = entry.model.values(entry.grid.x)
        _SIGNALS[key] = SampledSignal(grid=entry.grid, values=values, c=entry.model.c)
    return _SIGNALS[key]


def _relative_roundtrip_error(signal, grid, t_max, m):
    spec = mellin_forward(signal, t_max=t_max, m=m)
    back = mellin_inverse(spec, grid)
    diff = SampledSignal(grid=grid, values=back.values - signal.values, c=signal.c)
    return mellin_l2_norm(diff) / mellin_l2_norm(signal)


def _power_function(a):
    def fn(x):
        return np.asarray(x, dtype=complex) ** a

    def deriv(x, k):
        coef = 1.0
        for i in range(k):
            coef *= a - i
        return coef * np.asarray(x, dtype=complex) ** (a - k)

    return HalfLineFunction(fn, deriv, name=f"x^{a:g}")


def _expansion_magnitude(f, c, r, x):
    """Sum of term magnitudes of the derivative expansion: the scale at
    which its floating-point cancellation floor sits."""
    row = stirling_coeffs(r, c)
    return sum(abs(s) * x**k * abs(f.derivative(x, k)) for k, s in enumerate(row))


def check_transform_linearity():
    entries = transform_entries()
    # two models on the same grid and the same Mellin line
    sig_a = _signal(entries[2])
    sig_b = _signal(entries[5])
    assert sig_a.c == sig_b.c and sig_a.grid == sig_b.grid
    rng = np.random.default_rng(2024)
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    mixed = SampledSignal(
        grid=sig_a.grid, values=a * sig_a.values + b * sig_b.values, c=sig_a.c
    )
    lhs = mellin_forward(mixed).values
    rhs = a * mellin_forward(sig_a).values + b * mellin_forward(sig_b).values
    err = np.abs(lhs - rhs).max() / np.abs(rhs).max()
    return CheckResult(
        "transform linearity", err <= 1e-13, f"sup rel dev {err:.2e} (limit 1e-13)"
    )


def check_transform_bound():
    worst = 0.0
    for entry in transform_entries():
        sig = _signal(entry)
        h = sig.weighted_values()
        bound = sig.grid.du * np.sum(sig.grid.trapezoid_weights * np.abs(h))
        peak = np.abs(mellin_forward(sig).values).max()
        worst = max(worst, peak / bound)
    return CheckResult(
        "transform magnitude bound",
        worst <= 1.0 + 1e-12,
        f"max |F| / discrete L1 bound = {worst:.6f}",
    )


def check_round_trip():
    worst = 0.0
    for entry in transform_entries():
        sig = _signal(entry)
        err = _relative_roundtrip_error(sig, entry.grid, entry.t_max, entry.m)
        worst = max(worst, err)
    return CheckResult(
        "round trip on corpus", worst <= 1e-6, f"max rel L2 {worst:.2e} (limit 1e-6)"
    )


def check_plancherel():
    worst = 0.0
    for entry in transform_entries():
        worst = max(worst, plancherel_gap(_signal(entry), entry.t_max, entry.m))
    return CheckResult(
        "norm preservation on corpus", worst <= 1e-6, f"max gap {worst:.2e} (limit 1e-6)"
    )


def check_refinement_monotonicity():
    # refinement = double extents + halve spacing; errors at the rounding
    # floor are compared against an absolute floor instead of each other
    floor = 1e-11
    worst = -np.inf
    for entry in transform_entries():
        g = entry.grid
        base_grid = GeometricGrid(g.u_min / 2, g.u_max / 2, (g.n - 1) // 4 + 1)
        base_vals = entry.model.values(base_grid.x)
        base_sig = SampledSignal(grid=base_grid, values=base_vals, c=entry.model.c)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            err_base = _relative_roundtrip_error(base_sig, base_grid, entry.t_max, entry.m)
        err_ref = _relative_roundtrip_error(_signal(entry), g, entry.t_max, entry.m)
        worst = max(worst, err_ref / max(1.5 * err_base, floor))
    return CheckResult(
        "refinement monotonicity",
        worst <= 1.0,
        f"max refined / max(1.5*coarse, {floor:g}) = {worst:.3f}",
    )


def check_stirling_boundary():
    # S(r,r) accumulates no rounding; S(r,0) = c^r may differ from pow(c,r)
    # by ulps once c^r is no longer exactly representable
    worst = 0.0
    exact_top = True
    for c in (-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 10.0):
        for r in range(0, 65):
            row = stirling_coeffs(r, c)
            if row[-1] != 1.0:
                exact_top = False
            if r > 0 and c != 0.0:
                worst = max(worst, abs(row[0] - c**r) / abs(c**r))
            elif r > 0 and row[0] != 0.0:
                exact_top = False
    return CheckResult(
        "stirling boundary rows",
        exact_top and worst <= 1e-13,
        f"S(r,r)=1 exact, S(r,0) vs c^r rel dev {worst:.2e} for r<=64",
    )


def check_stirling_iteration():
    # relative to the expansion's own term magnitudes: near a + c = 0 the
    # iterated value sits below the expansion's cancellation floor and no
    # evaluation could meet a tolerance relative to the net value
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        c = rng.uniform(-2, 2)
        x = rng.uniform(0.2, 5.0)
        exponents = rng.uniform(-2, 2, size=3)
        weights = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        for r in range(0, 9):
            via_table = sum(
                w * mellin_derivative(_power_function(a), c, r, x)
                for w, a in zip(weights, exponents)
            )
            iterated = sum(
                w * (a + c) ** r * x**a for w, a in zip(weights, exponents)
            )
            scale = max(
                sum(
                    abs(w) * _expansion_magnitude(_power_function(a), c, r, x)
                    for w, a in zip(weights, exponents)
                ),
                1e-30,
            )
            worst = max(worst, abs(via_table - iterated) / scale)
    return CheckResult(
        "derivative expansion vs iteration",
        worst <= 1e-10,
        f"max conditioned rel dev {worst:.2e} over 100 draws, r<=8 (limit 1e-10)",
    )


def check_eigenfunctions():
    # the expansion cancels to the rounding floor of its own terms when
    # a + c = 0, so deviations are measured against that floor's scale
    worst = 0.0
    for c in (-1.0, 0.0, 0.5, 1.0, 2.0):
        for a in (-2, -1, 0, 1, 2):
            f = _power_function(a)
            for r in range(0, 7):
                for x in (0.31, 1.0, 4.7):
                    got = mellin_derivative(f, c, r, x)
                    want = (a + c) ** r * x**a
                    scale = max(abs(want), _expansion_magnitude(f, c, r, x) * 1e-3)
                    worst = max(worst, abs(got - want) / max(scale, 1e-30))
    return CheckResult(
        "power eigenfunction law",
        worst <= 1e-12,
        f"max conditioned rel dev {worst:.2e} for x^a, a in [-2,2], r<=6",
    )


def check_translation_limit():
    c, x = 0.7, 1.3
    f = HalfLineFunction(
        lambda s: np.exp(-s), lambda s, k: (-1.0) ** k * np.exp(-s), name="exp(-x)"
    )
    target = mellin_derivative(f, c, 1, x)
    errs = []
    for k in (3, 4, 5, 6):
        h = 1.0 + 10.0**-k
        quotient = (mellin_translate(f, h, c)(x) - f(x)) / (h - 1.0)
        errs.append(abs(quotient - target))
    decreasing = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    first_order = all(3.0 <= e1 / e2 <= 30.0 for e1, e2 in zip(errs, errs[1:]))
    return CheckResult(
        "translation difference quotient",
        decreasing and first_order,
        "errors " + ", ".join(f"{e:.2e}" for e in errs) + " (ratio ~10 per decade)",
    )


def check_norm_consistency():
    worst = 0.0
    for entry in transform_entries():
        sig = _signal(entry)
        spectral = float(np.exp(log_derivative_norm(entry.model, 0)))
        direct = mellin_l2_norm(sig)
        worst = max(worst, abs(spectral - direct) / direct)
    return CheckResult(
        "derivative norm r=0 vs signal norm",
        worst <= 1e-8,
        f"max rel dev {worst:.2e} (limit 1e-8)",
    )


def check_derivative_spectrum_identity():
    worst = 0.0
    for entry in transform_entries():
        sig = _signal(entry)
        for r in (1, 2, 3):
            worst = max(
                worst, derivative_spectrum_gap(sig, r, t_max=entry.t_max, m=entry.m)
            )
    return CheckResult(
        "derivative-spectrum identity",
        worst <= 1e-5,
        f"max rel gap {worst:.2e} for r in 1..3 (limit 1e-5)",
    )


def check_kernel_delta():
    worst = 0.0
    exact_one = True
    for c in (-1.0, 0.0, 0.5, 1.0):
        if lin_kernel(c, 1.0) != 1.0:
            exact_one = False
        for m in range(1, 101):
            worst = max(
                worst,
                abs(lin_kernel(c, float(np.exp(m)))),
                abs(lin_kernel(c, float(np.exp(-m)))),
            )
    return CheckResult(
        "kernel delta property",
        exact_one and worst <= 1e-14,
        f"kernel(1)=1 exact, max |kernel(e^m)| = {worst:.2e} for |m|<=100",
    )


def check_node_interpolation():
    entry = sampling_entry()
    samples = exp_sample(entry.model, entry.sigma, 64)
    nodes = np.exp(samples.node_u)
    rec = exp_reconstruct(samples, nodes)
    exact = np.array_equal(rec, samples.samples)
    return CheckResult(
        "node interpolation bit-exact", exact, "reconstruction at nodes == samples"
    )


def check_band_consistency():
    worst_out, worst_in = 0.0, 0.0
    for entry in transform_entries():
        sig = _signal(entry)
        spec = mellin_forward(sig, t_max=entry.t_max, m=entry.m)
        truth = entry.model.density_values(spec.t)
        peak = np.abs(truth).max()
        outside = np.abs(spec.t) > entry.model.band
        worst_out = max(worst_out, np.abs(spec.values[outside]).max() / peak)
        worst_in = max(worst_in, np.abs(spec.values - truth).max() / peak)
    ok = worst_out <= 1e-6 and worst_in <= 1e-6
    return CheckResult(
        "band consistency of synthesis",
        ok,
        f"out-of-band {worst_out:.2e}, in-band dev {worst_in:.2e} (limits 1e-6)",
    )


def check_oversampling():
    entry = sampling_entry()
    model = entry.model
    probes = np.exp(np.array([-3.13, -0.77, 0.05, 0.3, 1.9, 4.31]))
    truth = synthesize(model, probes)
    K = 256
    sigma_crit = model.band / np.pi
    errs = {}
    for sigma in (sigma_crit, 1.25 * sigma_crit):
        samples = exp_sample(model, sigma, K)
        errs[sigma] = np.abs(exp_reconstruct(samples, probes) - truth).max()
    e_crit, e_over = errs[sigma_crit], errs[1.25 * sigma_crit]
    return CheckResult(
        "oversampling no worse than critical",
        e_over <= e_crit,
        f"err(1.25x)={e_over:.2e} <= err(critical)={e_crit:.2e}, K={K}",
    )


def check_kernel_vs_sampling():
    entry = sampling_entry()
    model = entry.model
    probes = np.exp(np.array([-1.7, 0.3, 2.41]))
    samples = exp_sample(model, entry.sigma, config.DEFAULT_K)
    rec = exp_reconstruct(samples, probes)
    rec_tail = reconstruction_tail_estimate(samples, probes)
    result = kernel_apply(model, entry.sigma, probes)
    gap = np.abs(result.value - rec)
    budget = result.tail_bound + rec_tail
    ok = bool(np.all(gap <= budget))
    return CheckResult(
        "kernel integral vs sampling series",
        ok,
        f"max gap {gap.max():.2e} within summed estimates {budget.min():.2e}..",
    )


def check_bernstein():
    worst = 0.0
    for entry in corpus():
        for r in (1, 5, 10, 20, 30):
            worst = max(worst, bernstein_ratio(entry.model, r))
    return CheckResult(
        "derivative norm growth bound",
        worst <= 1.0 + 1e-8,
        f"max ratio {worst:.10f} over corpus, r<=30 (limit 1+1e-8)",
    )


def check_sharpness():
    ratio = bernstein_ratio(sharpness_model(), 20)
    return CheckResult(
        "growth bound sharpness",
        ratio >= 0.98,
        f"edge-sliver ratio at r=20 is {ratio:.4f} (needs >= 0.98)",
    )


def check_band_edge_estimation():
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for entry in estimation_entries():
            est = estimate_bandwidth(entry.model, r_max=config.DEFAULT_R_MAX)
            worst = max(worst, abs(est.t_hat - entry.model.band) / entry.model.band)
        # band-1 coverage plus the spectrum route, in one fixture
        est1 = estimate_bandwidth(box_spectrum(band=1.0), r_max=config.DEFAULT_R_MAX)
        worst = max(worst, abs(est1.t_hat - 1.0))
        est2 = estimate_bandwidth(two_interval_model(), r_max=config.DEFAULT_R_MAX)
        worst = max(worst, abs(est2.t_hat - 2.0) / 2.0)
    return CheckResult(
        "band-edge estimator accuracy",
        worst <= 0.05,
        f"max |T_hat - T|/T = {worst:.4f} at r_max=30 (limit 0.05)",
    )


def check_flat_band_closed_forms():
    model = flat_band_model(band=np.pi)
    est = estimate_bandwidth(model, r_max=config.DEFAULT_R_MAX)
    r = np.arange(1, config.DEFAULT_R_MAX + 1)
    roots_exact = np.pi * (2 * r + 1) ** (-1.0 / (2 * r))
    ratios_exact = np.pi * np.sqrt((2 * r + 1.0) / (2 * r + 3.0))
    dev_roots = np.abs(est.roots - roots_exact).max() / np.pi
    dev_ratios = np.abs(est.ratios[:-1] - ratios_exact[:-1]).max() / np.pi
    ok = dev_roots <= 1e-6 and dev_ratios <= 1e-6
    return CheckResult(
        "flat-band closed forms",
        ok,
        f"root dev {dev_roots:.2e}, ratio dev {dev_ratios:.2e} (limits 1e-6)",
    )


def check_scale_covariance():
    base = flat_band_model(band=np.pi)
    shift = 0.83

    def shifted_density(t):
        return np.exp(1j * shift * t) * base.density_values(t)

    shifted = type(base)(
        c=base.c, band=base.band, density=shifted_density, name="flat-shifted"
    )
    est_a = estimate_bandwidth(base, r_max=20)
    est_b = estimate_bandwidth(shifted, r_max=20)
    dev = np.abs(est_a.roots - est_b.roots).max() / est_a.roots.max()
    return CheckResult(
        "estimator modulation covariance",
        dev <= 1e-10,
        f"max rel dev {dev:.2e} under spectral phase shift (limit 1e-10)",
    )


def check_root_monotonicity():
    ok = True
    detail = []
    for entry in corpus():
        est = estimate_bandwidth(entry.model, r_max=config.DEFAULT_R_MAX)
        drops = np.diff(est.roots)
        if len(drops) and drops.min() < -1e-12 * est.roots.max():
            ok = False
            detail.append(entry.name)
    return CheckResult(
        "root sequence monotone",
        ok,
        "T_hat_r nondecreasing on corpus" + (f"; failed: {detail}" if detail else ""),
    )


def check_boundary_decay():
    probes = np.exp(RECORDED["boundary_probe_u"])
    outer = np.abs(RECORDED["boundary_probe_u"]) >= 14.0
    worst = 0.0
    for entry in corpus("boundary"):
        for k in (0, 1, 2):
            mags = boundary_decay_probe(entry.model, k, probes)
            worst = max(worst, mags[outer].max() / mags.max())
    return CheckResult(
        "boundary decay of weighted derivatives",
        worst <= 1e-2,
        f"max outer/peak = {worst:.2e} at |log x| >= 14 (limit 1e-2)",
    )


def check_output_determinism():
    entry = transform_entries()[2]
    grid = GeometricGrid(-13.0, 13.0, 512)
    sig = SampledSignal(grid=grid, values=entry.model.values(grid.x), c=entry.model.c)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = mellin_forward(sig, t_max=entry.t_max, m=513)
    blobs = []
    with tempfile.TemporaryDirectory() as tmp:
        for i in (0, 1):
            path = os.path.join(tmp, f"spec{i}.csv")
            io.write_spectrum_csv(path, spec)
            with open(path, "rb") as fh:
                blobs.append(fh.read())
    return CheckResult(
        "output byte determinism", blobs[0] == blobs[1], "identical CSV bytes across runs"
    )


VERIFICATION_CHECKS = [
    check_transform_linearity,
    check_transform_bound,
    check_round_trip,
    check_plancherel,
    check_refinement_monotonicity,
    check_stirling_boundary,
    check_stirling_iteration,
    check_eigenfunctions,
    check_translation_limit,
    check_norm_consistency,
    check_derivative_spectrum_identity,
    check_kernel_delta,
    check_node_interpolation,
    check_band_consistency,
    check_oversampling,
    check_kernel_vs_sampling,
    check_bernstein,
    check_sharpness,
    check_band_edge_estimation,
    check_flat_band_closed_forms,
    check_scale_covariance,
    check_root_monotonicity,
    check_boundary_decay,
    check_output_determinism,
]


def run_verification(checks=None):
    """Run the invariant suite; returns the list of CheckResult rows."""
    rows = []
    for check in checks or VERIFICATION_CHECKS:
        try:
            rows.append(check())
        except MellinKitError as exc:
            rows.append(CheckResult(check.__name__, False, f"error: {exc}"))
    return rows
