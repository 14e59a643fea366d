"""File formats: CSV signals/spectra/densities and JSON sidecars.

All numeric output uses 17 significant digits, which round-trips doubles
exactly and makes outputs byte-identical across runs.
"""

import csv
import json

import numpy as np

from .bandlimited import BandlimitedModel, ExpSampleSet
from .errors import ValidationError
from .grids import GeometricGrid, SampledSignal, Spectrum

__all__ = [
    "write_signal_csv",
    "read_signal_csv",
    "write_meta_json",
    "read_meta_json",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "read_density_csv",
    "write_samples_json",
    "read_samples_json",
    "write_bandwidth_json",
]

SIGNAL_HEADER = ["x", "re", "im"]
SPECTRUM_HEADER = ["t", "re", "im"]


def _fmt(v):
    return format(float(v), ".17g")


def _write_rows(path, header, cols):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in zip(*cols):
            writer.writerow([_fmt(v) for v in row])


def _read_rows(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty file") from None
        if [h.strip() for h in got] != header:
            raise ValidationError(
                f"{path}: line 1: expected header {','.join(header)}, got "
                f"{','.join(got)}"
            )
        cols = [[] for _ in header]
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}: line {lineno}: expected {len(header)} fields, got "
                    f"{len(row)}"
                )
            for i, field in enumerate(row):
                try:
                    cols[i].append(float(field))
                except ValueError:
                    raise ValidationError(
                        f"{path}: line {lineno}: field '{header[i]}' is not a "
                        f"number: {field!r}"
                    ) from None
    if not cols[0]:
        raise ValidationError(f"{path}: no data rows")
    return [np.array(col) for col in cols]


def write_signal_csv(path, signal):
    _write_rows(path, SIGNAL_HEADER, (signal.x, signal.values.real, signal.values.imag))


def write_meta_json(path, signal):
    grid = signal.grid
    payload = {"c": signal.c, "u_min": grid.u_min, "u_max": grid.u_max, "n": grid.n}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_meta_json(path):
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    try:
        grid = GeometricGrid(
            u_min=float(payload["u_min"]),
            u_max=float(payload["u_max"]),
            n=int(payload["n"]),
        )
        return grid, float(payload["c"])
    except KeyError as exc:
        raise ValidationError(f"{path}: missing metadata field {exc}") from None


def read_signal_csv(path, meta_path):
    grid, c = read_meta_json(meta_path)
    x, re, im = _read_rows(path, SIGNAL_HEADER)
    if len(x) != grid.n:
        raise ValidationError(
            f"{path}: {len(x)} rows but metadata declares n={grid.n}"
        )
    if not np.all(np.diff(x) > 0):
        raise ValidationError(f"{path}: x column must be strictly increasing")
    if not np.allclose(x, grid.x, rtol=1e-12, atol=0.0):
        raise ValidationError(f"{path}: x column disagrees with the metadata grid")
    return SampledSignal(grid=grid, values=re + 1j * im, c=c)


def write_spectrum_csv(path, spectrum):
    _write_rows(
        path, SPECTRUM_HEADER, (spectrum.t, spectrum.values.real, spectrum.values.imag)
    )


def _check_uniform_symmetric(path, t):
    m = len(t)
    if m < 3 or m % 2 == 0:
        raise ValidationError(f"{path}: need an odd number >= 3 of rows, got {m}")
    d = np.diff(t)
    if not np.all(d > 0):
        raise ValidationError(f"{path}: t column must be strictly increasing")
    if not np.allclose(d, d[0], rtol=1e-9, atol=1e-12 * abs(t[-1])):
        raise ValidationError(f"{path}: t column is not uniformly spaced")
    if abs(t[0] + t[-1]) > 1e-9 * abs(t[-1]):
        raise ValidationError(f"{path}: t column is not symmetric about 0")
    return float(t[-1]), m


def read_spectrum_csv(path, c):
    t, re, im = _read_rows(path, SPECTRUM_HEADER)
    t_max, m = _check_uniform_symmetric(path, t)
    return Spectrum(c=float(c), t_max=t_max, m=m, values=re + 1j * im)


def read_density_csv(path, c, band=None, name=None):
    """Spectral-density CSV (header t,re,im, uniform symmetric knots) to a
    piecewise-linear BandlimitedModel."""
    t, re, im = _read_rows(path, SPECTRUM_HEADER)
    t_max, _ = _check_uniform_symmetric(path, t)
    band = t_max if band is None else float(band)
    if t_max > band * (1 + 1e-12):
        raise ValidationError(f"{path}: knots extend beyond the stated band {band}")
    return BandlimitedModel(
        c=float(c),
        band=band,
        knot_values=re + 1j * im,
        name=name or str(path),
    )


def write_samples_json(path, samples):
    payload = {
        "c": samples.c,
        "sigma": samples.sigma,
        "K": samples.K,
        "samples": [[float(v.real), float(v.imag)] for v in samples.samples],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_samples_json(path):
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    try:
        pairs = payload["samples"]
        values = np.array([complex(re, im) for re, im in pairs])
        return ExpSampleSet(
            c=float(payload["c"]),
            sigma=float(payload["sigma"]),
            K=int(payload["K"]),
            samples=values,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed sample set: {exc}") from None


def write_bandwidth_json(path, estimate):
    with open(path, "w") as fh:
        fh.write(estimate.to_json(indent=2))
        fh.write("\n")
