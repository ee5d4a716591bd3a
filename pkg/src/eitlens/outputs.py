"""Writers for spectra, images and the run manifest.

All formats are zero-dependency readable: CSV tables, binary portable
graymaps (P5, 16-bit) plus a full-precision ``.npy`` grid with a YAML
sidecar, and YAML manifests.  Identical inputs produce byte-identical
spectrum and grid files.
"""

from pathlib import Path

import numpy as np
import yaml

from .exceptions import OutputError
from .levels import GAMMA_E_D2

SPECTRUM_HEADER = "delta_p_over_gamma_e,transmission"


def _fmt(value):
    return format(float(value), ".12g")


def spectrum_filename(result):
    suffix = "" if result.lensing else "_nolens"
    return f"spectrum_{result.scenario}{suffix}.csv"


def write_spectrum(result, out_dir):
    """Write a detuning/transmission CSV; returns the file path."""
    if len(result.delta_p) == 0:
        raise OutputError("refusing to write an empty spectrum")
    out_dir = Path(out_dir)
    lines = [SPECTRUM_HEADER]
    for dp, t in zip(result.delta_p, result.transmission):
        lines.append(f"{_fmt(dp / GAMMA_E_D2)},{_fmt(t)}")
    path = out_dir / spectrum_filename(result)
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}")
    return path


def read_spectrum(path):
    """Load a spectrum CSV back into (delta_p_over_gamma_e, transmission)."""
    rows = Path(path).read_text().strip().splitlines()
    if rows[0] != SPECTRUM_HEADER:
        raise OutputError(f"unexpected spectrum header in {path}")
    data = np.array([[float(v) for v in row.split(",")] for row in rows[1:]])
    return data[:, 0], data[:, 1]


def image_basename(image):
    return f"image_{image.scenario}_dp{image.delta_p / GAMMA_E_D2:+.4f}"


def write_image(image, out_dir):
    """Write graymap + raw grid + metadata; returns a dict of paths.

    The graymap is scaled to the recorded min/max (never silently
    clipped); the ``.npy`` grid keeps full precision and round-trips
    losslessly through :func:`read_image_grid`.
    """
    out_dir = Path(out_dir)
    base = image_basename(image)
    intensity = np.asarray(image.intensity, dtype=float)
    lo = float(intensity.min())
    hi = float(intensity.max())
    if hi > lo:
        scaled = (intensity - lo) / (hi - lo)
    else:
        scaled = np.zeros_like(intensity)
    pixels = np.round(scaled * 65535).astype(">u2")

    paths = {
        "graymap": out_dir / f"{base}.pgm",
        "grid": out_dir / f"{base}.npy",
        "meta": out_dir / f"{base}.yaml",
    }
    try:
        # PGM raster: rows top to bottom are the y axis, columns are x.
        header = f"P5\n{image.grid.nx} {image.grid.ny}\n65535\n".encode("ascii")
        paths["graymap"].write_bytes(header + pixels.T.tobytes())
        np.save(paths["grid"], intensity)
        meta = {
            "delta_p_over_gamma_e": float(image.delta_p / GAMMA_E_D2),
            "scenario": image.scenario,
            "nx": image.grid.nx,
            "ny": image.grid.ny,
            "window_x_m": image.grid.lx,
            "window_y_m": image.grid.ly,
            "z_exit_m": image.z_exit,
            "scale_min": lo,
            "scale_max": hi,
        }
        paths["meta"].write_text(yaml.safe_dump(meta, sort_keys=True))
    except OSError as exc:
        raise OutputError(f"cannot write image files: {exc}")
    return paths


def read_image_grid(path):
    """Load the raw intensity grid written by :func:`write_image`."""
    return np.load(path)


def write_manifest(manifest, out_dir):
    """Write the run manifest as YAML; returns the file path."""
    path = Path(out_dir) / "manifest.yaml"
    try:
        path.write_text(yaml.safe_dump(manifest, sort_keys=True))
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}")
    return path
