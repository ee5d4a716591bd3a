"""Run configuration: file parsing, flag merging, validation."""

import math
import os
from dataclasses import dataclass
from pathlib import Path

import yaml

from .exceptions import ConfigError
from .levels import GAMMA_E_D2

OUTDIR_ENV = "EITLENS_OUTDIR"

_TOP_KEYS = {
    "scenario",
    "scan",
    "lensing",
    "out_dir",
    "grid",
    "table_points",
    "verify",
    "jobs",
    "images",
}
_GRID_KEYS = {"points", "window_um", "dz_um"}
_SCAN_KEYS = {"start", "stop", "count"}


@dataclass
class RunConfig:
    """Validated inputs of one CLI run.

    ``scan`` is (start, stop, count) in units of gamma_e; grid overrides
    are SI (meters) after parsing.
    """

    scenario: str | dict = "fig3b"
    scan: tuple = (-2.0, 2.0, 81)
    lensing: bool = True
    out_dir: Path | None = None
    grid_points: int | None = None
    window: float | None = None
    dz: float | None = None
    table_points: int | None = None
    verify: bool = False
    jobs: int | None = None
    write_images: bool = False
    overridden: tuple = ()

    def detunings(self):
        """Scan detunings in rad/s."""
        start, stop, count = self.scan
        if count == 1:
            values = [start]
        else:
            step = (stop - start) / (count - 1)
            values = [start + i * step for i in range(count)]
        return [v * GAMMA_E_D2 for v in values]


def parse_scan(text):
    """Parse START:STOP:COUNT (gamma_e units) into a (float, float, int)."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(
            f"scan must be START:STOP:COUNT, got {text!r}", category="parse-error"
        )
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad scan value in {text!r}: {exc}", category="parse-error")
    return start, stop, count


def _check_keys(mapping, allowed, where, problems):
    for key in mapping:
        if key not in allowed:
            problems.append(f"unknown key {key!r} in {where}")


def _load_file(path):
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}", category="parse-error")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}", category="parse-error")
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping: {path}", category="parse-error")
    return data


def parse_config(path=None, overrides=None):
    """Build a validated RunConfig from a file and/or flag overrides.

    Flag overrides win over file values; the keys they displaced are
    recorded in ``RunConfig.overridden`` for the manifest.  Unknown keys
    and invalid values are all reported together.
    """
    overrides = dict(overrides or {})
    problems = []
    cfg = RunConfig()
    file_values = {}

    if path is not None:
        data = _load_file(path)
        _check_keys(data, _TOP_KEYS, "config file", problems)
        if "grid" in data:
            grid = data["grid"] or {}
            if not isinstance(grid, dict):
                problems.append("grid section must be a mapping")
                grid = {}
            _check_keys(grid, _GRID_KEYS, "grid section", problems)
            if "points" in grid:
                file_values["grid_points"] = int(grid["points"])
            if "window_um" in grid:
                file_values["window"] = float(grid["window_um"]) * 1e-6
            if "dz_um" in grid:
                file_values["dz"] = float(grid["dz_um"]) * 1e-6
        if "scan" in data:
            scan = data["scan"]
            if isinstance(scan, str):
                file_values["scan"] = parse_scan(scan)
            elif isinstance(scan, dict):
                _check_keys(scan, _SCAN_KEYS, "scan section", problems)
                try:
                    file_values["scan"] = (
                        float(scan["start"]),
                        float(scan["stop"]),
                        int(scan["count"]),
                    )
                except KeyError as exc:
                    problems.append(f"scan section missing {exc}")
            else:
                problems.append("scan must be a mapping or START:STOP:COUNT string")
        for key, attr in (
            ("scenario", "scenario"),
            ("lensing", "lensing"),
            ("table_points", "table_points"),
            ("verify", "verify"),
            ("jobs", "jobs"),
            ("images", "write_images"),
        ):
            if key in data:
                file_values[attr] = data[key]
        if "out_dir" in data:
            file_values["out_dir"] = Path(data["out_dir"])

    merged = dict(file_values)
    overridden = sorted(k for k in overrides if k in file_values)
    merged.update(overrides)

    for key, value in merged.items():
        setattr(cfg, key, value)
    cfg.overridden = tuple(overridden)

    if cfg.out_dir is None:
        env = os.environ.get(OUTDIR_ENV)
        cfg.out_dir = Path(env) if env else Path("eitlens-out")
    cfg.out_dir = Path(cfg.out_dir)

    start, stop, count = cfg.scan
    if count < 1:
        problems.append("scan count must be >= 1")
    if count > 1 and not start < stop:
        problems.append("scan start must be below stop when count > 1")
    if not all(math.isfinite(v) for v in (start, stop)):
        problems.append("scan bounds must be finite")
    if cfg.grid_points is not None and cfg.grid_points < 16:
        problems.append("grid points must be >= 16")
    if cfg.window is not None and cfg.window <= 0:
        problems.append("window must be positive")
    if cfg.dz is not None and cfg.dz <= 0:
        problems.append("dz must be positive")
    if cfg.table_points is not None and cfg.table_points < 8:
        problems.append("table points must be >= 8")
    if cfg.jobs is not None and cfg.jobs < 1:
        problems.append("jobs must be >= 1")

    if problems:
        raise ConfigError("; ".join(problems))
    return cfg
