"""Command-line entry point: detuning scans with reproducible outputs."""

import argparse
import sys
import time
from dataclasses import replace

import numpy as np

from . import __version__, _kernels
from .config import OUTDIR_ENV, parse_config, parse_scan
from .exceptions import EitlensError
from .outputs import write_image, write_manifest, write_spectrum
from .scenario import (
    preset,
    preset_names,
    run_spectrum,
    scenario_from_dict,
    scenario_to_dict,
    thin_cloud_disk_average,
    with_settings,
)

_EXIT_CODES = {
    "validation": 2,
    "parse-error": 2,
    "unknown-preset": 2,
    "io-error": 3,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eitlens",
        description=(
            "Steady-state Maxwell-Bloch scan of probe transmission through a "
            "cold-atom EIT cloud with a focused coupling beam."
        ),
    )
    parser.add_argument(
        "--scenario", help=f"preset name ({', '.join(preset_names())})"
    )
    parser.add_argument("--config", help="YAML config file (flags override it)")
    parser.add_argument(
        "--scan",
        help="probe detuning scan START:STOP:COUNT in units of gamma_e",
    )
    parser.add_argument(
        "--no-lensing",
        action="store_true",
        help="drop the transverse diffraction term (1-D pointwise propagation)",
    )
    parser.add_argument("--grid", type=int, help="transverse grid points per axis")
    parser.add_argument("--window", type=float, help="transverse window (microns)")
    parser.add_argument("--dz", type=float, help="axial step (microns)")
    parser.add_argument("--table", type=int, help="response-table points per axis")
    parser.add_argument(
        "--verify",
        action="store_true",
        help="solve the atomic response per grid point instead of the table",
    )
    parser.add_argument("--out", help=f"output directory (default ${OUTDIR_ENV} or ./eitlens-out)")
    parser.add_argument("--jobs", type=int, help="parallel scan workers")
    parser.add_argument(
        "--images", action="store_true", help="also write per-detuning exit images"
    )
    return parser


def _flag_overrides(args):
    overrides = {}
    if args.scenario is not None:
        overrides["scenario"] = args.scenario
    if args.scan is not None:
        overrides["scan"] = parse_scan(args.scan)
    if args.no_lensing:
        overrides["lensing"] = False
    if args.grid is not None:
        overrides["grid_points"] = args.grid
    if args.window is not None:
        overrides["window"] = args.window * 1e-6
    if args.dz is not None:
        overrides["dz"] = args.dz * 1e-6
    if args.table is not None:
        overrides["table_points"] = args.table
    if args.verify:
        overrides["verify"] = True
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.images:
        overrides["write_images"] = True
    return overrides


def _resolve_scenario(cfg):
    if isinstance(cfg.scenario, dict):
        scenario = scenario_from_dict(cfg.scenario)
        if cfg.grid_points is not None or cfg.window is not None:
            from .grid import TransverseGrid

            grid = scenario.grid
            scenario = replace(
                scenario,
                grid=TransverseGrid(
                    nx=cfg.grid_points or grid.nx,
                    ny=cfg.grid_points or grid.ny,
                    lx=cfg.window or grid.lx,
                    ly=cfg.window or grid.ly,
                ),
            )
        if cfg.dz is not None:
            scenario = with_settings(scenario, dz=cfg.dz)
        if cfg.table_points is not None:
            scenario = replace(scenario, table_points=cfg.table_points)
        if not cfg.lensing:
            scenario = with_settings(scenario, lensing=False)
        return scenario
    kwargs = {"lensing": cfg.lensing}
    if cfg.grid_points is not None:
        kwargs["grid_points"] = cfg.grid_points
    if cfg.window is not None:
        kwargs["window"] = cfg.window
    if cfg.dz is not None:
        kwargs["dz"] = cfg.dz
    if cfg.table_points is not None:
        kwargs["table_points"] = cfg.table_points
    return preset(cfg.scenario, **kwargs)


def _thin_cloud_check(scenario, spectrum):
    """Compare the scan against the analytic thin-cloud transmission."""
    deviations = []
    for dp, t in zip(spectrum.delta_p, spectrum.transmission):
        analytic = thin_cloud_disk_average(scenario, dp)
        deviations.append(abs(t - analytic) / analytic)
    worst = float(max(deviations))
    return {"max_relative_deviation": worst, "pass": bool(worst <= 0.02)}


def run(cfg):
    """Execute a configured scan; returns the manifest mapping.

    All computation happens before any file is created, so failed runs
    leave no partial outputs.
    """
    scenario = _resolve_scenario(cfg)
    deltas = np.asarray(cfg.detunings())

    start = time.perf_counter()
    result = run_spectrum(
        scenario,
        deltas,
        jobs=cfg.jobs,
        verify=cfg.verify,
        keep_images=cfg.write_images,
    )
    if cfg.write_images:
        spectrum, images = result
    else:
        spectrum, images = result, []
    elapsed = time.perf_counter() - start

    manifest = {
        "software": {"name": "eitlens", "version": __version__},
        "scenario": scenario_to_dict(scenario),
        "run": {
            "scan_gamma_e": {
                "start": cfg.scan[0],
                "stop": cfg.scan[1],
                "count": cfg.scan[2],
            },
            "lensing": scenario.settings.lensing,
            "verify_mode": cfg.verify,
            "response_backend": _kernels.BACKEND,
            "jobs": cfg.jobs or 1,
            "wall_clock_s": elapsed,
            "write_images": cfg.write_images,
        },
        "diagnostics": {
            "n_z_steps": int(
                round(
                    (scenario.settings.z_end - scenario.settings.z_start)
                    / scenario.settings.dz
                )
            ),
            "center_disk_radius_m": scenario.disk_radius,
            "transmission_min": float(spectrum.transmission.min()),
            "transmission_max": float(spectrum.transmission.max()),
        },
        "config_overridden_by_flags": list(cfg.overridden),
    }
    if scenario.name == "fig4":
        manifest["thin_cloud_analytic_comparison"] = _thin_cloud_check(
            scenario, spectrum
        )

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    probe = cfg.out_dir / ".write-test"
    try:
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        from .exceptions import OutputError

        raise OutputError(f"output directory not writable: {exc}")

    write_spectrum(spectrum, cfg.out_dir)
    for image in images:
        write_image(image, cfg.out_dir)
    import yaml

    (cfg.out_dir / "scenario.yaml").write_text(
        yaml.safe_dump(scenario_to_dict(scenario), sort_keys=True)
    )
    write_manifest(manifest, cfg.out_dir)
    return manifest


def _join_scan_value(argv):
    """Let ``--scan -2:2:81`` work: argparse would read the leading dash
    of a negative start as an option, so fold the value into one token."""
    argv = list(argv)
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--scan" and i + 1 < len(argv):
            out.append(f"--scan={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_join_scan_value(argv))
    try:
        cfg = parse_config(args.config, _flag_overrides(args))
        run(cfg)
    except EitlensError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return _EXIT_CODES.get(exc.category, 4)
    return 0


if __name__ == "__main__":
    sys.exit(main())
