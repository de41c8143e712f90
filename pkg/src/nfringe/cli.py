"""Command-line front end.

Commands map one-to-one onto the scan drivers::

    nfringe scan1d     --n 4 --out fringe.csv --plot fringe.png
    nfringe scan2d     --scenario run.ini --format json --out grid.json
    nfringe g1scan     --n 4 --delta1-range -6.2832 6.2832
    nfringe noise-sweep --n 4 --sigmas 0,0.25,0.5,1.0 --out sweep.csv
    nfringe sample     --n 4 --samples 100000 --seed 7 --out events.csv
    nfringe feasibility

A scenario file (see :mod:`nfringe.scenario`) provides the base
configuration; command-line flags override individual fields.  Angles are
radians and theta is measured from the normal to the chain axis.  Randomized
commands default to seed 0.

Exit codes: 0 success, 2 configuration error, 3 size-cap refusal,
4 numerical/fit failure.  Errors print one line to stderr in the form
``error:<category>: message``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .errors import CapExceededError, ConfigError, FitError
from .geometry import FeasibilityParams
from .scenario import Scenario, load_scenario
from . import scans

# Reference physical parameter set for the feasibility command (SI units).
_REF = {
    "detector_size": 1e-3,
    "theta_deg": 30.0,
    "dtheta_deg": 0.1,
    "delta_d": 0.1e-6,
    "dk_rel": 1e-7,
    "spacing": 5e-6,
    "wavelength": 800e-9,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfringe",
        description="Coincidence fringes of a linear emitter chain: scans, "
        "noise sweeps, event sampling and feasibility bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="FILE", help="scenario file (INI)")
    common.add_argument("--n", type=int, dest="n_atoms", help="number of emitters")
    common.add_argument(
        "--spacing", type=float, dest="spacing_over_lambda", help="emitter spacing d/lambda"
    )
    common.add_argument(
        "--delta1-range",
        nargs=2,
        type=float,
        metavar=("MIN", "MAX"),
        help="delta_1 grid range in radians",
    )
    common.add_argument("--points", type=int, help="grid points per axis")
    common.add_argument("--sigma", type=float, help="phase jitter std dev (radians)")
    common.add_argument("--samples", type=int, help="jitter draws per point / sampler events")
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")
    common.add_argument("--format", choices=("csv", "json"), dest="out_format")
    common.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    common.add_argument("--plot", metavar="FILE", help="also render a figure to FILE")

    sub.add_parser("scan1d", parents=[common], help="G vs delta_1").set_defaults(func=_cmd_scan1d)
    sub.add_parser("scan2d", parents=[common], help="G over delta_1 x delta_2").set_defaults(
        func=_cmd_scan2d
    )
    sub.add_parser(
        "g1scan", parents=[common], help="first-order grating curve"
    ).set_defaults(func=_cmd_g1scan)
    p_noise = sub.add_parser(
        "noise-sweep", parents=[common], help="fitted visibility vs jitter sigma"
    )
    p_noise.add_argument(
        "--sigmas", help="comma-separated sigma list (falls back to --sigma or scenario)"
    )
    p_noise.set_defaults(func=_cmd_noise_sweep)
    sub.add_parser(
        "sample", parents=[common], help="draw coincidence events from the fringe density"
    ).set_defaults(func=_cmd_sample)
    p_feas = sub.add_parser(
        "feasibility", parents=[common], help="far-field bound and phase-error budget"
    )
    p_feas.add_argument("--detector-size", type=float, default=_REF["detector_size"],
                        help="detector extent s in metres")
    p_feas.add_argument("--theta-deg", type=float, default=_REF["theta_deg"],
                        help="observation angle from the chain normal, degrees")
    p_feas.add_argument("--dtheta-deg", type=float, default=_REF["dtheta_deg"],
                        help="pointing uncertainty, degrees")
    p_feas.add_argument("--delta-d", type=float, default=_REF["delta_d"],
                        help="spacing uncertainty, metres")
    p_feas.add_argument("--dk-rel", type=float, default=_REF["dk_rel"],
                        help="relative wavenumber uncertainty")
    p_feas.add_argument("--d", type=float, default=_REF["spacing"],
                        help="emitter spacing, metres")
    p_feas.add_argument("--wavelength", type=float, default=_REF["wavelength"],
                        help="wavelength, metres")
    p_feas.add_argument("--safety", type=float, default=1.0,
                        help="safety factor on the far-field bound")
    p_feas.set_defaults(func=_cmd_feasibility)
    return parser


def _scenario_from(args) -> Scenario:
    sc = load_scenario(args.scenario) if args.scenario else Scenario()
    updates = {}
    if args.n_atoms is not None:
        updates["n_atoms"] = args.n_atoms
    if args.spacing_over_lambda is not None:
        updates["spacing_over_lambda"] = args.spacing_over_lambda
    if args.delta1_range is not None:
        updates["delta1_min"], updates["delta1_max"] = args.delta1_range
    if args.points is not None:
        updates["points"] = args.points
        updates["noise_points"] = args.points
    if args.sigma is not None:
        updates["sigma"] = args.sigma
    if args.samples is not None:
        updates["n_samples"] = args.samples
        updates["n_events"] = args.samples
    if args.seed is not None:
        updates["noise_seed"] = args.seed
        updates["sampler_seed"] = args.seed
    if args.out_format is not None:
        updates["out_format"] = args.out_format
    return dataclasses.replace(sc, **updates) if updates else sc


def _open_out(args):
    if args.out and args.out != "-":
        return open(args.out, "w", encoding="utf-8"), True
    return sys.stdout, False


def _emit_grid(grid, sc: Scenario, args, value_label: str = "G") -> None:
    stream, close = _open_out(args)
    try:
        if sc.out_format == "json":
            grid.write_json(stream)
        else:
            grid.write_csv(stream, value_label=value_label)
    finally:
        if close:
            stream.close()


def _cmd_scan1d(args) -> int:
    sc = _scenario_from(args)
    grid = scans.scan1d(sc)
    _emit_grid(grid, sc, args)
    if args.plot:
        from . import plots

        plots.plot_curve(grid, args.plot)
    return 0


def _cmd_scan2d(args) -> int:
    sc = _scenario_from(args)
    grid = scans.scan2d(sc)
    _emit_grid(grid, sc, args)
    if args.plot:
        from . import plots

        plots.plot_map(grid, args.plot)
    return 0


def _cmd_g1scan(args) -> int:
    sc = _scenario_from(args)
    grid = scans.g1scan(sc)
    _emit_grid(grid, sc, args, value_label="g1")
    if args.plot:
        from . import plots

        plots.plot_curve(grid, args.plot, ylabel=r"$G^{(1)}$")
    return 0


def _cmd_noise_sweep(args) -> int:
    sc = _scenario_from(args)
    if args.sigmas:
        try:
            sigmas = [float(s) for s in args.sigmas.split(",")]
        except ValueError:
            raise ConfigError(f"--sigmas: cannot parse {args.sigmas!r}") from None
    else:
        sigmas = [sc.sigma]
    rows = scans.noise_sweep(sc, sigmas)
    stream, close = _open_out(args)
    try:
        if sc.out_format == "json":
            json.dump([dataclasses.asdict(r) for r in rows], stream, indent=1)
            stream.write("\n")
        else:
            stream.write("sigma,visibility,standard_error,analytic\n")
            for r in rows:
                stream.write(f"{r.sigma!r},{r.visibility!r},{r.standard_error!r},{r.analytic!r}\n")
    finally:
        if close:
            stream.close()
    if args.plot:
        from . import plots

        plots.plot_noise_sweep(rows, args.plot)
    return 0


def _cmd_sample(args) -> int:
    sc = _scenario_from(args)
    batch, est = scans.run_sampler(sc)
    stream, close = _open_out(args)
    try:
        if sc.out_format == "json":
            doc = {
                "seed": batch.seed,
                "range": list(batch.range),
                "visibility": est.visibility,
                "standard_error": est.standard_error,
                "delta1_values": batch.delta1_values.tolist(),
            }
            json.dump(doc, stream, indent=1)
            stream.write("\n")
        else:
            stream.write(f"# seed = {batch.seed}\n")
            stream.write(f"# range = {batch.range[0]!r},{batch.range[1]!r}\n")
            stream.write(f"# visibility = {est.visibility!r}\n")
            stream.write(f"# standard_error = {est.standard_error!r}\n")
            stream.write("delta1\n")
            for v in batch.delta1_values.tolist():
                stream.write(f"{v!r}\n")
    finally:
        if close:
            stream.close()
    if args.plot:
        from . import detectors, plots

        plots.plot_events(batch, sc.n_bins, detectors.fringe_multiplier(sc.n_atoms), args.plot)
    return 0


def _cmd_feasibility(args) -> int:
    import math

    sc = _scenario_from(args)
    params = FeasibilityParams(
        detector_size=args.detector_size,
        theta=math.radians(args.theta_deg),
        delta_theta=math.radians(args.dtheta_deg),
        delta_d=args.delta_d,
        delta_k_rel=args.dk_rel,
        spacing=args.d,
        wavelength=args.wavelength,
    )
    report = scans.feasibility_report(sc, params, safety_factor=args.safety)
    stream, close = _open_out(args)
    try:
        if sc.out_format == "json":
            json.dump(dataclasses.asdict(report), stream, indent=1)
            stream.write("\n")
        else:
            for note in report.notes:
                stream.write(f"# note: {note}\n")
            stream.write("quantity,value\n")
            stream.write(f"n_atoms,{report.n_atoms}\n")
            stream.write(f"safety_factor,{report.safety_factor!r}\n")
            stream.write(f"min_distance_m,{report.min_distance!r}\n")
            stream.write(f"phase_resolution_rad,{report.phase_resolution!r}\n")
            stream.write(f"sigma_rad,{report.sigma!r}\n")
            stream.write(f"predicted_contrast,{report.predicted_contrast!r}\n")
    finally:
        if close:
            stream.close()
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error:config: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error:cap: {exc}", file=sys.stderr)
        return 3
    except FitError as exc:
        print(f"error:numeric: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error:config: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
