"""Command-line front end.

Subcommands: classify, window, spectrum, energy, regime-map, general-spectrum.
All inputs are in natural units (c = 1) unless ``--si`` is given.

Exit codes: 0 ok, 2 validation error, 3 quadrature tolerance not met,
4 energy conservation check failed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from fractions import Fraction

import numpy as np
from scipy.constants import speed_of_light

from . import kinematics as kin
from . import records
from .radiance import DiscreteModes, EmissionQuery, Mode, TabulatedDensity, angular_power_general
from .spectrum import McConfig, QuadratureConfig, energy_report, mc_oracle, spectrum_sweep

EXIT_OK, EXIT_VALIDATION, EXIT_TOLERANCE, EXIT_CONSERVATION = 0, 2, 3, 4
CONSERVATION_TOL = 5e-3
MAP_CLASSES = (Fraction(5, 3), Fraction(5, 2), Fraction(5, 1))


class ValidationError(Exception):
    pass


# (dest, flags, type, help); shared by several subcommands
DRIVE_OPTS = {
    "omega0": (("--omega0",), float, "drive angular frequency"),
    "k0": (("--k0",), float, "drive wavenumber (along x1)"),
    "d": (("-d", "--d"), float, "deformation amplitude"),
    "Omega": (("--Omega",), float, "detected photon frequency"),
}
QUAD_OPTS = {
    "rel_tol": (("--rel-tol",), float, "relative quadrature tolerance"),
    "abs_tol": (("--abs-tol",), float, "absolute quadrature tolerance"),
    "max_subdivisions": (("--max-subdivisions",), int, "adaptive subdivision limit"),
}

DEFAULTS = {
    "d": 1.0,
    "phi_grid": 181,
    "points": 101,
    "rel_tol": 1e-6,
    "abs_tol": 1e-14,
    "max_subdivisions": 2000,
    "edge_substitution": True,
    "format": "csv",
    "r_max": 5.0,
    "kappa_max": 5.0,
    "grid": 200,
    "theta_grid": 10,
    "mc_samples": 0,
    "seed": 0,
    "si": False,
}

FLAG_NAMES = {}


def _add(parser, dest, spec):
    flags, typ, help_ = spec
    FLAG_NAMES[dest] = flags[-1]
    parser.add_argument(*flags, dest=dest, type=typ, default=None, help=help_)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radiant", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file mirroring the flags; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, names, formats=True):
        for n in names:
            _add(p, n, DRIVE_OPTS[n])
        p.add_argument("--si", dest="si", action="store_const", const=True, default=None,
                       help="omega0/Omega in rad/s, k0 in rad/m, d in m")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if formats:
            p.add_argument("--format", choices=("csv", "json"), default=None)

    p = sub.add_parser("classify", help="regime of one (omega0, k0, Omega)")
    common(p, ("omega0", "k0", "Omega"), formats=False)

    p = sub.add_parser("window", help="polar bounds of the emission window on a phi grid")
    common(p, ("omega0", "k0", "Omega"))
    _add(p, "phi_grid", (("--phi-grid",), int, "number of azimuths on [-pi, pi]"))

    p = sub.add_parser("spectrum", help="P(Omega) on a symmetric grid")
    common(p, ("omega0", "k0", "d"))
    _add(p, "points", (("--points",), int, "number of interior grid points"))
    for n, spec in QUAD_OPTS.items():
        _add(p, n, spec)
    p.add_argument("--no-edge-substitution", dest="edge_substitution", action="store_const",
                   const=False, default=None)
    _add(p, "mc_samples", (("--mc-samples",), int, "also run the Monte Carlo oracle"))
    _add(p, "seed", (("--seed",), int, "oracle seed"))

    p = sub.add_parser("energy", help="radiated energy vs closed-form dissipation rate")
    common(p, ("omega0", "k0", "d"), formats=False)
    for n, spec in QUAD_OPTS.items():
        _add(p, n, spec)

    p = sub.add_parser("regime-map", help="regime of every cell of the (kappa, r) plane")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    _add(p, "r_max", (("--r-max",), float, "largest r"))
    _add(p, "kappa_max", (("--kappa-max",), float, "largest kappa"))
    _add(p, "grid", (("--grid",), int, "cells per axis"))

    p = sub.add_parser("general-spectrum", help="angular density for a tabulated deformation spectrum")
    p.add_argument("--density", dest="density", default=None, help="JSON density or mode list")
    FLAG_NAMES["density"] = "--density"
    p.add_argument("--Omega", dest="Omega", type=float, action="append", default=None)
    FLAG_NAMES["Omega"] = "--Omega"
    _add(p, "theta_grid", (("--theta-grid",), int, "polar samples on [0, pi/2]"))
    _add(p, "phi_grid", (("--phi-grid",), int, "azimuths on [-pi, pi]"))
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    return parser


def _merge(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    """Flags override config file values, config overrides built-in defaults."""
    cmd = args.command
    known = {k for k in vars(args) if k not in ("command", "config")}
    values = {k: v for k, v in DEFAULTS.items() if k in known}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"--config: cannot read {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise ValidationError("--config: top level must be an object")
        unknown = set(cfg) - known
        if unknown:
            raise ValidationError(f"--config: unknown keys for {cmd}: {sorted(unknown)}")
        values.update(cfg)
    values.update({k: v for k, v in vars(args).items() if k in known and v is not None})
    return values


def _need(values, *names):
    for n in names:
        if values.get(n) is None:
            raise ValidationError(f"{FLAG_NAMES.get(n, n)} is required")


def _positive(values, name, strict=True):
    v = values[name]
    if not isinstance(v, (int, float)) or not math.isfinite(v) or (v <= 0 if strict else v < 0):
        kind = "positive" if strict else "non-negative"
        raise ValidationError(f"{FLAG_NAMES.get(name, name)} must be {kind}, got {v!r}")


def _drive(values) -> kin.MirrorDrive:
    _need(values, "omega0", "k0")
    _positive(values, "omega0")
    _positive(values, "k0", strict=False)
    # classify and window take no amplitude; the geometry does not depend on it
    has_d = "d" in values
    if has_d:
        _positive(values, "d")
    w0, k0 = float(values["omega0"]), float(values["k0"])
    d = float(values["d"]) if has_d else 1e-3 / w0
    if values.get("si"):
        k0 *= speed_of_light
        d /= speed_of_light
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", kin.PerturbativeWarning)
        drive = kin.MirrorDrive(w0, k0, d)
    if has_d and not drive.perturbative:
        print(f"warning: d*omega0 = {drive.d * drive.omega0:.3g}; perturbative result",
              file=sys.stderr)
    return drive


def _count(values, name, minimum):
    v = values[name]
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ValidationError(f"{FLAG_NAMES.get(name, name)} must be an integer >= {minimum}, got {v!r}")
    return v


def _quad_cfg(values) -> QuadratureConfig:
    _positive(values, "rel_tol")
    _positive(values, "abs_tol")
    n = _count(values, "max_subdivisions", 10)
    return QuadratureConfig(float(values["rel_tol"]), float(values["abs_tol"]), n,
                            bool(values.get("edge_substitution", True)))


def _inputs(values, *names):
    return {n: values.get(n) for n in names}


def _opt(x):
    return None if x is None else float(x)


def cmd_classify(values):
    drive = _drive(values)
    _need(values, "Omega")
    _positive(values, "Omega")
    Om = float(values["Omega"])
    p = kin.reduce(drive, Om)
    payload = {"regime": kin.classify(p)}
    if p is None:
        payload.update(r=None, kappa=None, phi_c=None, phi_max=None, theta_beam=None)
    else:
        payload.update(r=p.r, kappa=p.kappa, phi_c=kin.phi_critical(p), phi_max=kin.phi_max(p),
                       theta_beam=kin.theta_beam(p))
    rec = records.make_record("classify", _inputs(values, "omega0", "k0", "Omega", "si"), payload)
    return records.dumps_record(rec), EXIT_OK


def window_rows(drive: kin.MirrorDrive, Omega: float, phi_grid: int):
    p = kin.reduce(drive, Omega)
    win = kin.window(p)
    rows = []
    if win.empty:
        return win, rows
    for phi in np.linspace(-math.pi, math.pi, phi_grid):
        phi = float(phi)
        if abs(phi) > win.phi_support:
            continue
        b = kin.theta_bounds(p, phi)
        if b is not None:
            rows.append((phi, b[0], b[1]))
    return win, rows


def cmd_window(values):
    drive = _drive(values)
    _need(values, "Omega")
    _positive(values, "Omega")
    n = _count(values, "phi_grid", 2)
    win, rows = window_rows(drive, float(values["Omega"]), n)
    inputs = _inputs(values, "omega0", "k0", "Omega", "phi_grid", "si")
    meta = {"regime": win.regime, "phi_c": win.phi_c, "phi_max": win.phi_max,
            "theta_beam": win.theta_beam}
    if values["format"] == "json":
        payload = dict(meta, rows=[{"phi": a, "theta_lo": b, "theta_hi": c} for a, b, c in rows])
        return records.dumps_record(records.make_record("window", inputs, payload)), EXIT_OK
    header = dict(command="window", **inputs, **meta)
    return records.dumps_csv(header, ("phi", "theta_lo", "theta_hi"), rows), EXIT_OK


def cmd_spectrum(values):
    drive = _drive(values)
    n = _count(values, "points", 3)
    cfg = _quad_cfg(values)
    mc_n = values["mc_samples"]
    if mc_n:
        _count(values, "mc_samples", 10_000)
        _count(values, "seed", 0)
    curve = spectrum_sweep(drive, n, cfg)
    x, y = curve.dimensionless()
    cols = ["Omega", "Omega_over_omega0", "P", "P_dimless", "regime", "err_estimate"]
    rows = []
    for s, xo, yo in zip(curve.samples, x, y):
        row = [s.Omega, float(xo), s.P, float(yo), s.regime, s.error]
        if mc_n:
            row += list(mc_oracle(drive, s.Omega, McConfig(mc_n, values["seed"])))
        rows.append(row)
    if mc_n:
        cols += ["mc_P", "mc_stderr"]
    code = EXIT_OK if curve.converged else EXIT_TOLERANCE
    if not curve.converged:
        bad = [s.Omega for s in curve.samples if not s.converged]
        print(f"error: quadrature tolerance not met at Omega = {bad}", file=sys.stderr)
    inputs = _inputs(values, "omega0", "k0", "d", "points", "rel_tol", "abs_tol",
                     "max_subdivisions", "edge_substitution", "si")
    if mc_n:
        inputs.update(mc_samples=mc_n, seed=values["seed"])
    if values["format"] == "json":
        payload = {"columns": cols, "rows": rows}
        return records.dumps_record(records.make_record("spectrum", inputs, payload)), code
    return records.dumps_csv(dict(command="spectrum", **inputs), cols, rows), code


def cmd_energy(values):
    drive = _drive(values)
    cfg = _quad_cfg(values)
    rep = energy_report(drive, cfg)
    code = EXIT_OK if rep.relative_mismatch <= CONSERVATION_TOL else EXIT_CONSERVATION
    if code:
        print(f"error: relative mismatch {rep.relative_mismatch:.3g} exceeds {CONSERVATION_TOL}",
              file=sys.stderr)
    inputs = _inputs(values, "omega0", "k0", "d", "rel_tol", "abs_tol", "max_subdivisions", "si")
    return records.dumps_record(records.make_record("energy", inputs, rep.as_dict())), code


def regime_map(r_max: float, kappa_max: float, grid: int):
    """Cells ``(kappa, r, regime)`` on a uniform grid including both axes' endpoints."""
    cells = []
    for kappa in np.linspace(0.0, kappa_max, grid):
        for r in np.linspace(0.0, r_max, grid):
            cells.append((float(kappa), float(r), kin.classify(kin.ReducedPoint(float(r), float(kappa)))))
    return cells


def class_trajectories(r_max: float, kappa_max: float, resolution: int = 200):
    """Overlay paths for omega0/k0 in MAP_CLASSES with omega0 = 1, clipped to the map."""
    out = []
    for ratio in MAP_CLASSES:
        drive = kin.MirrorDrive(1.0, float(1 / ratio), 1e-3)
        traj = kin.trajectory(drive, resolution)
        pts = [(k, r) for k, r in traj.polyline if k <= kappa_max and r <= r_max]
        out.append((f"{ratio.numerator}/{ratio.denominator}", traj, pts))
    return out


def cmd_regime_map(values):
    _positive(values, "r_max")
    _positive(values, "kappa_max")
    n = _count(values, "grid", 2)
    r_max, kappa_max = float(values["r_max"]), float(values["kappa_max"])
    cells = regime_map(r_max, kappa_max, n)
    trajs = class_trajectories(r_max, kappa_max)
    inputs = _inputs(values, "r_max", "kappa_max", "grid")
    if values["format"] == "json":
        payload = {
            "cells": [{"kappa": k, "r": r, "regime": g} for k, r, g in cells],
            "trajectories": [
                {"omega0_over_k0": label, "regimes": t.regimes, "crossings": t.crossings,
                 "polyline": [list(pt) for pt in pts]}
                for label, t, pts in trajs
            ],
        }
        return records.dumps_record(records.make_record("regime-map", inputs, payload)), EXIT_OK
    rows = [("cell", "", k, r, g) for k, r, g in cells]
    for label, _, pts in trajs:
        rows += [("trajectory", label, k, r, "") for k, r in pts]
    header = dict(command="regime-map", **inputs)
    for label, t, _ in trajs:
        header[f"trajectory_{label}"] = " ".join(f"{g}" for g in t.regimes)
    return records.dumps_csv(header, ("kind", "label", "kappa", "r", "regime"), rows), EXIT_OK


def load_deformation(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"--density: cannot read {path}: {exc}") from None
    try:
        if isinstance(data, dict) and "modes" in data:
            return DiscreteModes([Mode(float(m["amplitude"]), tuple(m["q"]), float(m["omega"]))
                                  for m in data["modes"]])
        return TabulatedDensity.from_dict(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise ValidationError(f"--density: {exc}") from None


def cmd_general_spectrum(values):
    _need(values, "density", "Omega")
    spec = load_deformation(values["density"])
    omegas = values["Omega"]
    if not isinstance(omegas, list):
        omegas = [omegas]
    for Om in omegas:
        if not (isinstance(Om, (int, float)) and Om > 0):
            raise ValidationError(f"--Omega must be positive, got {Om!r}")
    nt = _count(values, "theta_grid", 2)
    nphi = _count(values, "phi_grid", 2)
    thetas = np.linspace(0.0, 0.5 * math.pi, nt)
    phis = np.linspace(-math.pi, math.pi, nphi)
    rows = []
    for Om in omegas:
        for th in thetas:
            for ph in phis:
                q = EmissionQuery(float(Om), float(th), float(ph))
                rows.append((float(Om), float(th), float(ph), angular_power_general(spec, q)))
    inputs = {"density": str(values["density"]), "Omega": [float(o) for o in omegas],
              "theta_grid": nt, "phi_grid": nphi}
    cols = ("Omega", "theta", "phi", "P")
    if values["format"] == "json":
        payload = {"columns": list(cols), "rows": rows}
        return records.dumps_record(records.make_record("general-spectrum", inputs, payload)), EXIT_OK
    return records.dumps_csv(dict(command="general-spectrum", **inputs), cols, rows), EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "window": cmd_window,
    "spectrum": cmd_spectrum,
    "energy": cmd_energy,
    "regime-map": cmd_regime_map,
    "general-spectrum": cmd_general_spectrum,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = _merge(args, parser)
        text, code = COMMANDS[args.command](values)
    except (ValidationError, ValueError) as exc:
        print(f"radiant {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    out = values.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
