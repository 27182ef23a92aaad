"""Command-line interface: parameter scans, density grids, potential tables.

Subcommands write CSV files only; plotting is left to the user.  Flags can
be preloaded from a flat `key = value` config file (--config); explicit
flags win over config entries.  Exit codes: 0 ok, 2 usage error,
3 numerical failure.

All radii are validated against the stability bound R <= 0.25 a: beyond a
quarter Bohr radius the compactified atom has no ground state to compute.
"""

import argparse
import math
import sys

import numpy as np

from .density import density_grid, save_density_csv
from .eig import NotPositiveDefiniteError
from .matrixbuild import BasisSpec, QuadratureError, alpha_geometric
from .potential import (ModelConfig, fourier_kmax, potential_closed,
                        potential_fourier_sum, potential_image_sum)
from .scans import (convergence_scan, degeneracy_scan, scan_radius,
                    scan_toy_mu, solve_compact, write_scan_csv, _make_basis)
from .shooting import NoBoundStateError

R_CRIT = 0.25


class UsageError(ValueError):
    pass


def parse_config(path):
    """Flat `key = value` file; '#' starts a comment; blank lines ignored."""
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
                key, _, val = line.partition("=")
                values[key.strip()] = val.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    return values


def _merged(args, cast_map):
    """Fold config-file values under the CLI flags; flags take precedence."""
    config = parse_config(args.config) if args.config else {}
    unknown = set(config) - set(cast_map)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for key, (cast, default) in cast_map.items():
        val = getattr(args, key, None)
        if val is None and key in config:
            try:
                val = cast(config[key])
            except ValueError:
                raise UsageError(f"config key {key}: cannot parse {config[key]!r}") from None
        out[key] = default if val is None else val
    return out


def _check_radius(R):
    if R <= 0:
        raise UsageError(f"compactification radius must be > 0, got {R:.9g}")
    if R > R_CRIT:
        raise UsageError(
            f"R = {R:.9g} exceeds the critical radius 0.25 a; beyond it the "
            "compactified atom is unstable and has no bound spectrum to compute")


def _parse_invmu(text):
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"--invmu range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise UsageError(f"bad --invmu range {text!r}")
        return np.arange(start, stop + 0.5 * step, step)
    return np.array([float(p) for p in text.split(",")])


def _cmd_spectrum_scan(args):
    opt = _merged(args, {
        "basis": (str, "hydrogen"), "N": (int, 10), "l": (int, 0),
        "A": (float, 0.1), "B": (float, 1.5), "Q": (int, 30),
        "rmin": (float, 0.02), "rmax": (float, 0.25), "levels": (int, 12),
        "out": (str, None)})
    _require_out(opt)
    _check_radius(opt["rmax"])
    if not 0 < opt["rmin"] < opt["rmax"]:
        raise UsageError(f"need 0 < rmin < rmax, got [{opt['rmin']:.9g}, {opt['rmax']:.9g}]")
    basis = _make_basis(opt["basis"], opt["N"], opt["l"], opt["A"], opt["B"], opt["Q"])
    if opt["levels"] < 1 or opt["levels"] > basis.dim:
        raise UsageError(f"--levels must be in 1..{basis.dim}, got {opt['levels']}")
    result = scan_radius(basis, opt["rmin"], opt["rmax"], opt["levels"])
    write_scan_csv(result, opt["out"], "R")


def _cmd_toy_scan(args):
    opt = _merged(args, {
        "invmu": (str, "0.1:6:0.1"), "N": (int, 10),
        "A": (float, 0.1), "B": (float, 1.5), "out": (str, None)})
    _require_out(opt)
    inv_mu = _parse_invmu(opt["invmu"])
    if inv_mu.size == 0 or np.any(inv_mu <= 0):
        raise UsageError("--invmu values must be positive")
    bases = (BasisSpec.hydrogen(opt["N"]),
             BasisSpec.exponential(alpha_geometric(opt["A"], opt["B"], opt["N"])))
    result = scan_toy_mu(inv_mu, bases=bases)
    write_scan_csv(result, opt["out"], "inv_mu")


def _cmd_convergence(args):
    opt = _merged(args, {
        "basis": (str, "hydrogen"), "N": (int, 7), "l": (int, 0),
        "A": (float, 0.1), "B": (float, 1.5),
        "qmin": (int, 1), "qmax": (int, 50), "R": (float, 0.25),
        "out": (str, None)})
    _require_out(opt)
    _check_radius(opt["R"])
    if not 0 <= opt["qmin"] <= opt["qmax"]:
        raise UsageError(f"need 0 <= qmin <= qmax, got [{opt['qmin']}, {opt['qmax']}]")
    result = convergence_scan(opt["basis"], opt["N"], range(opt["qmin"], opt["qmax"] + 1),
                              opt["R"], l=opt["l"], A=opt["A"], B=opt["B"])
    write_scan_csv(result, opt["out"], "Q")


def _cmd_degeneracy(args):
    opt = _merged(args, {
        "rmin": (float, 0.02), "rmax": (float, 0.2), "points": (int, 10),
        "N": (int, 7), "Q": (int, 30), "out": (str, None)})
    _require_out(opt)
    _check_radius(opt["rmax"])
    if not 0 < opt["rmin"] <= opt["rmax"]:
        raise UsageError(f"need 0 < rmin <= rmax, got [{opt['rmin']:.9g}, {opt['rmax']:.9g}]")
    if opt["points"] < 2:
        raise UsageError(f"--points must be >= 2, got {opt['points']}")
    R_values = np.linspace(opt["rmin"], opt["rmax"], opt["points"])
    result = degeneracy_scan(R_values, N=opt["N"], Q=opt["Q"])
    write_scan_csv(result, opt["out"], "R")


def _cmd_density(args):
    opt = _merged(args, {
        "basis": (str, "hydrogen"), "N": (int, 10), "l": (int, 0),
        "A": (float, 0.1), "B": (float, 1.5), "Q": (int, 30),
        "R": (float, None), "state": (int, 0), "rmax": (float, 10.0),
        "nr": (int, 200), "ntheta": (int, 181), "out": (str, None)})
    _require_out(opt)
    if opt["R"] is None:
        raise UsageError("--R is required for the density command")
    _check_radius(opt["R"])
    basis = _make_basis(opt["basis"], opt["N"], opt["l"], opt["A"], opt["B"], opt["Q"])
    if not 0 <= opt["state"] < basis.dim:
        raise UsageError(f"--state must be in 0..{basis.dim - 1}, got {opt['state']}")
    _, spectrum = solve_compact(basis, opt["R"])
    grid = density_grid(basis, spectrum, opt["state"], r_max=opt["rmax"],
                        n_r=opt["nr"], n_theta=opt["ntheta"], R=opt["R"])
    save_density_csv(grid, opt["out"])


def _cmd_potential_table(args):
    opt = _merged(args, {
        "R": (float, 0.25), "rmin": (float, 0.05), "rmax": (float, 2.0),
        "nr": (int, 20), "ntheta": (int, 20), "nmax": (int, 10000),
        "kmax": (int, 0), "out": (str, None)})
    _require_out(opt)
    _check_radius(opt["R"])
    if not 0 < opt["rmin"] <= opt["rmax"]:
        raise UsageError(f"need 0 < rmin <= rmax, got [{opt['rmin']:.9g}, {opt['rmax']:.9g}]")
    cfg = ModelConfig(R=opt["R"])
    rs = np.linspace(opt["rmin"], opt["rmax"], opt["nr"])
    thetas = -math.pi + 2.0 * math.pi * np.arange(1, opt["ntheta"] + 1) / opt["ntheta"]
    with open(opt["out"], "w") as fh:
        fh.write(f"# R={opt['R']:.9g}\n# n_max={opt['nmax']}\n")
        fh.write("# version=kkatom 0.1.0\n")
        fh.write("r,theta,V_closed,V_image,V_fourier\n")
        for r in rs:
            kmax = opt["kmax"] if opt["kmax"] > 0 else fourier_kmax(r, cfg)
            for t in thetas:
                vc = potential_closed(r, t, cfg)
                vi = potential_image_sum(r, t, cfg, opt["nmax"])
                vf = potential_fourier_sum(r, t, cfg, kmax)
                fh.write(f"{r:.9g},{t:.9g},{vc:.9g},{vi:.9g},{vf:.9g}\n")


_COMMANDS = {
    "spectrum-scan": _cmd_spectrum_scan,
    "toy-scan": _cmd_toy_scan,
    "convergence": _cmd_convergence,
    "degeneracy": _cmd_degeneracy,
    "density": _cmd_density,
    "potential-table": _cmd_potential_table,
}


def _require_out(opt):
    if not opt["out"]:
        raise UsageError("--out is required")


def _add_flags(sub, names):
    casts = {"basis": str, "invmu": str, "out": str, "config": str,
             "N": int, "l": int, "Q": int, "levels": int, "points": int,
             "qmin": int, "qmax": int, "state": int, "nr": int, "ntheta": int,
             "nmax": int, "kmax": int}
    for name in names:
        sub.add_argument(f"--{name}", type=casts.get(name, float), default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kkatom",
        description="Hydrogen atom with one compactified extra dimension: "
                    "spectra, toy-model cross-checks, densities, potentials.")
    sub = parser.add_subparsers(dest="command", required=True)
    flags = {
        "spectrum-scan": ["basis", "N", "l", "A", "B", "Q", "rmin", "rmax", "levels", "out"],
        "toy-scan": ["invmu", "N", "A", "B", "out"],
        "convergence": ["basis", "N", "l", "A", "B", "qmin", "qmax", "R", "out"],
        "degeneracy": ["rmin", "rmax", "points", "N", "Q", "out"],
        "density": ["basis", "N", "l", "A", "B", "Q", "R", "state", "rmax", "nr", "ntheta", "out"],
        "potential-table": ["R", "rmin", "rmax", "nr", "ntheta", "nmax", "kmax", "out"],
    }
    for name, names in flags.items():
        p = sub.add_parser(name)
        _add_flags(p, names)
        p.add_argument("--config", type=str, default=None)
    return parser


def run_cli(argv):
    """Dispatch one CLI invocation; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"kkatom: {exc}", file=sys.stderr)
        return 2
    except (NotPositiveDefiniteError, QuadratureError, NoBoundStateError,
            ArithmeticError) as exc:
        print(f"kkatom: numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, IndexError) as exc:
        print(f"kkatom: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"kkatom: {exc}", file=sys.stderr)
        return 2
    return 0


def console_main():
    sys.exit(run_cli(sys.argv[1:]))
