"""Command-line front end.

Subcommands write data files into ``output.directory``; diagnostics go to
standard error.  Exit codes: 0 ok, 1 validation failure, 2 invalid
configuration, 3 inconclusive momentum range, 4 missing input file,
5 format-version mismatch.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import io
from .domain import GaugeShape, MomentumSector, classify_wells, effective_potential
from .dynamics import evolve_and_record
from .fourier import uniform_grid
from .measurement import MeasurementError, MeasurementKernel, measure_imperfect
from .phasor import COLUMNS as UNCERTAINTY_COLUMNS
from .phasor import RingPartition, uncertainty_scan
from .spectral import ground_state_scan, solve_sector
from .twobody import TwoBodyState, classify_correlation, density_grid, relative_density_profile
from .validation import run_all

log = logging.getLogger("gaugering")

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_MISSING, EXIT_VERSION = range(6)

GNUPLOT = {
    "spectrum": "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'kappa'\n"
                "set ylabel 'epsilon'\nplot for [i=2:{ncols}] '{data}' using 1:i with lines\n",
    "uncertainty": "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'kappa'\n"
                   "plot '{data}' using 1:8 with lines\n",
    "density2d": "set datafile separator ','\nset view map\n"
                 "plot '{data}' matrix rowheaders columnheaders with image\n",
    "evolve": "set datafile separator ','\nset xlabel 'theta index'\nset ylabel 'frame'\n"
              "plot '{data}' matrix rowheaders columnheaders with image\n",
}


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _parse_kappa(text):
    parts = text.split(":")
    if len(parts) == 1:
        return [("kappa.start", parts[0]), ("kappa.stop", parts[0]), ("kappa.count", "1")]
    if len(parts) == 3:
        return [("kappa.start", parts[0]), ("kappa.stop", parts[1]), ("kappa.count", parts[2])]
    raise cfgmod.ConfigError(f"--kappa expects VALUE or START:STOP:COUNT, got {text!r}")


def build_config(args):
    cfg = cfgmod.RunConfig()
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise CLIError(f"config file {path} not found", EXIT_MISSING)
        cfg = cfgmod.parse(path.read_text())
    overrides = []
    if args.q is not None:
        overrides.append(("q", str(args.q)))
    if args.kappa is not None:
        overrides.extend(_parse_kappa(args.kappa))
    if args.p is not None:
        overrides.append(("p", args.p))
    if args.out is not None:
        overrides.append(("output.directory", args.out))
    if args.workers is not None:
        overrides.append(("workers", str(args.workers)))
    cfgmod.apply(cfg, overrides)
    cfgmod.apply(cfg, args.set or [])
    return cfg.validate()


def _meta(cfg, command, **extra):
    meta = {"command": command, "config": cfgmod.to_text(cfg).splitlines()}
    meta.update(extra)
    return meta


def _outdir(cfg):
    out = Path(cfg.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_table(cfg, stem, columns, rows, meta, gnuplot=None):
    out = _outdir(cfg)
    if cfg.output.format == "json":
        path = out / f"{stem}.json"
        doc = {"version": io.FORMAT_VERSION, "kind": "table", "meta": io.header(meta), "columns": list(columns),
               "rows": [[float(v) if isinstance(v, (float, np.floating)) else v for v in r] for r in rows]}
        path.write_text(json.dumps(doc, indent=1, default=io._json_default) + "\n")
    else:
        path = io.write_csv(out / f"{stem}.csv", columns, rows, meta)
    if gnuplot:
        (out / f"{stem}.gp").write_text(GNUPLOT[gnuplot].format(data=path.name, ncols=len(columns)))
    log.info("wrote %s", path)
    return path


def _single_kappa(cfg):
    if cfg.kappa.count != 1:
        raise cfgmod.ConfigError("this command needs a single kappa (kappa.count = 1)")
    return float(cfg.kappa.start)


def _scan(cfg, kappa):
    return ground_state_scan(cfg.q, kappa, (cfg.p_range.min, cfg.p_range.max), cfg.n_basis, cfg.workers,
                             max_abs_p=cfg.p_range.max_abs, parity=cfg.p_range.parity)


def _ground(cfg):
    """Relative ground state at the configured kappa (fixed p if given)."""
    kappa = _single_kappa(cfg)
    if cfg.p is not None:
        p, degenerate, inconclusive = cfg.p, (cfg.p,), False
    else:
        scan = _scan(cfg, [kappa])
        p, degenerate, inconclusive = int(scan.ground_p[0]), scan.minimizing_sets[0], scan.inconclusive
    state = solve_sector(GaugeShape(cfg.q, kappa), p, cfg.n_basis)[0]
    return state, degenerate, inconclusive


def _load_input(path, reader):
    path = Path(path)
    if not path.exists():
        raise CLIError(f"input file {path} not found", EXIT_MISSING)
    try:
        return reader(path)
    except io.FormatVersionError as exc:
        raise CLIError(str(exc), EXIT_VERSION) from exc


def _relative_state(cfg, args):
    if args.input:
        return _load_input(args.input, io.read_eigenstate)
    state, _, _ = _ground(cfg)
    return state


def cmd_spectrum(cfg, args):
    kappa = cfg.kappa.values()
    scan = _scan(cfg, kappa)
    columns = ["kappa"] + [f"eps_p{p}" for p in scan.p_values] + ["ground_p", "ground_eps"]
    rows = [[k, *scan.energies[:, j], int(scan.ground_p[j]), scan.ground_energy[j]] for j, k in enumerate(kappa)]
    _write_table(cfg, "spectrum", columns, rows,
                 _meta(cfg, "spectrum", widened=scan.widened, inconclusive=scan.inconclusive),
                 "spectrum" if args.gnuplot else None)
    if scan.inconclusive:
        log.error("ground momentum sits on the edge of p in [%d, %d]", scan.p_values.min(), scan.p_values.max())
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_potential(cfg, args):
    kappa = _single_kappa(cfg)
    p = 0 if cfg.p is None else cfg.p
    pot = effective_potential(GaugeShape(cfg.q, kappa), MomentumSector(p))
    x = uniform_grid(cfg.n_grid)
    wells = classify_wells(pot, max(cfg.n_grid, 64))
    _write_table(cfg, "potential", ["x", "V"], list(zip(x, pot(x))),
                 _meta(cfg, "potential", p=p, wells=wells.shape, minima=wells.locations))
    print(json.dumps({"p": p, "shape": wells.shape, "minima": wells.locations.tolist(),
                      "barriers": wells.barrier_heights.tolist()}))
    return EXIT_OK


def cmd_ground(cfg, args):
    state, degenerate, inconclusive = _ground(cfg)
    two = TwoBodyState(state)
    report = classify_correlation(two)
    out = _outdir(cfg)
    io.write_eigenstate(out / "ground.json", state, {"degenerate": degenerate})
    x, dens = relative_density_profile(two, cfg.n_grid)
    _write_table(cfg, "ground_profile", ["x", "density"], list(zip(x, dens)),
                 _meta(cfg, "ground", p=state.p, epsilon=state.energy))
    print(json.dumps({"kappa": state.shape.kappa, "p": state.p, "epsilon": state.energy,
                      "degenerate": list(degenerate), "label": report.label, "peak": report.peak,
                      "ratio": report.ratio}))
    return EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


def cmd_density2d(cfg, args):
    two = TwoBodyState(_relative_state(cfg, args))
    rho = density_grid(two, cfg.n_grid)
    theta = uniform_grid(cfg.n_grid)
    columns = ["theta1"] + [f"j{j}" for j in range(cfg.n_grid)]
    rows = [[theta[i], *rho[i]] for i in range(cfg.n_grid)]
    _write_table(cfg, "density2d", columns, rows,
                 _meta(cfg, "density2d", p=two.p, grid={"n": cfg.n_grid, "theta0": -np.pi,
                                                         "dtheta": 2 * np.pi / cfg.n_grid},
                       layout="row i: theta1 = theta0 + i dtheta; column j: theta2 = theta0 + j dtheta"),
                 "density2d" if args.gnuplot else None)
    return EXIT_OK


def _measured(cfg, args):
    two = TwoBodyState(_relative_state(cfg, args))
    kernel = MeasurementKernel(cfg.measurement.n, cfg.measurement.theta0)
    return measure_imperfect(two, kernel, cfg.n_grid)


def cmd_measure(cfg, args):
    psi = _measured(cfg, args)
    path = io.write_wavefunction(_outdir(cfg) / "measured.json", psi)
    log.info("wrote %s (detection norm %.6g)", path, psi.meta["detection_norm"])
    return EXIT_OK


def cmd_evolve(cfg, args):
    if args.input:
        psi = _load_input(args.input, io.read_wavefunction)
    else:
        psi = _measured(cfg, argparse.Namespace(input=None))
    ev = evolve_and_record(psi, cfg.evolve.t_max, cfg.evolve.frames, cfg.workers)
    columns = ["t"] + [f"d{j}" for j in range(psi.n)]
    meta = _meta(cfg, "evolve", grid={"n": psi.n, "theta0": -np.pi, "dtheta": psi.dtheta})
    _write_table(cfg, "evolve", columns, [[t, *d] for t, d in zip(ev.times, ev.densities)], meta,
                 "evolve" if args.gnuplot else None)
    diag_cols = ["t", "mean_angle", "resultant", "circular_variance", "angular_momentum", "kinetic_energy"]
    diag_rows = [[t, d.mean_angle, d.resultant, d.circular_variance, d.angular_momentum, d.kinetic_energy]
                 for t, d in zip(ev.times, ev.diagnostics)]
    _write_table(cfg, "evolve_diagnostics", diag_cols, diag_rows, meta)
    return EXIT_OK


def cmd_uncertainty(cfg, args):
    scan = uncertainty_scan(cfg.q, cfg.kappa.values(), RingPartition(cfg.partition.n_bins), cfg.n_basis,
                            (cfg.p_range.min, cfg.p_range.max), workers=cfg.workers,
                            parity=cfg.p_range.parity, max_abs_p=cfg.p_range.max_abs)
    _write_table(cfg, "uncertainty", UNCERTAINTY_COLUMNS, scan.rows(),
                 _meta(cfg, "uncertainty", inconclusive=scan.inconclusive),
                 "uncertainty" if args.gnuplot else None)
    return EXIT_INCONCLUSIVE if scan.inconclusive else EXIT_OK


def cmd_validate(cfg, args):
    results = run_all()
    for check in results:
        print(check.line())
    failed = [c for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VALIDATION if failed else EXIT_OK


COMMANDS = {
    "spectrum": (cmd_spectrum, "ground energy of every momentum sector along a kappa grid"),
    "potential": (cmd_potential, "effective potential profile and its wells"),
    "ground": (cmd_ground, "ground state at one kappa: eigenstate JSON and relative density"),
    "density2d": (cmd_density2d, "two-body density |Psi(theta1, theta2)|^2 on a grid"),
    "measure": (cmd_measure, "conditional particle-2 state after measuring particle 1"),
    "evolve": (cmd_evolve, "free evolution of a ring wavefunction"),
    "uncertainty": (cmd_uncertainty, "phasor uncertainty scan along kappa"),
    "validate": (cmd_validate, "run the built-in analytic checks"),
}


def make_parser():
    parser = argparse.ArgumentParser(prog="gaugering", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key (repeatable)")
        p.add_argument("--q", type=int)
        p.add_argument("--kappa", help="VALUE or START:STOP:COUNT")
        p.add_argument("--p", help="fixed momentum sector (default: ground sector)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--workers", type=int)
        p.add_argument("--input", help="eigenstate or wavefunction JSON from an earlier command")
        p.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    func, _ = COMMANDS[args.command]
    try:
        cfg = build_config(args)
        return func(cfg, args)
    except CLIError as exc:
        log.error("%s", exc)
        return exc.code
    except cfgmod.ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    except MeasurementError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
