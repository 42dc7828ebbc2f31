"""Command-line frontend: runs, convergence tables, CFL sweeps, exports.

Config comes from an optional TOML file plus flag overrides; every output
CSV embeds the resolved manifest as '# key=value' header lines. Floats are
written with 17 significant digits so files diff cleanly across runs. The
--deterministic flag zeroes wall-time fields, the only nondeterministic
output, making repeat runs byte-identical.
"""

import argparse
import sys
from pathlib import Path

import numpy as np
import tomli

from . import analysis, problems, reference, solver
from .euler import GasModel, primitive_from_conserved
from .fluxes import parse_flux
from .mesh import CellField
from .solver import RunConfig, SimulationCrash


class ConfigError(Exception):
    """Bad flags, bad config file, or missing inputs. Exit code 1."""


class _Parser(argparse.ArgumentParser):
    # the exit-code contract reserves 2 for simulation crashes
    def error(self, message):
        raise ConfigError(message)


def _fmt(v):
    return "%.17g" % float(v)


def _parse_cells(text):
    parts = str(text).lower().split("x")
    try:
        cells = tuple(int(p) for p in parts)
    except ValueError:
        raise ConfigError("bad --cells %r, expected NX or NXxNY" % (text,))
    if len(cells) not in (1, 2) or any(n < 1 for n in cells):
        raise ConfigError("bad --cells %r, expected NX or NXxNY" % (text,))
    return cells


def _parse_list(text, conv, name):
    try:
        return tuple(conv(p) for p in str(text).split(",") if p.strip())
    except ValueError:
        raise ConfigError("bad %s %r" % (name, text))


def build_manifest(args):
    """Resolve config file + flags into a validated settings dict."""
    settings = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError("config file not found: %s" % path)
        try:
            settings.update(tomli.loads(path.read_text()))
        except tomli.TOMLDecodeError as exc:
            raise ConfigError("bad config file: %s" % exc)
    for key in ("problem", "order", "flux", "sigma", "cells", "tf", "out",
                "deterministic", "meshes", "repeats", "sigmas", "what",
                "run_dir", "regenerate_reference"):
        val = getattr(args, key, None)
        if val is not None and val is not False:
            settings[key] = val

    if settings.get("regenerate_reference"):
        settings.setdefault("problem", "shock-turbulence")
    if settings.get("run_dir") and "problem" not in settings:
        # exports of a finished run take the problem from its metadata
        field_csv = Path(settings["run_dir"]) / "field.csv"
        if field_csv.is_file():
            with open(field_csv) as fh:
                for line in fh:
                    if not line.startswith("#"):
                        break
                    key, _, val = line[1:].strip().partition("=")
                    if key == "problem":
                        settings["problem"] = val
                        break
    if "problem" not in settings:
        raise ConfigError("--problem is required")
    try:
        problem = problems.get_problem(str(settings["problem"]))
    except ValueError as exc:
        raise ConfigError(str(exc))

    order = int(settings.get("order", 3))
    if order not in (3, 5, 7):
        raise ConfigError("--order must be 3, 5 or 7")
    try:
        flux = parse_flux(str(settings.get("flux", "force-2")))
    except ValueError as exc:
        raise ConfigError(str(exc))
    try:
        # e.g. force-1 in 2D has no stable Courant number; fail pre-allocation
        solver.cfl_limit(flux, problem.dimension)
    except solver.Unstable2DConfiguration as exc:
        raise ConfigError(str(exc))

    sigma = float(settings.get("sigma", 0.9))
    cells = settings.get("cells")
    if isinstance(cells, int):
        cells = (cells,)
    elif isinstance(cells, (list, tuple)):
        cells = tuple(int(n) for n in cells)
    elif cells is not None:
        cells = _parse_cells(cells)
    if cells is None:
        cells = problem.default_cells
    if len(cells) != problem.dimension:
        raise ConfigError("--cells has %d entries for a %dD problem"
                          % (len(cells), problem.dimension))
    tf = settings.get("tf")
    tf = problem.t_final if tf is None else float(tf)
    if tf < 0.0:
        raise ConfigError("--tf must be >= 0")

    manifest = {
        "problem": problem.id,
        "order": order,
        "flux": flux.label(),
        "sigma": sigma,
        "cells": "x".join(str(n) for n in cells),
        "tf": tf,
        "deterministic": bool(settings.get("deterministic", False)),
        "out": str(settings.get("out", "out")),
    }
    extras = {"problem_spec": problem, "flux_choice": flux, "cells_tuple": cells}
    for key in ("meshes", "repeats", "sigmas", "what", "run_dir",
                "regenerate_reference"):
        if key in settings:
            extras[key] = settings[key]
    try:
        cfg = RunConfig(order=order, flux=flux, sigma_cfl=sigma,
                        cells=cells, t_final=tf)
    except ValueError as exc:
        raise ConfigError(str(exc))
    extras["config"] = cfg
    return manifest, extras


def _header(manifest, extra=()):
    lines = ["# %s=%s" % (k, str(manifest[k]).lower() if k == "deterministic"
                          else manifest[k]) for k in manifest]
    lines += ["# %s=%s" % (k, v) for k, v in extra]
    return lines


def _write_csv(path, header_lines, columns, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _field_rows(field, gas):
    grid = field.grid
    u = field.interior
    w = primitive_from_conserved(u, gas)
    if grid.dimension == 1:
        x = grid.centers_x
        for i in range(grid.nx):
            yield [_fmt(x[i]), _fmt(u[0, i]), _fmt(u[1, i]), _fmt(u[2, i]),
                   _fmt(w[1, i]), _fmt(w[2, i])]
    else:
        x, y = grid.centers_x, grid.centers_y
        for i in range(grid.nx):
            for j in range(grid.ny):
                yield [_fmt(x[i]), _fmt(y[j]),
                       _fmt(u[0, i, j]), _fmt(u[1, i, j]),
                       _fmt(u[2, i, j]), _fmt(u[3, i, j]),
                       _fmt(w[1, i, j]), _fmt(w[2, i, j]), _fmt(w[3, i, j])]


_FIELD_COLUMNS = {
    1: ["x", "rho", "mom_x", "energy", "u", "p"],
    2: ["x", "y", "rho", "mom_x", "mom_y", "energy", "u", "v", "p"],
}


def cmd_run(manifest, extras):
    problem, cfg = extras["problem_spec"], extras["config"]
    out = Path(manifest["out"])
    try:
        field, report = solver.run(problem, cfg)
    except SimulationCrash as crash:
        print("simulation crash: %s" % crash, file=sys.stderr)
        _write_csv(out / "report.csv", _header(manifest),
                   ["status", "steps", "t_reached", "wall_time"],
                   [["crashed", "%d" % crash.step, _fmt(crash.time), _fmt(0.0)]])
        return 2
    gas = GasModel(problem.gamma)
    wall = 0.0 if manifest["deterministic"] else report.wall_time
    _write_csv(out / "field.csv", _header(manifest),
               _FIELD_COLUMNS[problem.dimension], _field_rows(field, gas))
    _write_csv(out / "report.csv", _header(manifest),
               ["status", "steps", "t_reached", "wall_time"],
               [["completed", "%d" % report.steps, _fmt(report.t_reached),
                 _fmt(wall)]])
    print("completed: %d steps to t=%s -> %s" %
          (report.steps, _fmt(report.t_reached), out / "field.csv"))
    return 0


def cmd_convergence(manifest, extras):
    problem, cfg = extras["problem_spec"], extras["config"]
    if problem.exact is None:
        raise ConfigError("problem %r has no exact solution" % problem.id)
    if "meshes" not in extras:
        raise ConfigError("--meshes is required for convergence")
    meshes = extras["meshes"]
    if not isinstance(meshes, (list, tuple)):
        meshes = _parse_list(meshes, int, "--meshes")
    repeats = int(extras.get("repeats", 1))
    if repeats < 1:
        raise ConfigError("--repeats must be at least 1")
    table = analysis.convergence_study(problem, cfg, meshes, repeats=repeats)
    rows = []
    for row in table.rows:
        n = "%d" % row.cells[0]
        if row.crash is not None:
            rows.append([n, "crash", "-", "-", "-", "-", "-", "-"])
            continue
        orders = ["-"] * 3 if row.orders is None else [_fmt(o) for o in row.orders]
        wall = 0.0 if manifest["deterministic"] else row.wall_time
        rows.append([n,
                     _fmt(row.errors.l1[0]), orders[0],
                     _fmt(row.errors.l2[0]), orders[1],
                     _fmt(row.errors.linf[0]), orders[2],
                     _fmt(wall)])
    out = Path(manifest["out"])
    name = "convergence_%s_order%d_%s.csv" % (
        problem.id, cfg.order, manifest["flux"])
    _write_csv(out / name, _header(manifest, [("meshes", ",".join(
        str(m) for m in meshes))]),
        ["n", "l1", "l1_order", "l2", "l2_order", "linf", "linf_order",
         "cpu_time"], rows)
    for row in rows:
        print(" ".join("%14s" % c for c in row))
    print("wrote %s" % (out / name))
    return 0


def cmd_sweep_sigma(manifest, extras):
    problem, cfg = extras["problem_spec"], extras["config"]
    sigmas = extras.get("sigmas")
    if sigmas is None:
        sigmas = tuple(round(0.1 * k, 10) for k in range(1, 10))
    elif not isinstance(sigmas, (list, tuple)):
        sigmas = _parse_list(sigmas, float, "--sigmas")
    rows = []
    max_stable = None
    prefix_ok = True
    for sigma in sigmas:
        run_cfg = RunConfig(order=cfg.order, flux=cfg.flux, sigma_cfl=sigma,
                            cells=cfg.cells, t_final=cfg.t_final)
        try:
            _, report = solver.run(problem, run_cfg)
        except SimulationCrash as crash:
            rows.append([_fmt(sigma), "crashed", '"%s"' % crash])
            prefix_ok = False
            continue
        rows.append([_fmt(sigma), "completed", '"%d steps"' % report.steps])
        if prefix_ok:
            max_stable = sigma
    out = Path(manifest["out"])
    name = "sweep_%s_order%d_%s.csv" % (problem.id, cfg.order, manifest["flux"])
    stable = "none" if max_stable is None else _fmt(max_stable)
    _write_csv(out / name, _header(manifest, [("max_stable_sigma", stable)]),
               ["sigma", "status", "detail"], rows)
    print("max stable sigma: %s -> %s" % (stable, out / name))
    return 0


def _load_run(run_dir):
    """Rebuild the CellField written by cmd_run from its field.csv."""
    path = Path(run_dir) / "field.csv"
    if not path.is_file():
        raise ConfigError("missing run artifact: %s" % path)
    meta = {}
    data = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key] = val
            elif line and not line[0].isalpha():
                data.append([float(v) for v in line.split(",")])
    for key in ("problem", "order", "cells"):
        if key not in meta:
            raise ConfigError("field.csv header lacks %r" % key)
    problem = problems.get_problem(meta["problem"])
    cells = _parse_cells(meta["cells"])
    grid = solver.make_grid(problem, cells, int(meta["order"]))
    raw = np.array(data)
    nc = 3 if problem.dimension == 1 else 4
    coords = problem.dimension
    field = CellField.allocate(grid, nc=nc, time=float(meta.get("tf", 0.0)))
    cons = raw[:, coords : coords + nc].T
    if problem.dimension == 1:
        field.interior[...] = cons
    else:
        field.interior[...] = cons.reshape(nc, grid.nx, grid.ny)
    return problem, field, meta


def _regenerate_reference(manifest, extras):
    problem = extras["problem_spec"]
    if problem.id != "shock-turbulence":
        raise ConfigError("only shock-turbulence has a stored reference profile")
    cells = extras["cells_tuple"]
    try:
        field = reference.reference_run(problem, cells, t_final=manifest["tf"])
    except (ArithmeticError, ZeroDivisionError, RuntimeError) as exc:
        print("simulation crash: %s" % exc, file=sys.stderr)
        return 2
    prim = primitive_from_conserved(field.interior, GasModel(problem.gamma))
    x = field.grid.centers_x

    out_dir = Path(manifest["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    data_path = out_dir / "shock_turbulence_reference.csv"
    with open(data_path, "w") as fh:
        fh.write("x,rho,u,p\n")
        for k in range(x.size):
            fh.write("%.10g,%.10g,%.10g,%.10g\n"
                     % (x[k], prim[0, k], prim[1, k], prim[2, k]))
    meta_path = out_dir / "shock_turbulence_reference.meta.csv"
    with open(meta_path, "w") as fh:
        fh.write("scheme,cells,cfl,t_final,problem\n")
        fh.write("%s,%d,%s,%s,%s\n"
                 % (reference.REFERENCE_SCHEME, cells[0], _fmt(0.5),
                    _fmt(manifest["tf"]), problem.id))
    print("wrote %s" % data_path)
    print("wrote %s" % meta_path)
    return 0


def cmd_export(manifest, extras):
    if extras.get("regenerate_reference"):
        return _regenerate_reference(manifest, extras)
    what = extras.get("what")
    if not what:
        raise ConfigError("--what is required for export")
    run_dir = Path(extras.get("run_dir") or manifest["out"])
    problem, field, meta = _load_run(run_dir)
    gas = GasModel(problem.gamma)
    header = ["# %s=%s" % (k, v) for k, v in meta.items()]
    header.append("# export=%s" % what)

    if what == "schlieren":
        values = analysis.schlieren_field(field)
        out = run_dir / "schlieren.csv"
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w") as fh:
            fh.write("\n".join(header) + "\n")
            for row in values:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        print("wrote %s" % out)
        return 0

    if what == "slice-diagonal":
        line, tag = "diagonal", "diagonal"
    elif what.startswith("slice-x=") or what.startswith("slice-y="):
        axis = what[6]
        try:
            line = (axis, float(what.split("=", 1)[1]))
        except ValueError:
            raise ConfigError("bad slice position in %r" % what)
        tag = "%s_%s" % (axis, what.split("=", 1)[1])
    else:
        raise ConfigError("unknown export %r (schlieren, slice-x=C, slice-y=C,"
                          " slice-diagonal)" % what)
    arc, prim = analysis.slice_extract(field, line, gas)
    names = ["arc", "rho", "u", "v", "p"]
    rows = ([_fmt(arc[k])] + [_fmt(prim[c, k]) for c in range(prim.shape[0])]
            for k in range(arc.size))
    out = run_dir / ("slice_%s.csv" % tag)
    _write_csv(out, header, names, rows)
    print("wrote %s" % out)
    return 0


def make_parser():
    parser = _Parser(prog="wenodec",
                     description="High-order WENO finite-volume Euler solver")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _Parser(add_help=False)
    common.add_argument("--config", help="TOML config file; flags override it")
    common.add_argument("--problem", help="problem id (see --list)")
    common.add_argument("--order", type=int, choices=(3, 5, 7))
    common.add_argument("--flux", help="force-A | rusanov | hll | exact-rs")
    common.add_argument("--sigma", type=float, help="CFL fraction in (0,1]")
    common.add_argument("--cells", help="NX or NXxNY")
    common.add_argument("--tf", type=float, help="final time override")
    common.add_argument("--out", help="output directory (default ./out)")
    common.add_argument("--deterministic", action="store_true",
                        help="zero wall-time fields for byte-identical output")
    sub.add_parser("run", parents=[common], help="single simulation")
    conv = sub.add_parser("convergence", parents=[common],
                          help="mesh-refinement error table")
    conv.add_argument("--meshes", help="comma-separated cell counts")
    conv.add_argument("--repeats", type=int,
                      help="time each mesh this many times and keep the "
                      "fastest (errors are identical run to run)")
    sweep = sub.add_parser("sweep-sigma", parents=[common],
                           help="stability sweep over CFL fractions")
    sweep.add_argument("--sigmas", help="comma-separated sigma grid "
                       "(default 0.1..0.9)")
    exp = sub.add_parser("export", parents=[common],
                         help="post-process a completed run directory")
    exp.add_argument("--what", help="schlieren | slice-x=C | slice-y=C | "
                     "slice-diagonal")
    exp.add_argument("--run", dest="run_dir", help="run directory "
                     "(default --out)")
    exp.add_argument("--regenerate-reference", action="store_true",
                     help="rebuild the stored shock-turbulence reference "
                     "profile with the second-order solver")
    return parser


_COMMANDS = {
    "run": cmd_run,
    "convergence": cmd_convergence,
    "sweep-sigma": cmd_sweep_sigma,
    "export": cmd_export,
}


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        manifest, extras = build_manifest(args)
        return _COMMANDS[args.command](manifest, extras)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
