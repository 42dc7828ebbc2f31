#!/usr/bin/env python3
"""Compare the compiled and numpy reconstruction kernels.

Times reconstruct_faces_1d / reconstruct_faces_2d on identical inputs, checks
the backends agree, and prints one table row per (kernel, order, size). With
--end-to-end it also runs a small 2D explosion in a subprocess per backend,
forced through the WENODEC_KERNELS environment variable, which is the same
switch a user would set for a full simulation.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from wenodec import euler
from wenodec.kernels import get_backend
from wenodec.mesh import face_quadrature_points, ghost_width
from wenodec.quadrature import gauss_legendre
from wenodec.weno import build_plan


def _pad_periodic(u, g, axes):
    for ax in axes:
        idx = np.arange(-g, u.shape[ax] + g) % u.shape[ax]
        u = np.take(u, idx, axis=ax)
    return u


def _state_1d(n, rng):
    x = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    prim = np.stack([
        1.5 + 0.4 * np.sin(x) + 0.05 * rng.random(n),
        0.3 * np.cos(x),
        1.0 + 0.2 * np.sin(2.0 * x),
    ])
    return euler.conserved_from_primitive(prim)


def _state_2d(n, rng):
    x = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    xm, ym = np.meshgrid(x, x, indexing="ij")
    prim = np.stack([
        1.5 + 0.4 * np.sin(xm) * np.cos(ym) + 0.05 * rng.random((n, n)),
        0.3 * np.cos(xm),
        0.2 * np.sin(ym),
        1.0 + 0.2 * np.sin(xm + ym),
    ])
    return euler.conserved_from_primitive(prim)


def _best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _bench(call_for, backends, repeats):
    """Best-of timing per backend plus the worst cross-backend deviation."""
    times, outs = {}, {}
    for name in backends:
        call = call_for(name)
        outs[name] = call()
        times[name] = _best_of(call, repeats)
    dev = 0.0
    if len(backends) == 2:
        a, b = (outs[n] for n in backends)
        dev = max(float(np.max(np.abs(x - y))) for x, y in zip(a, b))
    return times, dev


def bench_1d(order, n, repeats, backends, rng):
    plan = build_plan(order, (-0.5, 0.5))
    u = _state_1d(n, rng)
    ug = _pad_periodic(u, ghost_width(order), (1,))
    L, R = euler.eigen_matrices(u, euler.X_DIR)

    def call_for(name):
        impl = get_backend(name)
        return lambda: impl.reconstruct_faces_1d(
            ug, L, R, plan.rows, plan.d, plan.beta_q, plan.eps)

    return _bench(call_for, backends, repeats)


def bench_2d(order, n, repeats, backends, rng):
    plan = build_plan(order, (-0.5, 0.5))
    nodes, _ = gauss_legendre(face_quadrature_points(order, 2))
    quad = build_plan(order, tuple(nodes))
    u = _state_2d(n, rng)
    ug = _pad_periodic(u, ghost_width(order), (1, 2))
    Lx, Rx = euler.eigen_matrices(u, euler.X_DIR)
    Ly, Ry = euler.eigen_matrices(u, euler.Y_DIR)

    def call_for(name):
        impl = get_backend(name)
        return lambda: impl.reconstruct_faces_2d(
            ug, Lx, Rx, Ly, Ry, plan.rows, plan.d, quad.rows, quad.d,
            plan.beta_q, plan.eps, 0)

    return _bench(call_for, backends, repeats)


def end_to_end(backends, cells, t_final):
    snippet = (
        "import json, time;"
        "from wenodec import kernels;"
        "from wenodec.fluxes import parse_flux;"
        "from wenodec.problems import get_problem;"
        "from wenodec.solver import RunConfig, run;"
        "p = get_problem('explosion');"
        "cfg = RunConfig(order=5, flux=parse_flux('force-2'),"
        " cells=(%d, %d), t_final=%r);"
        "t0 = time.perf_counter();"
        "_, rep = run(p, cfg);"
        "print(json.dumps({'backend': kernels.BACKEND,"
        " 'seconds': time.perf_counter() - t0, 'steps': rep.steps}))"
        % (cells, cells, t_final)
    )
    print("\nend-to-end: explosion, order 5, force-2, %dx%d cells, tf=%g"
          % (cells, cells, t_final))
    for name in backends:
        env = dict(os.environ, WENODEC_KERNELS=name)
        proc = subprocess.run([sys.executable, "-c", snippet], env=env,
                              capture_output=True, text=True)
        if proc.returncode != 0:
            print("  %-6s failed:\n%s" % (name, proc.stderr))
            continue
        rec = json.loads(proc.stdout)
        assert rec["backend"] == name
        print("  %-6s %8.2f ms  (%d steps)"
              % (name, 1e3 * rec["seconds"], rec["steps"]))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="3,5,7")
    ap.add_argument("--n1d", type=int, default=16384, help="1D cells")
    ap.add_argument("--n2d", type=int, default=192, help="2D cells per side")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true",
                    help="also time a full run per backend via WENODEC_KERNELS")
    ap.add_argument("--e2e-cells", type=int, default=48)
    ap.add_argument("--e2e-tf", type=float, default=0.05)
    args = ap.parse_args(argv)

    backends = ["numpy"]
    try:
        get_backend("cython")
        backends.append("cython")
    except ImportError:
        print("compiled extension not available; timing numpy only")

    rng = np.random.default_rng(42)
    orders = [int(s) for s in args.orders.split(",")]
    header = "%-22s %5s %7s" % ("kernel", "order", "n")
    for name in backends:
        header += " %10s" % (name + " ms")
    if len(backends) == 2:
        header += " %8s %9s" % ("speedup", "max|dev|")
    print(header)
    for label, fn, n in (("reconstruct_faces_1d", bench_1d, args.n1d),
                         ("reconstruct_faces_2d", bench_2d, args.n2d)):
        for order in orders:
            times, dev = fn(order, n, args.repeats, backends, rng)
            row = "%-22s %5d %7d" % (label, order, n)
            for name in backends:
                row += " %10.3f" % (1e3 * times[name])
            if len(backends) == 2:
                row += " %7.1fx %9.1e" % (times["numpy"] / times["cython"], dev)
            print(row)

    if args.end_to_end:
        end_to_end(backends, args.e2e_cells, args.e2e_tf)
    return 0


if __name__ == "__main__":
    sys.exit(main())
