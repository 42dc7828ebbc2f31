"""Second-order reference solver: MUSCL + exact Riemann fluxes + SSPRK2.

Characteristic-variable minmod reconstruction keeps the scheme clean on
strong shocks; it exists to generate trusted profiles for problems without
closed-form solutions, not to be fast.
"""

from importlib import resources
from pathlib import Path

import numpy as np

from .euler import GasModel, X_DIR, Y_DIR, eigen_matrices, ncomp
from .fluxes import FluxContext, exact_rs_flux
from .mesh import CellField, fill_ghosts, grid_1d, grid_2d, initialize_cell_averages
from .solver import compute_dt_reference

REFERENCE_SCHEME = "muscl-exact-rs-ssprk2"
_PACKAGED_REFERENCE = "shock_turbulence_reference.csv"


def _minmod(a, b):
    return 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))


def _muscl_faces(ug, normal, gas):
    """Limited interface states along the leading cell axis.

    ug has one ghost layer on each end of axis 1. Returns (west, east) on
    the interior cells: boundary extrapolated values at the left and right
    cell faces.
    """
    left, right = eigen_matrices(ug[:, 1:-1], normal, gas)
    dl = np.moveaxis(ug[:, 1:-1] - ug[:, :-2], 0, -1)[..., None]
    dr = np.moveaxis(ug[:, 2:] - ug[:, 1:-1], 0, -1)[..., None]
    slope = _minmod(left @ dl, left @ dr)
    half = np.moveaxis((right @ slope)[..., 0], -1, 0) * 0.5
    return ug[:, 1:-1] - half, ug[:, 1:-1] + half


def _rhs_1d(field, bcs, gas, ctx):
    grid = field.grid
    g = grid.ghost
    fill_ghosts(field, bcs, gas)
    west, east = _muscl_faces(field.data[:, g - 1 : g + grid.nx + 1], X_DIR, gas)
    if bcs["left"].kind == "periodic":
        ul = np.roll(east, 1, axis=1)
        ur = west
        fhat = exact_rs_flux(ul, ur, ctx)
        return -(np.roll(fhat, -1, axis=1) - fhat) / grid.dx
    nc = ncomp(1)
    ul = np.empty((nc, grid.nx + 1))
    ur = np.empty_like(ul)
    ul[:, 1:], ur[:, :-1] = east, west
    ul[:, 0] = field.data[:, g - 1]
    ur[:, -1] = field.data[:, g + grid.nx]
    fhat = exact_rs_flux(ul, ur, ctx)
    return -(fhat[:, 1:] - fhat[:, :-1]) / grid.dx


_SWAP = np.array([0, 2, 1, 3])


def _rhs_2d(field, bcs, gas, ctx):
    grid = field.grid
    g = grid.ghost
    nx, ny = grid.nx, grid.ny
    fill_ghosts(field, bcs, gas)
    rhs = np.zeros((ncomp(2), nx, ny))

    for axis, normal, dh in ((0, X_DIR, grid.dx), (1, Y_DIR, grid.dy)):
        data = field.data if axis == 0 else field.data.transpose(0, 2, 1)
        n, m = (nx, ny) if axis == 0 else (ny, nx)
        lo, hi = ("left", "right") if axis == 0 else ("bottom", "top")
        block = data[:, g - 1 : g + n + 1, g : g + m]
        west, east = _muscl_faces(block.reshape(block.shape[0], n + 2, -1), normal, gas)
        west = west.reshape(-1, n, m)
        east = east.reshape(-1, n, m)
        if bcs[lo].kind == "periodic":
            ul = np.roll(east, 1, axis=1)
            ur = west
        else:
            ul = np.empty((ncomp(2), n + 1, m))
            ur = np.empty_like(ul)
            ul[:, 1:], ur[:, :-1] = east, west
            ul[:, 0] = data[:, g - 1, g : g + m]
            ur[:, -1] = data[:, g + n, g : g + m]
        if axis == 1:
            ul, ur = ul[_SWAP], ur[_SWAP]
        fhat = exact_rs_flux(ul.reshape(4, -1), ur.reshape(4, -1), ctx).reshape(ul.shape)
        if axis == 1:
            fhat = fhat[_SWAP]
        if bcs[lo].kind == "periodic":
            diff = (np.roll(fhat, -1, axis=1) - fhat) / dh
        else:
            diff = (fhat[:, 1:] - fhat[:, :-1]) / dh
        rhs -= diff if axis == 0 else diff.transpose(0, 2, 1)
    return rhs


def reference_run(problem, cells, cfl=None, t_final=None, max_steps=10_000_000):
    """March the reference scheme to t_final and return the final field."""
    gas = GasModel(problem.gamma)
    if problem.dimension == 1:
        (nx,) = (cells,) if np.isscalar(cells) else tuple(cells)
        grid = grid_1d(int(nx), problem.bounds[0], ghost=2)
        rhs_fn = _rhs_1d
        cfl = 0.5 if cfl is None else cfl
    else:
        nx, ny = (cells, cells) if np.isscalar(cells) else tuple(cells)
        grid = grid_2d(int(nx), int(ny), problem.bounds[0], problem.bounds[1], ghost=2)
        rhs_fn = _rhs_2d
        cfl = 0.25 if cfl is None else cfl
    field = initialize_cell_averages(problem.ic, grid, 3, 0.0, gas)
    t_final = problem.t_final if t_final is None else t_final
    ctx = FluxContext(mesh_ratio=1.0, gas=gas)
    scratch = field.copy()

    t = 0.0
    for _ in range(max_steps):
        if t >= t_final:
            break
        dt = cfl * compute_dt_reference(field, gas)
        dt = min(dt, t_final - t)
        u0 = field.interior.copy()
        k1 = rhs_fn(field, problem.bcs, gas, ctx)
        scratch.interior[...] = u0 + dt * k1
        k2 = rhs_fn(scratch, problem.bcs, gas, ctx)
        field.interior[...] = 0.5 * u0 + 0.5 * (scratch.interior + dt * k2)
        t += dt
        field.time = t
    else:
        raise RuntimeError("reference solver exceeded %d steps" % max_steps)
    return field


def _sidecar_name(name):
    return name[: -len(".csv")] + ".meta.csv" if name.endswith(".csv") else name + ".meta.csv"


def load_reference_profile(path=None):
    """Stored reference profile as ({x, rho, u, p}, metadata) dicts.

    With no path, reads the dataset shipped inside the package. The sidecar
    is optional; a missing one yields empty metadata.
    """
    if path is None:
        data_p = resources.files("wenodec").joinpath("data", _PACKAGED_REFERENCE)
        meta_p = resources.files("wenodec").joinpath("data", _sidecar_name(_PACKAGED_REFERENCE))
    else:
        data_p = Path(path)
        meta_p = data_p.parent / _sidecar_name(data_p.name)
    with data_p.open() as fh:
        names = fh.readline().strip().split(",")
        raw = np.loadtxt(fh, delimiter=",", ndmin=2)
    if raw.shape[1] != len(names):
        raise ValueError("reference csv has %d columns, header names %d" % (raw.shape[1], len(names)))
    profile = {name: raw[:, k] for k, name in enumerate(names)}
    meta = {}
    try:
        with meta_p.open() as fh:
            keys = fh.readline().strip().split(",")
            vals = fh.readline().strip().split(",")
        meta = dict(zip(keys, vals))
    except (FileNotFoundError, OSError):
        pass
    return profile, meta
