"""Semidiscrete finite-volume engine and time loop.

The spatial operator is assembled per face family: fill ghosts, freeze the
characteristic matrices at the cell averages, reconstruct face states with
the WENO kernels, evaluate one numerical flux per face (shared by both
neighbors), and difference. Time integration is the deferred-correction
stepper; within one step every stage sees the same dt, so the FORCE-alpha
mesh ratio is constant across stages.

Everything here is sequential and deterministic: identical inputs produce
bitwise identical fields, which the CLI's determinism contract relies on.
"""

import time as _time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels, riemann
from .dec import build_coefficients, dec_step
from .euler import GAS, X_DIR, Y_DIR, GasModel, UnphysicalState, ZeroDensity, eigen_matrices
from .fluxes import FluxChoice, FluxContext, make_flux
from .mesh import (
    CellField,
    face_quadrature_points,
    fill_ghosts,
    ghost_width,
    grid_1d,
    grid_2d,
    initialize_cell_averages,
    validate_boundaries,
)
from .quadrature import gauss_legendre
from .weno import EPS_DEFAULT, build_plan


class Unstable2DConfiguration(ValueError):
    """Flux/dimension pair with no positive linear-stability limit."""


class SimulationCrash(RuntimeError):
    """A run aborted on an unphysical state; carries the crash context."""

    def __init__(self, message, time, step, cause=None, location=None):
        super().__init__(message)
        self.time = time
        self.step = step
        self.cause = cause
        self.location = location


# 2D stability limits for FORCE-alpha at tabulated alpha; alpha = 1 has none.
_FORCE_2D_LIMITS = (
    (2.0, 0.498),
    (3.0, 0.470),
    (4.0, 0.433),
    (5.0, 0.399),
    (6.0, 0.371),
    (7.0, 0.348),
    (8.0, 0.328),
    (9.0, 0.314),
    (10.0, 0.299),
)


def cfl_limit(flux, dimension):
    """Largest stable Courant number for the flux/dimension pair."""
    if flux.variant != "force":
        return 1.0 if dimension == 1 else 0.5
    alpha = float(flux.alpha)
    if dimension == 1:
        return np.sqrt(2.0 * alpha - 1.0) / alpha
    if alpha < 2.0:
        if alpha <= 1.0:
            raise Unstable2DConfiguration(
                "force-1 has no stable Courant number in two dimensions"
            )
        # clamped to the tabulated range; only tabulated alphas ship as presets
        return _FORCE_2D_LIMITS[0][1]
    alphas = np.array([row[0] for row in _FORCE_2D_LIMITS])
    limits = np.array([row[1] for row in _FORCE_2D_LIMITS])
    return float(np.interp(alpha, alphas, limits))


@dataclass(frozen=True)
class RunConfig:
    order: int
    flux: FluxChoice
    sigma_cfl: float = 0.9
    cells: tuple = None        # None: problem default
    t_final: float = None      # None: problem default
    fixed_dt: float = None     # test hook: bypass the CFL formula
    max_steps: int = 10_000_000
    weno_eps: float = None     # None: reconstruction default

    def __post_init__(self):
        if self.order not in (3, 5, 7):
            raise ValueError("order must be 3, 5 or 7, got %r" % (self.order,))
        if not 0.0 < self.sigma_cfl <= 1.0:
            raise ValueError("sigma_cfl must lie in (0, 1]")
        if self.weno_eps is not None and not self.weno_eps > 0.0:
            raise ValueError("weno_eps must be positive")


@dataclass(frozen=True)
class RunReport:
    steps: int
    wall_time: float   # time loop only; setup and I/O excluded
    t_reached: float
    dt_first: float = None
    dt_last: float = None


@dataclass(frozen=True)
class _Tables:
    r: int
    ghost: int
    rows_face: np.ndarray
    d_face: np.ndarray
    beta_q: np.ndarray
    eps: float
    rows_quad: np.ndarray = None
    d_quad: np.ndarray = None
    quad_weights: np.ndarray = None


@lru_cache(maxsize=None)
def _tables(order, dimension, eps=EPS_DEFAULT):
    plan_face = build_plan(order, (-0.5, 0.5), eps)
    if dimension == 1:
        return _Tables(
            plan_face.r,
            ghost_width(order),
            plan_face.rows,
            plan_face.d,
            plan_face.beta_q,
            plan_face.eps,
        )
    nq = face_quadrature_points(order, 2)
    nodes, weights = gauss_legendre(nq)
    plan_quad = build_plan(order, tuple(nodes), eps)
    return _Tables(
        plan_face.r,
        ghost_width(order),
        plan_face.rows,
        plan_face.d,
        plan_face.beta_q,
        plan_face.eps,
        plan_quad.rows,
        plan_quad.d,
        weights,
    )


def make_grid(problem, cells, order):
    cells = tuple(int(n) for n in (cells or problem.default_cells))
    g = ghost_width(order)
    if problem.dimension == 1:
        return grid_1d(cells[0], problem.bounds[0], g)
    nx, ny = cells if len(cells) == 2 else (cells[0], cells[0])
    return grid_2d(nx, ny, problem.bounds[0], problem.bounds[1], g)


def make_initial_field(problem, config):
    grid = make_grid(problem, config.cells, config.order)
    gas = GasModel(problem.gamma)
    return initialize_cell_averages(problem.ic, grid, config.order, time=0.0, gas=gas)


def _diagnose(u, label):
    """First offending index and phrase for a batch of bad states."""
    with np.errstate(all="ignore"):
        rho = np.asarray(u[0], dtype=float)
        kin = u[1] ** 2
        for k in range(2, u.shape[0] - 1):
            kin = kin + u[k] ** 2
        p_like = u[-1] - 0.5 * kin / np.where(rho == 0.0, np.nan, rho)
    bad_rho = ~(rho > 0.0)
    bad_p = ~(p_like > 0.0)
    bad = bad_rho | bad_p | ~np.isfinite(rho) | ~np.isfinite(p_like)
    if not np.any(bad):
        return None, None
    flat = int(np.flatnonzero(bad.reshape(-1))[0])
    idx = np.unravel_index(flat, rho.shape)
    if not np.isfinite(rho[idx]) or not np.isfinite(p_like[idx]):
        kind = "non-finite state"
    elif bad_rho[idx]:
        kind = "negative density"
    else:
        kind = "negative pressure"
    return kind, "%s %s" % (label, tuple(int(i) for i in idx))


def _raise_state_error(u, label, fallback):
    kind, where = _diagnose(u, label)
    if kind is None:
        raise fallback
    err = UnphysicalState("%s at %s" % (kind, where))
    err.location = where
    raise err from fallback


def compute_dt_reference(field, gas=GAS):
    """min over directions of cell size / max wave speed, from cell averages."""
    grid = field.grid
    u = field.interior
    rho = u[0]
    with np.errstate(all="ignore"):
        kin = u[1] ** 2
        for k in range(2, u.shape[0] - 1):
            kin = kin + u[k] ** 2
        p = (gas.gamma - 1.0) * (u[-1] - 0.5 * kin / np.where(rho == 0.0, np.nan, rho))
    if not (np.all(rho > 0.0) and np.all(p > 0.0)):
        _raise_state_error(u, "cell", UnphysicalState("inadmissible cell averages"))
    c = np.sqrt(gas.gamma * p / rho)
    s_x = np.max(np.abs(u[1] / rho) + c)
    limit = grid.dx / s_x
    if grid.dimension == 2:
        s_y = np.max(np.abs(u[2] / rho) + c)
        limit = min(limit, grid.dy / s_y)
    return limit


def compute_dt(field, config, gas=GAS):
    """CFL time step from the cell averages (raw, not clamped to t_final)."""
    if config.fixed_dt is not None:
        return float(config.fixed_dt)
    scale = config.sigma_cfl * cfl_limit(config.flux, field.grid.dimension)
    return scale * compute_dt_reference(field, gas)


_SWAP_XY = np.array([0, 2, 1, 3])


def _face_flux(flux_fn, u_left, u_right, ctx, swap, label):
    shape = u_left.shape
    a = u_left.reshape(shape[0], -1)
    b = u_right.reshape(shape[0], -1)
    if swap:
        a = a[_SWAP_XY]
        b = b[_SWAP_XY]
    try:
        f = flux_fn(a, b, ctx)
    except (UnphysicalState, ZeroDensity) as exc:
        # pin the blame to a face: an inadmissible input if there is one,
        # otherwise the failure came from an intermediate flux state
        for side in (a, b):
            kind, where = _diagnose(side, label)
            if kind is not None:
                err = UnphysicalState("%s at %s" % (kind, where))
                err.location = where
                raise err from exc
        raise
    if swap:
        f = f[_SWAP_XY]
    return f.reshape(shape)


def _rhs_1d(field, bcs, flux_fn, ctx, tables, gas):
    grid = field.grid
    fill_ghosts(field, bcs, gas)
    u = field.interior
    try:
        L, R = eigen_matrices(u, X_DIR, gas)
    except (UnphysicalState, ZeroDensity) as exc:
        _raise_state_error(u, "cell", exc)
    west, east = kernels.reconstruct_faces_1d(
        field.data, L, R, tables.rows_face, tables.d_face, tables.beta_q, tables.eps
    )
    nc, nx = u.shape
    g = grid.ghost
    if bcs["left"].kind == "periodic":
        u_left = np.roll(east, 1, axis=1)
        fhat = _face_flux(flux_fn, u_left, west, ctx, False, "x-face")
        return -(np.roll(fhat, -1, axis=1) - fhat) / grid.dx
    u_left = np.empty((nc, nx + 1))
    u_right = np.empty((nc, nx + 1))
    u_left[:, 1:] = east
    u_right[:, :nx] = west
    # boundary faces: the ghost average is the exterior state (ghost cells
    # have no full reconstruction stencil of their own)
    u_left[:, 0] = field.data[:, g - 1]
    u_right[:, nx] = field.data[:, g + nx]
    fhat = _face_flux(flux_fn, u_left, u_right, ctx, False, "x-face")
    return -(fhat[:, 1:] - fhat[:, :-1]) / grid.dx


def _rhs_2d(field, bcs, flux_fn, ctx_x, ctx_y, tables, gas):
    grid = field.grid
    fill_ghosts(field, bcs, gas)
    u = field.interior
    try:
        Lx, Rx = eigen_matrices(u, X_DIR, gas)
        Ly, Ry = eigen_matrices(u, Y_DIR, gas)
    except (UnphysicalState, ZeroDensity) as exc:
        _raise_state_error(u, "cell", exc)
    nc, nx, ny = u.shape
    g = grid.ghost
    wq = tables.quad_weights

    west, east = kernels.reconstruct_faces_2d(
        field.data, Lx, Rx, Ly, Ry, tables.rows_face, tables.d_face,
        tables.rows_quad, tables.d_quad, tables.beta_q, tables.eps, axis=0,
    )
    if bcs["left"].kind == "periodic":
        u_left = np.roll(east, 1, axis=2)
        fq = _face_flux(flux_fn, u_left, west, ctx_x, False, "x-face")
        fbar = np.einsum("q,cqij->cij", wq, fq)
        rhs = -(np.roll(fbar, -1, axis=1) - fbar) / grid.dx
    else:
        nq = west.shape[1]
        u_left = np.empty((nc, nq, nx + 1, ny))
        u_right = np.empty_like(u_left)
        u_left[:, :, 1:, :] = east
        u_right[:, :, :nx, :] = west
        u_left[:, :, 0, :] = field.data[:, g - 1, g : g + ny][:, None, :]
        u_right[:, :, nx, :] = field.data[:, g + nx, g : g + ny][:, None, :]
        fq = _face_flux(flux_fn, u_left, u_right, ctx_x, False, "x-face")
        fbar = np.einsum("q,cqij->cij", wq, fq)
        rhs = -(fbar[:, 1:, :] - fbar[:, :-1, :]) / grid.dx

    south, north = kernels.reconstruct_faces_2d(
        field.data, Lx, Rx, Ly, Ry, tables.rows_face, tables.d_face,
        tables.rows_quad, tables.d_quad, tables.beta_q, tables.eps, axis=1,
    )
    if bcs["bottom"].kind == "periodic":
        u_low = np.roll(north, 1, axis=3)
        gq = _face_flux(flux_fn, u_low, south, ctx_y, True, "y-face")
        gbar = np.einsum("q,cqij->cij", wq, gq)
        rhs -= (np.roll(gbar, -1, axis=2) - gbar) / grid.dy
    else:
        nq = south.shape[1]
        u_low = np.empty((nc, nq, nx, ny + 1))
        u_high = np.empty_like(u_low)
        u_low[:, :, :, 1:] = north
        u_high[:, :, :, :ny] = south
        u_low[:, :, :, 0] = field.data[:, g : g + nx, g - 1][:, None, :]
        u_high[:, :, :, ny] = field.data[:, g : g + nx, g + ny][:, None, :]
        gq = _face_flux(flux_fn, u_low, u_high, ctx_y, True, "y-face")
        gbar = np.einsum("q,cqij->cij", wq, gq)
        rhs -= (gbar[:, :, 1:] - gbar[:, :, :-1]) / grid.dy
    return rhs


def semidiscrete_rhs(field, bcs, config, dt, gas=GAS):
    """Time derivative of the interior cell averages for a given step size.

    dt enters only through the FORCE-alpha mesh ratio; upwind fluxes ignore
    it. Ghost cells of `field` are overwritten as a side effect.
    """
    eps = EPS_DEFAULT if config.weno_eps is None else float(config.weno_eps)
    tables = _tables(config.order, field.grid.dimension, eps)
    flux_fn = make_flux(config.flux)
    if field.grid.dimension == 1:
        ctx = FluxContext(field.grid.dx / dt, gas)
        return _rhs_1d(field, bcs, flux_fn, ctx, tables, gas)
    ctx_x = FluxContext(field.grid.dx / dt, gas)
    ctx_y = FluxContext(field.grid.dy / dt, gas)
    return _rhs_2d(field, bcs, flux_fn, ctx_x, ctx_y, tables, gas)


def run(problem, config):
    """Advance a problem to its final time.

    Returns (final CellField, RunReport). Raises SimulationCrash when a
    state turns unphysical; the exception records time, step, cause and,
    when identifiable, the offending cell or face.
    """
    gas = GasModel(problem.gamma)
    bcs = validate_boundaries(problem.bcs, problem.dimension)
    if problem.dimension == 2:
        cfl_limit(config.flux, 2)  # reject force-1 before any allocation
    grid = make_grid(problem, config.cells, config.order)
    eps = EPS_DEFAULT if config.weno_eps is None else float(config.weno_eps)
    tables = _tables(config.order, grid.dimension, eps)
    coeffs = build_coefficients(config.order)
    flux_fn = make_flux(config.flux)
    field = initialize_cell_averages(problem.ic, grid, config.order, time=0.0, gas=gas)
    t_final = problem.t_final if config.t_final is None else float(config.t_final)

    scratch = field.copy()
    shape = field.interior.shape

    def rhs_for(dt):
        if grid.dimension == 1:
            ctx = FluxContext(grid.dx / dt, gas)

            def system(t, y):
                scratch.interior[...] = y.reshape(shape)
                return _rhs_1d(scratch, bcs, flux_fn, ctx, tables, gas).reshape(-1)

        else:
            ctx_x = FluxContext(grid.dx / dt, gas)
            ctx_y = FluxContext(grid.dy / dt, gas)

            def system(t, y):
                scratch.interior[...] = y.reshape(shape)
                return _rhs_2d(scratch, bcs, flux_fn, ctx_x, ctx_y, tables, gas).reshape(-1)

        return system

    t = 0.0
    steps = 0
    dt_first = None
    dt_last = None
    start = _time.perf_counter()
    try:
        while t < t_final and steps < config.max_steps:
            dt = compute_dt(field, config, gas)
            if t + dt >= t_final:
                dt = t_final - t
                t_next = t_final
            else:
                t_next = t + dt
            if dt <= 0.0:
                break
            y = dec_step(rhs_for(dt), t, field.interior.reshape(-1), dt, coeffs)
            field.interior[...] = y.reshape(shape)
            t = t_next
            field.time = t
            steps += 1
            dt_last = dt
            if dt_first is None:
                dt_first = dt
    except (UnphysicalState, ZeroDensity, riemann.VacuumGenerated, riemann.NoConvergence) as exc:
        wall = _time.perf_counter() - start
        crash = SimulationCrash(
            "step %d, t=%.6g: %s" % (steps, t, exc),
            time=t,
            step=steps,
            cause=exc,
            location=getattr(exc, "location", None),
        )
        crash.wall_time = wall
        raise crash from exc
    wall = _time.perf_counter() - start
    return field, RunReport(steps, wall, t, dt_first, dt_last)
