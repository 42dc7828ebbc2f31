"""Uniform structured grids, ghost cells, boundary fill, cell-average init.

Fields store the component axis first and include a ghost frame of fixed
width on every side: data[(nc, nx + 2g)] in 1D, data[(nc, nx + 2g, ny + 2g)]
in 2D. Interior cell (i, j) lives at padded index (i + g, j + g). Ghost
values are never trusted across calls; the solver re-derives them from the
boundary conditions before every reconstruction.
"""

from dataclasses import dataclass

import numpy as np

from .euler import GAS, conserved_from_primitive, ncomp
from .quadrature import gauss_legendre


def ghost_width(order):
    """r - 1 cells per side for a reconstruction of order 2r - 1."""
    if order not in (3, 5, 7):
        raise ValueError("unsupported order %r" % (order,))
    return (order - 1) // 2


def face_quadrature_points(order, dimension):
    """Number of Gauss-Legendre points per face integral.

    1D faces are points, no rule needed. 2D faces use ceil(order/2) points,
    except order 5 which needs 4 for the design order to survive the face
    integration.
    """
    if dimension == 1:
        return 1
    return {3: 2, 5: 4, 7: 4}[order]


def init_quadrature_points(order, dimension):
    """Per-axis Gauss-Legendre count for cell-average initialization."""
    if dimension == 1:
        return (order + 1) // 2
    return face_quadrature_points(order, dimension)


@dataclass(frozen=True)
class Grid:
    """Uniform rectangular mesh with a ghost frame.

    bounds is ((x0, x1),) in 1D and ((x0, x1), (y0, y1)) in 2D.
    """

    dimension: int
    nx: int
    ny: int | None
    bounds: tuple
    ghost: int

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError("dimension must be 1 or 2")
        if self.nx < 1 or (self.dimension == 2 and (self.ny is None or self.ny < 1)):
            raise ValueError("cell counts must be positive")
        if self.ghost < 1:
            raise ValueError("ghost width must be at least 1")
        for lo, hi in self.bounds:
            if not hi > lo:
                raise ValueError("empty domain extent (%r, %r)" % (lo, hi))

    @property
    def dx(self):
        x0, x1 = self.bounds[0]
        return (x1 - x0) / self.nx

    @property
    def dy(self):
        if self.dimension == 1:
            raise AttributeError("1D grid has no dy")
        y0, y1 = self.bounds[1]
        return (y1 - y0) / self.ny

    @property
    def centers_x(self):
        x0, _ = self.bounds[0]
        return x0 + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def centers_y(self):
        y0, _ = self.bounds[1]
        return y0 + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def cell_volume(self):
        return self.dx if self.dimension == 1 else self.dx * self.dy

    def padded_shape(self, nc):
        if self.dimension == 1:
            return (nc, self.nx + 2 * self.ghost)
        return (nc, self.nx + 2 * self.ghost, self.ny + 2 * self.ghost)


def grid_1d(nx, bounds, ghost):
    return Grid(1, int(nx), None, (tuple(float(b) for b in bounds),), int(ghost))


def grid_2d(nx, ny, bounds_x, bounds_y, ghost):
    return Grid(
        2,
        int(nx),
        int(ny),
        (tuple(float(b) for b in bounds_x), tuple(float(b) for b in bounds_y)),
        int(ghost),
    )


@dataclass(frozen=True)
class BoundaryCondition:
    kind: str            # "periodic" | "transmissive" | "inflow"
    state: tuple = None  # inflow only: fixed primitive state

    def __post_init__(self):
        if self.kind not in ("periodic", "transmissive", "inflow"):
            raise ValueError("unknown boundary kind %r" % (self.kind,))
        if self.kind == "inflow" and self.state is None:
            raise ValueError("inflow boundary needs a primitive state")


PERIODIC = BoundaryCondition("periodic")
TRANSMISSIVE = BoundaryCondition("transmissive")


def inflow(primitive):
    return BoundaryCondition("inflow", tuple(float(v) for v in primitive))


_SIDES = {1: ("left", "right"), 2: ("left", "right", "bottom", "top")}
_PAIRS = (("left", "right"), ("bottom", "top"))


def validate_boundaries(bcs, dimension):
    """Check side coverage and periodic pairing; returns bcs unchanged."""
    sides = _SIDES[dimension]
    missing = [s for s in sides if s not in bcs]
    if missing:
        raise ValueError("missing boundary conditions for sides %s" % (missing,))
    for a, b in _PAIRS:
        if a in bcs and b in bcs:
            if (bcs[a].kind == "periodic") != (bcs[b].kind == "periodic"):
                raise ValueError("periodic boundary on %s must be paired with %s" % (a, b))
    return bcs


@dataclass
class CellField:
    """Conserved cell averages with ghost frame and a time stamp."""

    grid: Grid
    data: np.ndarray
    time: float = 0.0

    @classmethod
    def allocate(cls, grid, nc=None, time=0.0):
        nc = ncomp(grid.dimension) if nc is None else nc
        return cls(grid, np.zeros(grid.padded_shape(nc)), time)

    @property
    def interior(self):
        """Writable view of the interior block (nc, nx[, ny])."""
        g = self.grid.ghost
        if self.grid.dimension == 1:
            return self.data[:, g : g + self.grid.nx]
        return self.data[:, g : g + self.grid.nx, g : g + self.grid.ny]

    def copy(self):
        return CellField(self.grid, self.data.copy(), self.time)


def _fill_axis(block, g, n, lo_bc, hi_bc, gas):
    # block is (nc, n + 2g, ...) with the fill axis second; trailing axes ride
    # along so the same code serves 1D arrays and 2D column/row sweeps
    if lo_bc.kind == "periodic":
        block[:, :g] = block[:, n : n + g]
    elif lo_bc.kind == "transmissive":
        block[:, :g] = block[:, g : g + 1]
    else:
        fixed = conserved_from_primitive(np.array(lo_bc.state), gas)
        block[:, :g] = fixed[(...,) + (None,) * (block.ndim - 1)]
    if hi_bc.kind == "periodic":
        block[:, n + g :] = block[:, g : 2 * g]
    elif hi_bc.kind == "transmissive":
        block[:, n + g :] = block[:, n + g - 1 : n + g]
    else:
        fixed = conserved_from_primitive(np.array(hi_bc.state), gas)
        block[:, n + g :] = fixed[(...,) + (None,) * (block.ndim - 1)]


def fill_ghosts(field, bcs, gas=GAS):
    """Derive all ghost values from the interior and the BCs, in place.

    2D order: x sides first over interior rows, then y sides over every
    column including the fresh x ghosts, so corners inherit the nearest
    interior value (or the wrapped diagonal block when fully periodic).
    Idempotent: ghosts depend only on interior data and fixed states.
    """
    grid = field.grid
    g = grid.ghost
    if grid.dimension == 1:
        _fill_axis(field.data, g, grid.nx, bcs["left"], bcs["right"], gas)
        return field
    interior_rows = field.data[:, :, g : g + grid.ny]
    _fill_axis(interior_rows, g, grid.nx, bcs["left"], bcs["right"], gas)
    swapped = field.data.transpose(0, 2, 1)
    _fill_axis(swapped, g, grid.ny, bcs["bottom"], bcs["top"], gas)
    return field


def initialize_cell_averages(ic, grid, order, time=0.0, gas=GAS):
    """Project a pointwise primitive IC onto conserved cell averages.

    ic maps coordinate arrays to a primitive array with a leading component
    axis: ic(x) in 1D, ic(x, y) in 2D. The projection is tensor-product
    Gauss-Legendre with the per-axis point count tied to the face rule, so
    initialization cannot cap the scheme's design order. Ghosts stay zero;
    callers run fill_ghosts before reconstruction.
    """
    npts = init_quadrature_points(order, grid.dimension)
    nodes, weights = gauss_legendre(npts)
    field = CellField.allocate(grid, time=time)
    avg = field.interior
    if grid.dimension == 1:
        cx = grid.centers_x
        for node, weight in zip(nodes, weights):
            w = np.asarray(ic(cx + grid.dx * node), dtype=float)
            avg += weight * conserved_from_primitive(w, gas)
        return field
    x_mesh, y_mesh = np.meshgrid(grid.centers_x, grid.centers_y, indexing="ij")
    for node_a, weight_a in zip(nodes, weights):
        for node_b, weight_b in zip(nodes, weights):
            w = np.asarray(ic(x_mesh + grid.dx * node_a, y_mesh + grid.dy * node_b), dtype=float)
            avg += (weight_a * weight_b) * conserved_from_primitive(w, gas)
    return field
