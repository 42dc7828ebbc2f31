import numpy as np
import pytest
from numpy.testing import assert_allclose

from wenodec import analysis
from wenodec.analysis import (
    GridMismatch,
    convergence_study,
    error_norms,
    exact_cell_averages,
    schlieren_field,
    slice_extract,
)
from wenodec.euler import GAS, conserved_from_primitive
from wenodec.fluxes import parse_flux
from wenodec.mesh import CellField, grid_1d, grid_2d
from wenodec.problems import get_problem
from wenodec.solver import RunConfig, run


def _pair(nx=20, bounds=(-1.0, 1.0)):
    grid = grid_1d(nx, bounds, ghost=1)
    a = CellField.allocate(grid, nc=3)
    b = CellField.allocate(grid, nc=3)
    return a, b


def test_error_norms_zero_for_identical_fields():
    a, b = _pair()
    a.interior[...] = 1.5
    b.interior[...] = 1.5
    rep = error_norms(a, b)
    assert_allclose(rep.l1, 0.0)
    assert_allclose(rep.l2, 0.0)
    assert_allclose(rep.linf, 0.0)


def test_error_norms_constant_offset_closed_form():
    a, b = _pair(nx=64)
    a.interior[...] = 2.0
    b.interior[...] = 2.0
    c = 0.37
    a.interior[0] += c
    rep = error_norms(a, b)
    assert rep.l1[0] == pytest.approx(2.0 * c, rel=1e-13)
    assert rep.l2[0] == pytest.approx(c * np.sqrt(2.0), rel=1e-13)
    assert rep.linf[0] == pytest.approx(c, rel=1e-13)


def test_error_norms_grid_mismatch():
    a, _ = _pair(nx=20)
    _, b = _pair(nx=21)
    with pytest.raises(GridMismatch):
        error_norms(a, b)


def test_error_norms_l1_l2_scaling_inequality():
    rng = np.random.default_rng(3)
    a, b = _pair(nx=50)
    a.interior[...] = rng.uniform(1.0, 2.0, size=a.interior.shape)
    b.interior[...] = rng.uniform(1.0, 2.0, size=b.interior.shape)
    rep = error_norms(a, b)
    volume = 2.0
    assert np.all(rep.l1 <= rep.l2 * np.sqrt(volume) + 1e-15)
    assert np.all(rep.l2 <= rep.linf * np.sqrt(volume) + 1e-15)


def test_advection_error_band_order3_n320():
    problem = get_problem("advection-1d")
    cfg = RunConfig(order=3, flux=parse_flux("force-2"), sigma_cfl=0.9,
                    cells=(320,))
    field, _ = run(problem, cfg)
    exact = exact_cell_averages(problem, field.grid, 3, field.time)
    rep = error_norms(field, exact)
    assert rep.l1[0] == pytest.approx(3.768e-3, rel=0.05)


def test_convergence_study_orders_and_blank_first_row():
    problem = get_problem("advection-1d")
    cfg = RunConfig(order=3, flux=parse_flux("force-2"), sigma_cfl=0.9)
    table = convergence_study(problem, cfg, [40, 80])
    assert table.rows[0].orders is None
    assert table.rows[0].errors is not None
    r0, r1 = table.rows
    want = np.log2(r0.errors.l1[0] / r1.errors.l1[0])
    assert r1.orders[0] == pytest.approx(want, abs=1e-12)
    assert r1.wall_time > 0.0
    assert r1.steps > 0


def test_convergence_study_embeds_crash_rows():
    problem = get_problem("rp2")
    cfg = RunConfig(order=5, flux=parse_flux("rusanov"), sigma_cfl=0.9)
    table = convergence_study(problem, cfg, [50, 100])
    assert all(row.crash is not None for row in table.rows)
    assert all(row.errors is None for row in table.rows)
    assert "negative" in table.rows[0].crash


def test_exact_cell_averages_requires_exact_solution():
    problem = get_problem("explosion")
    grid = grid_2d(8, 8, *problem.bounds, ghost=1)
    with pytest.raises(ValueError):
        exact_cell_averages(problem, grid, 3, 0.1)


def _flat_2d(nx=12, ny=10):
    grid = grid_2d(nx, ny, (0.0, 2.0), (0.0, 1.0), ghost=1)
    field = CellField.allocate(grid, nc=4)
    field.interior[...] = conserved_from_primitive(
        np.array([1.0, 0.0, 0.0, 1.0]), GAS)[:, None, None]
    return field


def test_schlieren_uniform_density_is_all_ones():
    field = _flat_2d()
    out = schlieren_field(field)
    assert_allclose(out, np.ones_like(out))


def test_schlieren_ramp_floors_at_exp_minus_k():
    field = _flat_2d(nx=16, ny=8)
    field.interior[0, 8:, :] += 1.0
    out = schlieren_field(field, K=80.0)
    assert out.min() == pytest.approx(np.exp(-80.0), rel=1e-12)
    assert out.max() <= 1.0
    assert out.min() > 0.0


def test_schlieren_rejects_1d_fields():
    grid = grid_1d(8, (0.0, 1.0), ghost=1)
    field = CellField.allocate(grid, nc=3)
    with pytest.raises(ValueError):
        schlieren_field(field)


def _indexed_2d(nx, ny):
    grid = grid_2d(nx, ny, (0.0, 2.0), (0.0, 1.0), ghost=1)
    field = CellField.allocate(grid, nc=4)
    i = np.arange(nx)[:, None]
    j = np.arange(ny)[None, :]
    rho = 1.0 + 0.01 * i + 0.001 * j
    field.interior[0] = rho
    field.interior[1] = 0.0
    field.interior[2] = 0.0
    field.interior[3] = 1.0 / 0.4  # p = 1 at rest
    return field


def test_slice_constant_field_is_constant():
    field = _flat_2d()
    for line in (("x", 1.0), ("y", 0.5), "diagonal"):
        _, prim = slice_extract(field, line)
        assert_allclose(prim[0], np.ones(prim.shape[1]))
        assert_allclose(prim[3], np.ones(prim.shape[1]))


def test_slice_on_cell_edge_averages_adjacent_rows():
    field = _indexed_2d(10, 8)
    arc, prim = slice_extract(field, ("y", 0.5))
    rho = field.interior[0]
    want = 0.5 * (rho[:, 3] + rho[:, 4])
    assert_allclose(prim[0], want, rtol=1e-13)
    assert_allclose(arc, field.grid.centers_x)


def test_slice_inside_a_cell_takes_that_column():
    field = _indexed_2d(10, 8)
    arc, prim = slice_extract(field, ("x", 0.35))
    assert_allclose(prim[0], field.interior[0][1, :], rtol=1e-13)
    assert_allclose(arc, field.grid.centers_y)


def test_slice_diagonal_square_grid_walks_iii():
    grid = grid_2d(6, 6, (-5.0, 5.0), (-5.0, 5.0), ghost=1)
    field = CellField.allocate(grid, nc=4)
    field.interior[0] = 1.0 + 0.1 * np.arange(36).reshape(6, 6)
    field.interior[1] = 0.0
    field.interior[2] = 0.0
    field.interior[3] = 2.5
    arc, prim = slice_extract(field, "diagonal")
    assert prim.shape[1] == 6
    idx = np.arange(6)
    assert_allclose(prim[0], field.interior[0][idx, idx], rtol=1e-13)
    want = np.hypot(grid.centers_x + 5.0, grid.centers_y + 5.0)
    assert_allclose(arc, want)


def test_slice_diagonal_rectangular_grid_marches_nearest_cells():
    field = _indexed_2d(12, 6)
    arc, prim = slice_extract(field, "diagonal")
    assert prim.shape[1] == 12
    assert np.all(np.diff(arc) > 0.0)
    # endpoints sample the corner cells
    assert prim[0, 0] == pytest.approx(field.interior[0][0, 0])
    assert prim[0, -1] == pytest.approx(field.interior[0][-1, -1])


def test_diagonal_amplitude_loss_is_zero_on_initial_data():
    problem = get_problem("vortex")
    grid = grid_2d(32, 32, *problem.bounds, ghost=1)
    from wenodec.mesh import initialize_cell_averages

    field = initialize_cell_averages(problem.ic, grid, 3)
    loss = analysis.diagonal_amplitude_loss(field, problem)
    assert loss == pytest.approx(0.0, abs=1e-13)


def test_convergence_study_repeats_keeps_errors_and_config_fields():
    problem = get_problem("advection-1d")
    cfg = RunConfig(order=3, flux=parse_flux("rusanov"), sigma_cfl=0.9,
                    t_final=0.1, weno_eps=1e-6)
    once = convergence_study(problem, cfg, [20, 40])
    best = convergence_study(problem, cfg, [20, 40], repeats=3)
    for a, b in zip(once.rows, best.rows):
        assert a.errors.l1[0] == b.errors.l1[0]
        assert a.errors.linf[0] == b.errors.linf[0]
        assert a.steps == b.steps
        assert b.wall_time > 0.0
    with pytest.raises(ValueError, match="repeats"):
        convergence_study(problem, cfg, [20], repeats=0)


def test_convergence_study_propagates_weno_eps_override():
    problem = get_problem("rp1")
    flux = parse_flux("rusanov")
    base = RunConfig(order=5, flux=flux, sigma_cfl=0.9, t_final=0.05)
    loud = RunConfig(order=5, flux=flux, sigma_cfl=0.9, t_final=0.05,
                     weno_eps=1e2)
    a = convergence_study(problem, base, [40]).rows[0]
    b = convergence_study(problem, loud, [40]).rows[0]
    assert a.crash is None
    assert b.crash is not None or a.errors.l1[0] != b.errors.l1[0]
