import math

import numpy as np
import pytest

from wenodec import euler


def random_admissible(rng, dim, n):
    """Well-scaled random states: rho, p in [0.5, 2], velocities in [-1, 1]."""
    w = np.empty((3 if dim == 1 else 4, n))
    w[0] = rng.uniform(0.5, 2.0, n)
    w[-1] = rng.uniform(0.5, 2.0, n)
    for k in range(1, w.shape[0] - 1):
        w[k] = rng.uniform(-1.0, 1.0, n)
    return euler.conserved_from_primitive(w)


def test_primitive_from_conserved_examples():
    w = euler.primitive_from_conserved(np.array([1.0, 0.75, 2.78125]))
    np.testing.assert_allclose(w, [1.0, 0.75, 1.0], rtol=1e-14)
    w = euler.primitive_from_conserved(np.array([1.0, 0.0, 2.5]))
    np.testing.assert_allclose(w, [1.0, 0.0, 1.0], rtol=1e-14)


def test_rp4_left_state_round_trip():
    prim = np.array([5.99924, 19.5975, 460.894])
    u = euler.conserved_from_primitive(prim)
    np.testing.assert_allclose(euler.primitive_from_conserved(u), prim, rtol=1e-14)


def test_round_trip_random():
    rng = np.random.default_rng(7)
    for dim in (1, 2):
        u = random_admissible(rng, dim, 500)
        back = euler.conserved_from_primitive(euler.primitive_from_conserved(u))
        np.testing.assert_allclose(back, u, rtol=1e-14)


def test_zero_density_raises():
    with pytest.raises(euler.ZeroDensity):
        euler.primitive_from_conserved(np.array([0.0, 0.0, 2.5]))


def test_physical_flux_examples():
    u = euler.conserved_from_primitive(np.array([1.0, 0.0, 1.0]))
    np.testing.assert_allclose(euler.physical_flux(u), [0.0, 1.0, 0.0], atol=1e-15)

    u = np.array([1.0, 0.75, 2.78125])
    np.testing.assert_allclose(
        euler.physical_flux(u), [0.75, 1.5625, 2.8359375], rtol=1e-14
    )

    u2 = euler.conserved_from_primitive(np.array([1.0, 1.0, 1.0, 1.0]))
    g = euler.physical_flux(u2, normal=euler.Y_DIR)
    assert g[1] == pytest.approx(1.0, rel=1e-14)  # rho*u*v


def test_sound_speed_values():
    assert euler.sound_speed(1.0, 1.0) == pytest.approx(1.1832159566199232, rel=1e-15)
    assert euler.sound_speed(1.0, 1.0) == math.sqrt(1.4)
    assert euler.sound_speed(1.4, 1.0) == pytest.approx(1.0, rel=1e-15)
    # RP1 right state
    assert euler.sound_speed(0.125, 0.1) == pytest.approx(math.sqrt(1.12), rel=1e-15)


def test_sound_speed_unphysical():
    with pytest.raises(euler.UnphysicalState):
        euler.sound_speed(1.0, -0.2)
    with pytest.raises(euler.UnphysicalState):
        euler.sound_speed(1.0, 0.0)


def test_admissibility_predicate_represents_bad_states():
    u = np.array([[1.0, -1.0, 1.0], [0.0, 0.0, 0.0], [2.5, 2.5, 0.0]])
    assert list(euler.is_admissible(u)) == [True, False, False]


def test_rotational_consistency():
    rng = np.random.default_rng(3)
    w = np.empty((4, 50))
    w[0] = rng.uniform(0.5, 2.0, 50)
    w[1] = rng.uniform(-1, 1, 50)
    w[2] = rng.uniform(-1, 1, 50)
    w[3] = rng.uniform(0.5, 2.0, 50)
    u = euler.conserved_from_primitive(w)
    w_swap = w[[0, 2, 1, 3]]
    u_swap = euler.conserved_from_primitive(w_swap)
    gy = euler.physical_flux(u, normal=euler.Y_DIR)
    fx = euler.physical_flux(u_swap, normal=euler.X_DIR)
    np.testing.assert_allclose(gy, fx[[0, 2, 1, 3]], rtol=1e-14)


def test_eigen_wave_speed_examples():
    u = euler.conserved_from_primitive(np.array([1.0, 0.0, 1.0]))
    dec = euler.eigen_decomposition(u)
    c = math.sqrt(1.4)
    np.testing.assert_allclose(dec.wave_speeds, [-c, 0.0, c], atol=1e-15)

    u3 = euler.conserved_from_primitive(np.array([1.0, 0.0, 1000.0]))
    dec3 = euler.eigen_decomposition(u3)
    np.testing.assert_allclose(dec3.left @ dec3.right, np.eye(3), atol=1e-12)


def test_eigen_swapped_velocity_symmetry():
    u = euler.conserved_from_primitive(np.array([1.3, 0.4, -0.7, 2.0]))
    u_swap = euler.conserved_from_primitive(np.array([1.3, -0.7, 0.4, 2.0]))
    sx = euler.eigen_decomposition(u, normal=euler.X_DIR).wave_speeds
    sy = euler.eigen_decomposition(u_swap, normal=euler.Y_DIR).wave_speeds
    np.testing.assert_allclose(sx, sy, rtol=1e-14)


def _flux_longdouble(u, nu1, nu2, gamma):
    # independent flux evaluation in extended precision for the FD oracle
    u = np.asarray(u, dtype=np.longdouble)
    rho = u[0]
    if u.shape[0] == 3:
        vx = u[1] / rho
        kin = u[1] * vx
        vn = nu1 * vx
    else:
        vx, vy = u[1] / rho, u[2] / rho
        kin = u[1] * vx + u[2] * vy
        vn = nu1 * vx + nu2 * vy
    p = (np.longdouble(gamma) - 1) * (u[-1] - kin / 2)
    F = u * vn
    F[1] += p * nu1
    if u.shape[0] == 4:
        F[2] += p * nu2
    F[-1] += p * vn
    return F


def _fd_jacobian(u, nu1, nu2, gamma):
    nc = u.shape[0]
    J = np.empty((nc, nc), dtype=np.longdouble)
    for j in range(nc):
        h = 1e-6 * max(1.0, abs(u[j]))
        up, um = u.astype(np.longdouble), u.astype(np.longdouble)
        up[j] += h
        um[j] -= h
        J[:, j] = (_flux_longdouble(up, nu1, nu2, gamma) - _flux_longdouble(um, nu1, nu2, gamma)) / (2 * h)
    return J.astype(float)


@pytest.mark.parametrize("dim", [1, 2])
def test_eigen_diagonalizes_fd_jacobian(dim):
    rng = np.random.default_rng(11)
    states = random_admissible(rng, dim, 100)
    normals = [(1.0, 0.0)] if dim == 1 else [(1.0, 0.0), (0.0, 1.0)]
    worst = 0.0
    for i in range(states.shape[1]):
        u = states[:, i]
        for nu in normals:
            dec = euler.eigen_decomposition(u, normal=nu)
            J = _fd_jacobian(u, nu[0], nu[1], 1.4)
            D = dec.left @ J @ dec.right
            err = np.max(np.abs(D - np.diag(dec.wave_speeds)))
            worst = max(worst, err)
    assert worst <= 1e-10


def test_max_wave_speed_homogeneity():
    rng = np.random.default_rng(5)
    for dim in (1, 2):
        states = random_admissible(rng, dim, 200)
        nu = (1.0, 0.0)
        smax = euler.max_wave_speed(states, normal=nu)
        for i in range(states.shape[1]):
            dec = euler.eigen_decomposition(states[:, i], normal=nu)
            assert np.max(np.abs(dec.wave_speeds)) == smax[i]
