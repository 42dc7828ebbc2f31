"""Ideal-gas Euler equations: conversions, fluxes, wave speeds, eigenstructure.

States are numpy arrays with the component axis first: (rho, rho*u, E) in 1D,
(rho, rho*u, rho*v, E) in 2D. Every operation broadcasts over trailing axes,
so a single state, a row of faces or a full 2D field all go through the same
code path.
"""

from dataclasses import dataclass

import numpy as np


class ZeroDensity(ZeroDivisionError):
    """Conversion hit rho = 0."""


class UnphysicalState(ArithmeticError):
    """Non-positive density or pressure where a physical value is required.

    This is the canonical simulation-crash trigger: wave-speed estimates and
    eigenvector matrices need a real sound speed.
    """


@dataclass(frozen=True)
class GasModel:
    """Ideal gas closure e = p / (rho*(gamma-1))."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1, got %r" % (self.gamma,))


GAS = GasModel(1.4)

# Axis-aligned unit normals; general (nu1, nu2) works too but only these are
# exercised by the solver.
X_DIR = (1.0, 0.0)
Y_DIR = (0.0, 1.0)


def ncomp(dim):
    return 3 if dim == 1 else 4


def velocities(u):
    """Velocity components from a conserved array; list of len dim."""
    rho = u[0]
    if np.any(rho == 0.0):
        raise ZeroDensity("density is exactly zero")
    return [u[k] / rho for k in range(1, u.shape[0] - 1)]


def pressure(u, gas=GAS):
    """Pressure from conserved variables (pure algebra, sign unchecked)."""
    rho = u[0]
    if np.any(rho == 0.0):
        raise ZeroDensity("density is exactly zero")
    kin = u[1] ** 2
    for k in range(2, u.shape[0] - 1):
        kin = kin + u[k] ** 2
    return (gas.gamma - 1.0) * (u[-1] - 0.5 * kin / rho)


def primitive_from_conserved(u, gas=GAS):
    """(rho, rho*u, [rho*v], E) -> (rho, u, [v], p). Inverse of
    conserved_from_primitive wherever rho != 0."""
    w = np.empty_like(np.asarray(u, dtype=float))
    w[0] = u[0]
    for k, vel in enumerate(velocities(u)):
        w[1 + k] = vel
    w[-1] = pressure(u, gas)
    return w


def conserved_from_primitive(w, gas=GAS):
    """(rho, u, [v], p) -> (rho, rho*u, [rho*v], E)."""
    w = np.asarray(w, dtype=float)
    u = np.empty_like(w)
    u[0] = w[0]
    kin = np.zeros_like(w[0])
    for k in range(1, w.shape[0] - 1):
        u[k] = w[0] * w[k]
        kin = kin + w[k] ** 2
    u[-1] = w[-1] / (gas.gamma - 1.0) + 0.5 * w[0] * kin
    return u


def is_admissible(u, gas=GAS):
    """Elementwise physical-admissibility predicate: rho > 0 and p > 0.

    Unphysical states are representable on purpose; the solver detects them,
    it does not prevent them.
    """
    rho = np.asarray(u[0])
    with np.errstate(all="ignore"):
        kin = u[1] ** 2
        for k in range(2, u.shape[0] - 1):
            kin = kin + u[k] ** 2
        e_int = u[-1] - 0.5 * np.where(rho != 0.0, kin / np.where(rho == 0.0, 1.0, rho), np.inf)
    return (rho > 0.0) & (e_int > 0.0) & np.isfinite(rho) & np.isfinite(e_int)


def sound_speed(rho, p, gas=GAS):
    """c = sqrt(gamma*p/rho); raises UnphysicalState when p/rho <= 0."""
    rho = np.asarray(rho, dtype=float)
    p = np.asarray(p, dtype=float)
    ratio = np.divide(p, rho, out=np.full(np.broadcast(p, rho).shape, np.nan), where=rho != 0.0)
    if not np.all(ratio > 0.0):
        raise UnphysicalState("sound speed undefined: p/rho <= 0")
    return np.sqrt(gas.gamma * ratio)


def physical_flux(u, normal=X_DIR, gas=GAS):
    """Directional flux nu1*f(u) + nu2*g(u).

    Pure evaluation: no admissibility check, valid algebra for any rho != 0.
    In 1D `normal` may be X_DIR or (+-1, 0).
    """
    u = np.asarray(u, dtype=float)
    nc = u.shape[0]
    nu1, nu2 = normal
    vels = velocities(u)
    p = pressure(u, gas)
    if nc == 3:
        vn = nu1 * vels[0]
    else:
        vn = nu1 * vels[0] + nu2 * vels[1]
    F = np.empty_like(u)
    F[0] = u[0] * vn
    F[1] = u[1] * vn + p * nu1
    if nc == 4:
        F[2] = u[2] * vn + p * nu2
    F[-1] = (u[-1] + p) * vn
    return F


def max_wave_speed(u, normal=X_DIR, gas=GAS):
    """|v.nu| + c, elementwise."""
    vels = velocities(u)
    nu1, nu2 = normal
    vn = nu1 * vels[0] + (nu2 * vels[1] if len(vels) == 2 else 0.0)
    return np.abs(vn) + sound_speed(u[0], pressure(u, gas), gas)


@dataclass
class EigenDecomposition:
    wave_speeds: np.ndarray  # ascending: vn-c, vn, [vn,] vn+c
    left: np.ndarray         # rows are left eigenvectors, L = R^-1
    right: np.ndarray        # columns are right eigenvectors


def eigen_matrices(u, normal=X_DIR, gas=GAS):
    """Frozen characteristic projection matrices for a batch of states.

    Parameters
    ----------
    u : array (nc, ...) of conserved states
    normal : (nu1, nu2) unit direction

    Returns
    -------
    L, R : arrays (..., nc, nc) with L @ R = identity. The analytic Euler
        eigenvectors of the normal Jacobian; the tangential velocity rides
        along as a linearly degenerate field in 2D.
    """
    u = np.asarray(u, dtype=float)
    nc = u.shape[0]
    nu1, nu2 = normal
    g = gas.gamma
    rho = u[0]
    vels = velocities(u)
    p = pressure(u, gas)
    c = sound_speed(rho, p, gas)
    H = (u[-1] + p) / rho

    shape = np.broadcast(rho, c).shape
    L = np.zeros(shape + (nc, nc))
    R = np.zeros(shape + (nc, nc))

    if nc == 3:
        vx = vels[0]
        vn = nu1 * vx
        b1 = (g - 1.0) / c**2
        b2 = 0.5 * b1 * vx**2

        R[..., 0, 0] = 1.0
        R[..., 1, 0] = vx - c * nu1
        R[..., 2, 0] = H - c * vn
        R[..., 0, 1] = 1.0
        R[..., 1, 1] = vx
        R[..., 2, 1] = 0.5 * vx**2
        R[..., 0, 2] = 1.0
        R[..., 1, 2] = vx + c * nu1
        R[..., 2, 2] = H + c * vn

        L[..., 0, 0] = 0.5 * (b2 + vn / c)
        L[..., 0, 1] = -0.5 * (b1 * vx + nu1 / c)
        L[..., 0, 2] = 0.5 * b1
        L[..., 1, 0] = 1.0 - b2
        L[..., 1, 1] = b1 * vx
        L[..., 1, 2] = -b1
        L[..., 2, 0] = 0.5 * (b2 - vn / c)
        L[..., 2, 1] = -0.5 * (b1 * vx - nu1 / c)
        L[..., 2, 2] = 0.5 * b1
        return L, R

    vx, vy = vels
    vn = nu1 * vx + nu2 * vy
    vt = -nu2 * vx + nu1 * vy
    q2 = vx**2 + vy**2
    b1 = (g - 1.0) / c**2
    b2 = 0.5 * b1 * q2

    # columns: acoustic-, entropy, shear, acoustic+
    R[..., 0, 0] = 1.0
    R[..., 1, 0] = vx - c * nu1
    R[..., 2, 0] = vy - c * nu2
    R[..., 3, 0] = H - c * vn
    R[..., 0, 1] = 1.0
    R[..., 1, 1] = vx
    R[..., 2, 1] = vy
    R[..., 3, 1] = 0.5 * q2
    R[..., 1, 2] = -nu2
    R[..., 2, 2] = nu1
    R[..., 3, 2] = vt
    R[..., 0, 3] = 1.0
    R[..., 1, 3] = vx + c * nu1
    R[..., 2, 3] = vy + c * nu2
    R[..., 3, 3] = H + c * vn

    L[..., 0, 0] = 0.5 * (b2 + vn / c)
    L[..., 0, 1] = -0.5 * (b1 * vx + nu1 / c)
    L[..., 0, 2] = -0.5 * (b1 * vy + nu2 / c)
    L[..., 0, 3] = 0.5 * b1
    L[..., 1, 0] = 1.0 - b2
    L[..., 1, 1] = b1 * vx
    L[..., 1, 2] = b1 * vy
    L[..., 1, 3] = -b1
    L[..., 2, 0] = -vt
    L[..., 2, 1] = -nu2
    L[..., 2, 2] = nu1
    L[..., 3, 0] = 0.5 * (b2 - vn / c)
    L[..., 3, 1] = -0.5 * (b1 * vx - nu1 / c)
    L[..., 3, 2] = -0.5 * (b1 * vy - nu2 / c)
    L[..., 3, 3] = 0.5 * b1
    return L, R


def eigen_decomposition(u, normal=X_DIR, gas=GAS):
    """Single-state eigendecomposition of the normal Jacobian."""
    u = np.asarray(u, dtype=float)
    L, R = eigen_matrices(u, normal, gas)
    nu1, nu2 = normal
    vels = velocities(u)
    vn = nu1 * vels[0] + (nu2 * vels[1] if len(vels) == 2 else 0.0)
    c = float(sound_speed(u[0], pressure(u, gas), gas))
    if u.shape[0] == 3:
        speeds = np.array([vn - c, vn, vn + c])
    else:
        speeds = np.array([vn - c, vn, vn, vn + c])
    return EigenDecomposition(speeds, L, R)
