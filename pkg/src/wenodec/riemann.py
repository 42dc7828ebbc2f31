"""Exact solver for the 1D Euler Riemann problem.

Star-region Newton iteration on the pressure function, wave classification,
and self-similar sampling. Backs the Godunov interface flux and the exact
solutions of the shock-tube benchmark problems.

Scalar entry points (solve_star / sample) mirror the batch ones used by the
flux layer; both share the same formulas.
"""

from dataclasses import dataclass

import numpy as np

from .euler import GAS, UnphysicalState, conserved_from_primitive, physical_flux, primitive_from_conserved

SHOCK = "shock"
RAREFACTION = "rarefaction"

_TOL = 1e-12
_MAX_NEWTON = 100


class VacuumGenerated(ArithmeticError):
    """The data violate the pressure positivity condition (vacuum forms)."""


class NoConvergence(RuntimeError):
    """Star-pressure iteration failed; indicates a defect, not bad data."""


@dataclass
class StarState:
    p_star: float
    u_star: float
    rho_star_left: float
    rho_star_right: float
    wave_left: str
    wave_right: str


def _split(w):
    w = np.asarray(w, dtype=float)
    return w[0], w[1], w[2]


def _side_fn(p, rho_k, p_k, c_k, gamma):
    """Pressure function f(p, W_K) and its dp-derivative, elementwise."""
    a_k = 2.0 / ((gamma + 1.0) * rho_k)
    b_k = (gamma - 1.0) / (gamma + 1.0) * p_k
    shock = p > p_k
    with np.errstate(all="ignore"):
        root = np.sqrt(a_k / (p + b_k))
        f_s = (p - p_k) * root
        df_s = root * (1.0 - 0.5 * (p - p_k) / (b_k + p))
        pr = np.maximum(p, 0.0) / p_k
        z = (gamma - 1.0) / (2.0 * gamma)
        f_r = 2.0 * c_k / (gamma - 1.0) * (pr**z - 1.0)
        df_r = pr ** (-0.5 * (gamma + 1.0) / gamma) / (rho_k * c_k)
    return np.where(shock, f_s, f_r), np.where(shock, df_s, df_r)


def _initial_guess(rho_l, u_l, p_l, c_l, rho_r, u_r, p_r, c_r, gamma):
    # two-rarefaction approximation, PVRS fallback when it degenerates
    z = (gamma - 1.0) / (2.0 * gamma)
    num = c_l + c_r - 0.5 * (gamma - 1.0) * (u_r - u_l)
    den = c_l / p_l**z + c_r / p_r**z
    with np.errstate(all="ignore"):
        p_tr = np.where(num > 0.0, (np.maximum(num, 0.0) / den) ** (1.0 / z), -1.0)
    p_pv = 0.5 * (p_l + p_r) - 0.125 * (u_r - u_l) * (rho_l + rho_r) * (c_l + c_r)
    floor = 1e-14 * np.maximum(p_l, p_r)
    return np.where(p_tr > 0.0, p_tr, np.maximum(p_pv, floor))


def _solve_star_arrays(rho_l, u_l, p_l, rho_r, u_r, p_r, gas=GAS):
    """Vectorized star-region solve. Inputs are broadcastable float arrays.

    Returns (p*, u*, rho*_L, rho*_R). Raises VacuumGenerated if any entry
    violates the positivity condition, UnphysicalState on bad input states.
    """
    g = gas.gamma
    if np.any(rho_l <= 0.0) or np.any(rho_r <= 0.0) or np.any(p_l <= 0.0) or np.any(p_r <= 0.0):
        raise UnphysicalState("Riemann data with non-positive density or pressure")
    c_l = np.sqrt(g * p_l / rho_l)
    c_r = np.sqrt(g * p_r / rho_r)

    if np.any(2.0 * (c_l + c_r) / (g - 1.0) <= u_r - u_l):
        raise VacuumGenerated("pressure positivity condition violated")

    du = u_r - u_l
    p = np.asarray(_initial_guess(rho_l, u_l, p_l, c_l, rho_r, u_r, p_r, c_r, g), dtype=float)
    if p.ndim == 0:
        p = p[None]
        rho_l, u_l, p_l, c_l = (np.atleast_1d(x) for x in (rho_l, u_l, p_l, c_l))
        rho_r, u_r, p_r, c_r = (np.atleast_1d(x) for x in (rho_r, u_r, p_r, c_r))
        du = np.atleast_1d(du)
        scalar = True
    else:
        scalar = False

    floor = 1e-14 * np.maximum(p_l, p_r)
    active = np.ones(p.shape, dtype=bool)
    for _ in range(_MAX_NEWTON):
        f_l, df_l = _side_fn(p, rho_l, p_l, c_l, g)
        f_r, df_r = _side_fn(p, rho_r, p_r, c_r, g)
        p_new = np.maximum(p - (f_l + f_r + du) / (df_l + df_r), floor)
        change = 2.0 * np.abs(p_new - p) / (p_new + p)
        p = np.where(active, p_new, p)
        active &= change > _TOL
        if not active.any():
            break

    if active.any():
        p = _bisect_remaining(p, active, rho_l, u_l, p_l, c_l, rho_r, u_r, p_r, c_r, du, g)

    f_l, _ = _side_fn(p, rho_l, p_l, c_l, g)
    f_r, _ = _side_fn(p, rho_r, p_r, c_r, g)
    u_star = 0.5 * (u_l + u_r) + 0.5 * (f_r - f_l)

    gm = (g - 1.0) / (g + 1.0)
    ratio_l = p / p_l
    ratio_r = p / p_r
    rho_sl = np.where(
        p > p_l, rho_l * (ratio_l + gm) / (gm * ratio_l + 1.0), rho_l * ratio_l ** (1.0 / g)
    )
    rho_sr = np.where(
        p > p_r, rho_r * (ratio_r + gm) / (gm * ratio_r + 1.0), rho_r * ratio_r ** (1.0 / g)
    )
    if scalar:
        return p[0], u_star[0], rho_sl[0], rho_sr[0]
    return p, u_star, rho_sl, rho_sr


def _bisect_remaining(p, active, rho_l, u_l, p_l, c_l, rho_r, u_r, p_r, c_r, du, g):
    # deterministic fallback for entries Newton did not settle
    def residual(q):
        f_l, _ = _side_fn(q, rho_l, p_l, c_l, g)
        f_r, _ = _side_fn(q, rho_r, p_r, c_r, g)
        return f_l + f_r + du

    lo = np.full_like(p, 1e-14) * np.maximum(p_l, p_r)
    hi = np.maximum(np.maximum(p_l, p_r), p) * 2.0
    for _ in range(80):
        grow = active & (residual(hi) < 0.0)
        if not grow.any():
            break
        hi = np.where(grow, hi * 2.0, hi)
    else:
        raise NoConvergence("could not bracket the star pressure")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        neg = residual(mid) <= 0.0
        lo = np.where(active & neg, mid, lo)
        hi = np.where(active & ~neg, mid, hi)
        if np.all(~active | (hi - lo <= _TOL * hi)):
            break
    return np.where(active, 0.5 * (lo + hi), p)


def solve_star(left, right, gas=GAS):
    """Star region for primitive states left/right = (rho, u, p)."""
    rho_l, u_l, p_l = _split(left)
    rho_r, u_r, p_r = _split(right)
    p, u, rho_sl, rho_sr = _solve_star_arrays(rho_l, u_l, p_l, rho_r, u_r, p_r, gas)
    return StarState(
        p_star=float(p),
        u_star=float(u),
        rho_star_left=float(rho_sl),
        rho_star_right=float(rho_sr),
        wave_left=SHOCK if p > p_l else RAREFACTION,
        wave_right=SHOCK if p > p_r else RAREFACTION,
    )


def _sample_arrays(xi, star_p, star_u, rho_sl, rho_sr, rho_l, u_l, p_l, rho_r, u_r, p_r, gas=GAS):
    """Self-similar solution at coordinates xi = x/t (vectorized)."""
    g = gas.gamma
    c_l = np.sqrt(g * p_l / rho_l)
    c_r = np.sqrt(g * p_r / rho_r)
    gp = 0.5 * (g + 1.0) / g
    gm = 0.5 * (g - 1.0) / g

    # left-of-contact candidate
    c_sl = c_l * (star_p / p_l) ** gm
    s_shock_l = u_l - c_l * np.sqrt(gp * star_p / p_l + gm)
    head_l = u_l - c_l
    tail_l = star_u - c_sl
    with np.errstate(all="ignore"):
        fan = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c_l) * (u_l - xi)
        fan = np.maximum(fan, 0.0)
        rho_fan_l = rho_l * fan ** (2.0 / (g - 1.0))
        u_fan_l = 2.0 / (g + 1.0) * (c_l + 0.5 * (g - 1.0) * u_l + xi)
        p_fan_l = p_l * fan ** (2.0 * g / (g - 1.0))

    shock_left = star_p > p_l
    rho_left = np.where(
        shock_left,
        np.where(xi <= s_shock_l, rho_l, rho_sl),
        np.where(xi <= head_l, rho_l, np.where(xi >= tail_l, rho_sl, rho_fan_l)),
    )
    u_left = np.where(
        shock_left,
        np.where(xi <= s_shock_l, u_l, star_u),
        np.where(xi <= head_l, u_l, np.where(xi >= tail_l, star_u, u_fan_l)),
    )
    p_left = np.where(
        shock_left,
        np.where(xi <= s_shock_l, p_l, star_p),
        np.where(xi <= head_l, p_l, np.where(xi >= tail_l, star_p, p_fan_l)),
    )

    # right-of-contact candidate
    c_sr = c_r * (star_p / p_r) ** gm
    s_shock_r = u_r + c_r * np.sqrt(gp * star_p / p_r + gm)
    head_r = u_r + c_r
    tail_r = star_u + c_sr
    with np.errstate(all="ignore"):
        fan = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c_r) * (u_r - xi)
        fan = np.maximum(fan, 0.0)
        rho_fan_r = rho_r * fan ** (2.0 / (g - 1.0))
        u_fan_r = 2.0 / (g + 1.0) * (-c_r + 0.5 * (g - 1.0) * u_r + xi)
        p_fan_r = p_r * fan ** (2.0 * g / (g - 1.0))

    shock_right = star_p > p_r
    rho_right = np.where(
        shock_right,
        np.where(xi >= s_shock_r, rho_r, rho_sr),
        np.where(xi >= head_r, rho_r, np.where(xi <= tail_r, rho_sr, rho_fan_r)),
    )
    u_right = np.where(
        shock_right,
        np.where(xi >= s_shock_r, u_r, star_u),
        np.where(xi >= head_r, u_r, np.where(xi <= tail_r, star_u, u_fan_r)),
    )
    p_right = np.where(
        shock_right,
        np.where(xi >= s_shock_r, p_r, star_p),
        np.where(xi >= head_r, p_r, np.where(xi <= tail_r, star_p, p_fan_r)),
    )

    left_side = xi <= star_u
    rho = np.where(left_side, rho_left, rho_right)
    u = np.where(left_side, u_left, u_right)
    p = np.where(left_side, p_left, p_right)
    return rho, u, p


def sample(star, left, right, xi, gas=GAS):
    """Primitive state of the self-similar solution at xi = x/t."""
    rho_l, u_l, p_l = _split(left)
    rho_r, u_r, p_r = _split(right)
    rho, u, p = _sample_arrays(
        np.asarray(xi, dtype=float),
        star.p_star,
        star.u_star,
        star.rho_star_left,
        star.rho_star_right,
        rho_l,
        u_l,
        p_l,
        rho_r,
        u_r,
        p_r,
        gas,
    )
    return np.array([rho, u, p]) if np.ndim(xi) == 0 else np.stack([rho, u, p])


def exact_solution(left, right, x, t, x_d=0.0, gas=GAS):
    """Primitive profile of the Riemann problem at time t > 0 (array in x)."""
    star = solve_star(left, right, gas)
    return sample(star, left, right, (np.asarray(x) - x_d) / t, gas)


def godunov_flux_batch(w_l, w_r, gas=GAS):
    """Godunov flux from primitive face arrays (3, n) in the normal frame.

    Returns the flux (3, n) plus the interface sample (rho, u, p) so callers
    can transport tangential components across the contact.
    """
    rho_l, u_l, p_l = w_l[0], w_l[1], w_l[2]
    rho_r, u_r, p_r = w_r[0], w_r[1], w_r[2]
    p, u, rho_sl, rho_sr = _solve_star_arrays(rho_l, u_l, p_l, rho_r, u_r, p_r, gas)
    rho0, u0, p0 = _sample_arrays(
        np.zeros_like(p), p, u, rho_sl, rho_sr, rho_l, u_l, p_l, rho_r, u_r, p_r, gas
    )
    g = gas.gamma
    E0 = p0 / (g - 1.0) + 0.5 * rho0 * u0**2
    flux = np.stack([rho0 * u0, rho0 * u0**2 + p0, (E0 + p0) * u0])
    return flux, (rho0, u0, p0, u)


def godunov_flux(u_left, u_right, gas=GAS):
    """Interface flux of the exact Riemann solver for 1D conserved states."""
    w_l = primitive_from_conserved(np.asarray(u_left, dtype=float), gas)
    w_r = primitive_from_conserved(np.asarray(u_right, dtype=float), gas)
    star = solve_star(w_l, w_r, gas)
    w0 = sample(star, w_l, w_r, 0.0, gas)
    return physical_flux(conserved_from_primitive(w0, gas), gas=gas)
