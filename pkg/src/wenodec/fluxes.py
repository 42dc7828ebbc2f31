"""Interface-flux layer: FORCE-alpha family, Rusanov, HLL, Godunov.

All fluxes evaluate in the face-normal frame: component 1 of a state is the
normal momentum. The solver swaps momentum components for y-faces, so nothing
here knows about directions; the only mesh/time coupling is the scalar
mesh_ratio = dxi/dt carried by FluxContext.

States arrive as arrays (nc, nfaces). Centred fluxes (LxF-alpha, Richtmyer,
FORCE-alpha) are pure flux algebra and never require a sound speed; upwind
fluxes (Rusanov, HLL, exact RS) raise UnphysicalState on inadmissible inputs.
That asymmetry is load-bearing for the robustness behaviour of the scheme.
"""

from dataclasses import dataclass

import numpy as np

from . import riemann
from .euler import GAS, GasModel, UnphysicalState, physical_flux, pressure


@dataclass(frozen=True)
class FluxContext:
    mesh_ratio: float  # dxi / dt on this face family
    gas: GasModel = GAS

    def __post_init__(self):
        if not self.mesh_ratio > 0.0:
            raise ValueError("mesh_ratio must be positive")


@dataclass(frozen=True)
class FluxChoice:
    variant: str  # "force" | "rusanov" | "hll" | "exact-rs"
    alpha: float | None = None

    def label(self):
        if self.variant == "force":
            a = self.alpha
            return "force-%g" % a
        return self.variant


def parse_flux(text):
    """Parse a config string: force-ALPHA | rusanov | hll | exact-rs."""
    text = text.strip().lower()
    if text in ("rusanov", "hll", "exact-rs"):
        return FluxChoice(text)
    if text.startswith("force-"):
        try:
            alpha = float(text[len("force-"):])
        except ValueError:
            raise ValueError("bad FORCE parameter in flux spec %r" % text) from None
        if not alpha >= 1.0:
            raise ValueError("FORCE-alpha requires alpha >= 1, got %g" % alpha)
        return FluxChoice("force", alpha)
    raise ValueError("unknown flux %r" % text)


def _require_admissible(u, gas):
    rho = u[0]
    with np.errstate(all="ignore"):
        p = pressure(u, gas) if np.all(rho != 0.0) else None
    if p is None or not (np.all(rho > 0.0) and np.all(p > 0.0)):
        raise UnphysicalState("upwind flux fed a state with non-positive density or pressure")
    return p


def _sound_speed_of(u, gas):
    p = _require_admissible(u, gas)
    return np.sqrt(gas.gamma * p / u[0])


def lxf_alpha(u_l, u_r, ctx, alpha):
    """(f(uR)+f(uL))/2 - (ratio/alpha)(uR-uL)/2. Never raises."""
    f_l = physical_flux(u_l, gas=ctx.gas)
    f_r = physical_flux(u_r, gas=ctx.gas)
    return 0.5 * (f_l + f_r) - 0.5 * (ctx.mesh_ratio / alpha) * (u_r - u_l)


def richtmyer_alpha(u_l, u_r, ctx, alpha):
    """f(u*) with u* = (uL+uR)/2 - (alpha/ratio)(f(uR)-f(uL))/2.

    Evaluated algebraically: a u* with negative density or pressure still has
    a well-defined flux for the ideal-gas closure, and the scheme relies on
    that (centred fluxes keep running where upwind ones crash). Only an
    exactly-zero or non-finite star density is an error.
    """
    f_l = physical_flux(u_l, gas=ctx.gas)
    f_r = physical_flux(u_r, gas=ctx.gas)
    u_star = 0.5 * (u_l + u_r) - 0.5 * (alpha / ctx.mesh_ratio) * (f_r - f_l)
    rho = np.asarray(u_star[0])
    if np.any(rho == 0.0) or not np.all(np.isfinite(rho)):
        raise UnphysicalState("Richtmyer intermediate state has zero density")
    return physical_flux(u_star, gas=ctx.gas)


def force_alpha(u_l, u_r, ctx, alpha):
    """Arithmetic mean of the LxF-alpha and Richtmyer-alpha fluxes."""
    return 0.5 * (lxf_alpha(u_l, u_r, ctx, alpha) + richtmyer_alpha(u_l, u_r, ctx, alpha))


def rusanov_flux(u_l, u_r, ctx):
    """Central flux with Davis' local speed estimate s+ = max(|u|+c)."""
    c_l = _sound_speed_of(u_l, ctx.gas)
    c_r = _sound_speed_of(u_r, ctx.gas)
    s = np.maximum(np.abs(u_l[1] / u_l[0]) + c_l, np.abs(u_r[1] / u_r[0]) + c_r)
    f_l = physical_flux(u_l, gas=ctx.gas)
    f_r = physical_flux(u_r, gas=ctx.gas)
    return 0.5 * (f_l + f_r) - 0.5 * s * (u_r - u_l)


def hll_flux(u_l, u_r, ctx, estimates=None):
    """HLL with Davis-type default wave-speed estimates.

    The estimator is a seam: pass estimates(u_l, u_r, gas) -> (S_L, S_R) to
    swap in sharper bounds.
    """
    if estimates is None:
        c_l = _sound_speed_of(u_l, ctx.gas)
        c_r = _sound_speed_of(u_r, ctx.gas)
        v_l = u_l[1] / u_l[0]
        v_r = u_r[1] / u_r[0]
        s_l = np.minimum(v_l - c_l, v_r - c_r)
        s_r = np.maximum(v_l + c_l, v_r + c_r)
    else:
        s_l, s_r = estimates(u_l, u_r, ctx.gas)
    f_l = physical_flux(u_l, gas=ctx.gas)
    f_r = physical_flux(u_r, gas=ctx.gas)
    with np.errstate(all="ignore"):
        mid = (s_r * f_l - s_l * f_r + s_l * s_r * (u_r - u_l)) / (s_r - s_l)
    return np.where(s_l >= 0.0, f_l, np.where(s_r <= 0.0, f_r, mid))


def exact_rs_flux(u_l, u_r, ctx):
    """Godunov flux from the exact Riemann solver, normal frame.

    For 4-component states the tangential momentum is transported with the
    contact: the interface sits on the upwind side of u*.
    """
    gas = ctx.gas
    _require_admissible(u_l, gas)
    _require_admissible(u_r, gas)
    u_l = np.asarray(u_l, dtype=float)
    u_r = np.asarray(u_r, dtype=float)
    nc = u_l.shape[0]
    g = gas.gamma

    if nc == 3:
        w_l = np.stack([u_l[0], u_l[1] / u_l[0], pressure(u_l, gas)])
        w_r = np.stack([u_r[0], u_r[1] / u_r[0], pressure(u_r, gas)])
        flux, _ = riemann.godunov_flux_batch(w_l, w_r, gas)
        return flux

    w_l = np.stack([u_l[0], u_l[1] / u_l[0], pressure(u_l, gas)])
    w_r = np.stack([u_r[0], u_r[1] / u_r[0], pressure(u_r, gas)])
    _, (rho0, vn0, p0, u_star) = riemann.godunov_flux_batch(w_l, w_r, gas)
    vt = np.where(u_star > 0.0, u_l[2] / u_l[0], u_r[2] / u_r[0])
    E0 = p0 / (g - 1.0) + 0.5 * rho0 * (vn0**2 + vt**2)
    return np.stack([rho0 * vn0, rho0 * vn0**2 + p0, rho0 * vn0 * vt, (E0 + p0) * vn0])


def make_flux(choice):
    """Bind a FluxChoice to an evaluator f(uL, uR, ctx)."""
    if choice.variant == "force":
        alpha = float(choice.alpha)
        if not alpha >= 1.0:
            raise ValueError("FORCE-alpha requires alpha >= 1")
        return lambda u_l, u_r, ctx: force_alpha(u_l, u_r, ctx, alpha)
    if choice.variant == "rusanov":
        return rusanov_flux
    if choice.variant == "hll":
        return hll_flux
    if choice.variant == "exact-rs":
        return exact_rs_flux
    raise ValueError("unknown flux variant %r" % choice.variant)
