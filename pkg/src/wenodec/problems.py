"""Benchmark problem registry: initial conditions, boundaries, exact solutions.

Each entry is a ProblemSpec whose ic maps coordinate arrays to a primitive
array with the component axis first. Exact solutions, where they exist, use
the same layout with a trailing time argument and reduce to the IC at t = 0.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import riemann
from .mesh import PERIODIC, TRANSMISSIVE, inflow

GAMMA = 1.4


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    dimension: int
    bounds: tuple                    # ((x0, x1),) or ((x0, x1), (y0, y1))
    ic: callable
    bcs: dict
    t_final: float
    gamma: float = GAMMA
    exact: callable = None           # exact(x[, y], t) or None
    default_cells: tuple = (100,)
    notes: str = ""


# -- smooth density advection ------------------------------------------------

U_INF = 1.0
P_INF = 1.0


def _advection_ic(x):
    rho = 2.0 + np.sin(np.pi * x) ** 4
    return np.stack([rho, np.full_like(rho, U_INF), np.full_like(rho, P_INF)])


def _advection_exact(x, t):
    # sin^4(pi x) has period 1, so the shifted profile needs no wrapping
    return _advection_ic(np.asarray(x, dtype=float) - U_INF * t)


# -- Riemann problems --------------------------------------------------------

RIEMANN_SETUPS = {
    "rp1": ((1.0, 0.75, 1.0), (0.125, 0.0, 0.1), 0.3, 0.2),
    "rp2": ((1.0, -2.0, 0.4), (1.0, 2.0, 0.4), 0.5, 0.15),
    "rp3": ((1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 0.5, 0.012),
    "rp4": ((5.99924, 19.5975, 460.894), (5.99242, -6.19633, 46.0950), 0.4, 0.035),
    "rp5": ((1.0, -19.59745, 1000.0), (1.0, -19.59745, 0.01), 0.8, 0.012),
}


def _riemann_ic(left, right, x_d):
    left = np.asarray(left, dtype=float)
    right = np.asarray(right, dtype=float)

    def ic(x):
        x = np.asarray(x, dtype=float)
        side = (..., ) + (None,) * x.ndim
        return np.where((x < x_d)[None, ...], left[side], right[side])

    return ic


def _riemann_exact(left, right, x_d):
    ic = _riemann_ic(left, right, x_d)

    def exact(x, t):
        if t <= 0.0:
            return ic(x)
        return riemann.exact_solution(left, right, np.asarray(x, dtype=float), t, x_d)

    return exact


# -- shock-turbulence interaction --------------------------------------------

SHOCK_TURB_LEFT = (1.515695, 0.523346, 1.80500)


def _shock_turbulence_ic(x):
    x = np.asarray(x, dtype=float)
    rho = np.where(x < -4.5, SHOCK_TURB_LEFT[0], 1.0 + 0.1 * np.sin(20.0 * np.pi * x))
    u = np.where(x < -4.5, SHOCK_TURB_LEFT[1], 0.0)
    p = np.where(x < -4.5, SHOCK_TURB_LEFT[2], 1.0)
    return np.stack([rho, u, p])


# -- isentropic vortex -------------------------------------------------------

VORTEX_BETA = 5.0


def _vortex_state(x, y):
    r2 = x**2 + y**2
    dT = -(GAMMA - 1.0) * VORTEX_BETA**2 / (8.0 * GAMMA * np.pi**2) * np.exp(1.0 - r2)
    swirl = VORTEX_BETA / (2.0 * np.pi) * np.exp(0.5 * (1.0 - r2))
    rho = (1.0 + dT) ** (1.0 / (GAMMA - 1.0))
    p = (1.0 + dT) ** (GAMMA / (GAMMA - 1.0))
    return np.stack([rho, 1.0 - swirl * y, 1.0 + swirl * x, p])


def _vortex_exact_on(bounds):
    (x0, x1), (y0, y1) = bounds

    def exact(x, y, t):
        # background speed (1, 1); wrap the shift back into the periodic box
        xs = np.asarray(x, dtype=float) - t
        ys = np.asarray(y, dtype=float) - t
        xs = x0 + np.mod(xs - x0, x1 - x0)
        ys = y0 + np.mod(ys - y0, y1 - y0)
        return _vortex_state(xs - 0.5 * (x0 + x1), ys - 0.5 * (y0 + y1))

    return exact


# -- explosion ---------------------------------------------------------------


def _explosion_ic(x, y):
    inside = np.sqrt(x**2 + y**2) < 0.4
    rho = np.where(inside, 1.0, 0.125)
    p = np.where(inside, 1.0, 0.1)
    z = np.zeros_like(rho)
    return np.stack([rho, z, z, p])


# -- shock-vortex interaction ------------------------------------------------

SV_MACH_SHOCK = 1.5
SV_MACH_VORTEX = 0.9
SV_A = 0.075
SV_B = 0.175
SV_CENTER = (0.25, 0.5)
SV_GAS_CONSTANT = 287.0
SV_SHOCK_X = 0.5

SV_RHO3, SV_U3, SV_P3 = 1.0, math.sqrt(GAMMA) * SV_MACH_SHOCK, 1.0
SV_T3 = SV_P3 / (SV_RHO3 * SV_GAS_CONSTANT)
_MS2 = SV_MACH_SHOCK**2
SV_RHO4 = (GAMMA + 1.0) * _MS2 / ((GAMMA - 1.0) * _MS2 + 2.0) * SV_RHO3
SV_U4 = ((GAMMA - 1.0) * _MS2 + 2.0) / ((GAMMA + 1.0) * _MS2) * SV_U3
SV_P4 = (2.0 * GAMMA * _MS2 - (GAMMA - 1.0)) / (GAMMA + 1.0) * SV_P3

_VM = SV_MACH_VORTEX * math.sqrt(GAMMA)
_KT = (GAMMA - 1.0) / (SV_GAS_CONSTANT * GAMMA)


def _sv_annulus_profile(r):
    # antiderivative of v_theta^2 / r on the annulus branch, up to the
    # integration constant folded into A and B
    a, b = SV_A, SV_B
    return _KT * _VM**2 * a**2 / (a**2 - b**2) ** 2 * (0.5 * r**2 - 2.0 * b**2 * np.log(r) - 0.5 * b**4 / r**2)


SV_TEMP_B = SV_T3 - _sv_annulus_profile(SV_B)
SV_TEMP_A = SV_TEMP_B + _sv_annulus_profile(SV_A) - 0.5 * _KT * _VM**2


def shock_vortex_vtheta(r):
    """Azimuthal vortex speed: linear core, annulus decay, zero outside."""
    r = np.asarray(r, dtype=float)
    a, b = SV_A, SV_B
    safe = np.where(r > 0.0, r, 1.0)
    annulus = _VM * a / (a**2 - b**2) * (safe - b**2 / safe)
    return np.where(r <= a, _VM * r / a, np.where(r < b, annulus, 0.0))


def shock_vortex_temperature(r):
    """Closed-form vortex temperature from the radial balance ODE.

    dT/dr = (gamma-1)/(R gamma) * v_theta(r)^2 / r, matched to T_III at r = b
    and continuous at r = a.
    """
    r = np.asarray(r, dtype=float)
    core = SV_TEMP_A + 0.5 * _KT * _VM**2 * r**2 / SV_A**2
    safe = np.where(r > 0.0, r, 1.0)
    annulus = SV_TEMP_B + _sv_annulus_profile(safe)
    return np.where(r <= SV_A, core, np.where(r < SV_B, annulus, SV_T3))


def _shock_vortex_ic(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - SV_CENTER[0]
    dy = y - SV_CENTER[1]
    r = np.sqrt(dx**2 + dy**2)
    vt = shock_vortex_vtheta(r)
    safe = np.where(r > 0.0, r, 1.0)
    u_vort = SV_U3 - vt * dy / safe
    v_vort = vt * dx / safe
    temp = shock_vortex_temperature(r)
    rho_vort = SV_RHO3 * (temp / SV_T3) ** (1.0 / (GAMMA - 1.0))
    p_vort = SV_P3 * (temp / SV_T3) ** (GAMMA / (GAMMA - 1.0))

    pre = x < SV_SHOCK_X
    rho = np.where(pre, rho_vort, SV_RHO4)
    u = np.where(pre, u_vort, SV_U4)
    v = np.where(pre, v_vort, 0.0)
    p = np.where(pre, p_vort, SV_P4)
    return np.stack([rho, u, v, p])


def _shock_vortex_base_ic(x, y):
    x = np.asarray(x, dtype=float)
    pre = x < SV_SHOCK_X
    rho = np.where(pre, SV_RHO3, SV_RHO4)
    u = np.where(pre, SV_U3, SV_U4)
    v = np.zeros_like(rho)
    p = np.where(pre, SV_P3, SV_P4)
    return np.stack([rho, u, v, p])


# -- registry ----------------------------------------------------------------


def _build_registry():
    specs = [
        ProblemSpec(
            id="advection-1d",
            dimension=1,
            bounds=((-1.0, 1.0),),
            ic=_advection_ic,
            bcs={"left": PERIODIC, "right": PERIODIC},
            t_final=2.0,
            exact=_advection_exact,
            default_cells=(160,),
            notes="smooth density profile advected at unit speed",
        ),
        ProblemSpec(
            id="shock-turbulence",
            dimension=1,
            bounds=((-5.0, 5.0),),
            ic=_shock_turbulence_ic,
            bcs={"left": inflow(SHOCK_TURB_LEFT), "right": TRANSMISSIVE},
            t_final=5.0,
            default_cells=(1500,),
            notes="Mach-1.1-type shock running into a sinusoidal density field",
        ),
        ProblemSpec(
            id="vortex",
            dimension=2,
            bounds=((-10.0, 10.0), (-10.0, 10.0)),
            ic=lambda x, y: _vortex_state(x, y),
            bcs={"left": PERIODIC, "right": PERIODIC, "bottom": PERIODIC, "top": PERIODIC},
            t_final=0.1,
            exact=_vortex_exact_on(((-10.0, 10.0), (-10.0, 10.0))),
            default_cells=(40, 40),
            notes="isentropic vortex translating diagonally; compactly flat far field",
        ),
        ProblemSpec(
            id="vortex-long",
            dimension=2,
            bounds=((-5.0, 5.0), (-5.0, 5.0)),
            ic=lambda x, y: _vortex_state(x, y),
            bcs={"left": PERIODIC, "right": PERIODIC, "bottom": PERIODIC, "top": PERIODIC},
            t_final=100.0,
            exact=_vortex_exact_on(((-5.0, 5.0), (-5.0, 5.0))),
            default_cells=(50, 50),
            notes="same vortex on the tight box for long-horizon smearing studies",
        ),
        ProblemSpec(
            id="explosion",
            dimension=2,
            bounds=((-1.0, 1.0), (-1.0, 1.0)),
            ic=_explosion_ic,
            bcs={
                "left": TRANSMISSIVE,
                "right": TRANSMISSIVE,
                "bottom": TRANSMISSIVE,
                "top": TRANSMISSIVE,
            },
            t_final=0.25,
            default_cells=(50, 50),
            notes="circular dense core, outward shock and contact, inward rarefaction",
        ),
        ProblemSpec(
            id="shock-vortex",
            dimension=2,
            bounds=((0.0, 2.0), (0.0, 1.0)),
            ic=_shock_vortex_ic,
            bcs={
                "left": inflow((SV_RHO3, SV_U3, 0.0, SV_P3)),
                "right": TRANSMISSIVE,
                "bottom": TRANSMISSIVE,
                "top": TRANSMISSIVE,
            },
            t_final=0.69,
            default_cells=(801, 400),
            notes="Mach-0.9 vortex advected through a stationary Mach-1.5 shock; "
            "the caption-sized 800x401 run is the same spec with --cells 800x401",
        ),
        ProblemSpec(
            id="shock-vortex-base",
            dimension=2,
            bounds=((0.0, 2.0), (0.0, 1.0)),
            ic=_shock_vortex_base_ic,
            bcs={
                "left": inflow((SV_RHO3, SV_U3, 0.0, SV_P3)),
                "right": TRANSMISSIVE,
                "bottom": TRANSMISSIVE,
                "top": TRANSMISSIVE,
            },
            t_final=0.69,
            default_cells=(200, 100),
            notes="stationary normal shock only; steady for exact-RS, transient otherwise",
        ),
    ]
    for rp_id, (left, right, x_d, t_final) in RIEMANN_SETUPS.items():
        specs.append(
            ProblemSpec(
                id=rp_id,
                dimension=1,
                bounds=((0.0, 1.0),),
                ic=_riemann_ic(left, right, x_d),
                bcs={"left": TRANSMISSIVE, "right": TRANSMISSIVE},
                t_final=t_final,
                exact=_riemann_exact(left, right, x_d),
                default_cells=(100,),
            )
        )
    return {spec.id: spec for spec in specs}


_REGISTRY = _build_registry()


def problem_registry():
    """All problem specs keyed by id."""
    return dict(_REGISTRY)


def get_problem(problem_id):
    try:
        return _REGISTRY[problem_id]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise ValueError("unknown problem %r (known: %s)" % (problem_id, known)) from None
