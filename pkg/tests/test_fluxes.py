import math

import numpy as np
import pytest

from wenodec import euler, fluxes, riemann

CTX = fluxes.FluxContext(mesh_ratio=2.0)

RP1_L = np.array([1.0, 0.75, 2.78125])
RP1_R = np.array([0.125, 0.0, 0.25])


# --- independent plain-float implementations used as oracles ---------------

def flux3(u, g=1.4):
    rho, m, E = u
    p = (g - 1) * (E - 0.5 * m * m / rho)
    return np.array([m, m * m / rho + p, (E + p) * m / rho])


def lxf_oracle(uL, uR, ratio, alpha):
    return 0.5 * (flux3(uL) + flux3(uR)) - 0.5 * (ratio / alpha) * (uR - uL)


def richtmyer_oracle(uL, uR, ratio, alpha):
    u_star = 0.5 * (uL + uR) - 0.5 * (alpha / ratio) * (flux3(uR) - flux3(uL))
    return flux3(u_star)


def force_oracle(uL, uR, ratio, alpha=1.0):
    return 0.5 * (lxf_oracle(uL, uR, ratio, alpha) + richtmyer_oracle(uL, uR, ratio, alpha))


def hll_oracle(uL, uR):
    g = 1.4
    rhoL, mL, EL = uL
    rhoR, mR, ER = uR
    vL, vR = mL / rhoL, mR / rhoR
    cL = math.sqrt(g * (g - 1) * (EL - 0.5 * mL * vL) / rhoL)
    cR = math.sqrt(g * (g - 1) * (ER - 0.5 * mR * vR) / rhoR)
    sL = min(vL - cL, vR - cR)
    sR = max(vL + cL, vR + cR)
    if sL >= 0:
        return flux3(uL)
    if sR <= 0:
        return flux3(uR)
    return (sR * flux3(uL) - sL * flux3(uR) + sL * sR * (uR - uL)) / (sR - sL)


# --- tests ------------------------------------------------------------------

def random_states(rng, dim, n):
    w = np.empty((3 if dim == 1 else 4, n))
    w[0] = rng.uniform(0.2, 3.0, n)
    w[-1] = rng.uniform(0.2, 5.0, n)
    for k in range(1, w.shape[0] - 1):
        w[k] = rng.uniform(-2.0, 2.0, n)
    return euler.conserved_from_primitive(w)


@pytest.mark.parametrize("dim", [1, 2])
def test_consistency_all_variants(dim):
    rng = np.random.default_rng(41)
    u = random_states(rng, dim, 1000)
    f = euler.physical_flux(u)
    variants = [
        lambda a, b: fluxes.lxf_alpha(a, b, CTX, 1.0),
        lambda a, b: fluxes.richtmyer_alpha(a, b, CTX, 3.0),
        lambda a, b: fluxes.force_alpha(a, b, CTX, 2.0),
        lambda a, b: fluxes.rusanov_flux(a, b, CTX),
        lambda a, b: fluxes.hll_flux(a, b, CTX),
        lambda a, b: fluxes.exact_rs_flux(a, b, CTX),
    ]
    for variant in variants:
        np.testing.assert_allclose(variant(u, u), f, rtol=1e-13, atol=1e-13)


def test_force_is_mean_of_parts():
    rng = np.random.default_rng(8)
    uL = random_states(rng, 1, 200)
    uR = random_states(rng, 1, 200)
    mean = 0.5 * (fluxes.lxf_alpha(uL, uR, CTX, 2.0) + fluxes.richtmyer_alpha(uL, uR, CTX, 2.0))
    np.testing.assert_array_equal(fluxes.force_alpha(uL, uR, CTX, 2.0), mean)


def test_lxf_dissipation_scales_as_inverse_alpha():
    central = 0.5 * (euler.physical_flux(RP1_L) + euler.physical_flux(RP1_R))
    d1 = fluxes.lxf_alpha(RP1_L, RP1_R, CTX, 1.0) - central
    d2 = fluxes.lxf_alpha(RP1_L, RP1_R, CTX, 2.0) - central
    np.testing.assert_array_equal(d2 * 2.0, d1)


def test_lxf_rp1_frozen_value():
    got = fluxes.lxf_alpha(RP1_L, RP1_R, CTX, 2.0)
    np.testing.assert_allclose(got, [0.8125, 1.20625, 2.68359375], rtol=1e-15)
    np.testing.assert_allclose(got, lxf_oracle(RP1_L, RP1_R, 2.0, 2.0), rtol=1e-15)


def test_richtmyer_rp1_against_oracle():
    got = fluxes.richtmyer_alpha(RP1_L, RP1_R, CTX, 2.0)
    np.testing.assert_allclose(got, richtmyer_oracle(RP1_L, RP1_R, 2.0, 2.0), rtol=1e-14)


def test_richtmyer_symmetric_pair_zero_momentum_flux_component():
    w = np.array([1.3, 1.7, 2.2])
    uL = euler.conserved_from_primitive(np.array([w[0], w[1], w[2]]))
    uR = euler.conserved_from_primitive(np.array([w[0], -w[1], w[2]]))
    f_l = euler.physical_flux(uL)
    f_r = euler.physical_flux(uR)
    # velocity antisymmetry makes the momentum components of f equal
    assert f_l[1] == f_r[1]
    u_star = 0.5 * (uL + uR) - 0.5 * (1.0 / CTX.mesh_ratio) * (f_r - f_l)
    assert u_star[1] == 0.0
    got = fluxes.richtmyer_alpha(uL, uR, CTX, 1.0)
    assert got[0] == 0.0  # mass flux of a stagnant star state


def test_force1_rp1_against_independent_oracle():
    got = fluxes.force_alpha(RP1_L, RP1_R, CTX, 1.0)
    np.testing.assert_allclose(got, force_oracle(RP1_L, RP1_R, 2.0), rtol=1e-14)


def test_rusanov_rp1_davis_speed():
    got = fluxes.rusanov_flux(RP1_L, RP1_R, CTX)
    central = 0.5 * (euler.physical_flux(RP1_L) + euler.physical_flux(RP1_R))
    s = 2.0 * (central[0] - got[0]) / (RP1_R[0] - RP1_L[0])
    assert s == pytest.approx(0.75 + math.sqrt(1.4), rel=1e-14)
    assert s == pytest.approx(1.9332159566199232, rel=1e-12)


def test_rusanov_density_perturbation_dissipation():
    delta = 1e-3
    uL = np.array([1.0, 0.0, 2.5])
    uR = np.array([1.0 + delta, 0.0, 2.5])
    got = fluxes.rusanov_flux(uL, uR, CTX)
    assert got[0] == pytest.approx(-0.5 * math.sqrt(1.4) * delta, rel=1e-12)


def test_hll_supersonic_branch():
    uL = euler.conserved_from_primitive(np.array([1.0, 5.0, 1.0]))
    uR = euler.conserved_from_primitive(np.array([0.5, 4.0, 0.8]))
    np.testing.assert_array_equal(fluxes.hll_flux(uL, uR, CTX), euler.physical_flux(uL))


def test_hll_rp1_against_oracle():
    got = fluxes.hll_flux(RP1_L, RP1_R, CTX)
    np.testing.assert_allclose(got, hll_oracle(RP1_L, RP1_R), rtol=1e-13)


def test_crash_asymmetry_on_negative_pressure():
    bad = np.array([1.0, 2.0, 1.0])  # p = 0.4*(1 - 2) < 0
    ok = np.array([1.0, 0.0, 2.5])
    fluxes.lxf_alpha(bad, ok, CTX, 1.0)  # centred flux shrugs
    fluxes.richtmyer_alpha(np.array([1.0, 0.0, -1.0]), np.array([1.0, 0.0, -1.0]), CTX, 1.0)
    for variant in (fluxes.rusanov_flux, fluxes.hll_flux, fluxes.exact_rs_flux):
        with pytest.raises(euler.UnphysicalState):
            variant(bad, ok, CTX)
        with pytest.raises(euler.UnphysicalState):
            variant(ok, bad, CTX)


def test_richtmyer_zero_star_density_raises():
    uL = np.array([1.0, 0.0, 2.5])
    uR = np.array([1.0, 2.0, 4.5])
    ctx = fluxes.FluxContext(mesh_ratio=1.0)
    with pytest.raises(euler.UnphysicalState):
        fluxes.richtmyer_alpha(uL, uR, ctx, 1.0)


def test_exact_rs_flux_matches_godunov():
    uL = euler.conserved_from_primitive(np.array([1.0, 0.75, 1.0]))
    uR = euler.conserved_from_primitive(np.array([0.125, 0.0, 0.1]))
    got = fluxes.exact_rs_flux(uL[:, None], uR[:, None], CTX)
    np.testing.assert_allclose(got[:, 0], riemann.godunov_flux(uL, uR), rtol=1e-12)


def test_exact_rs_tangential_upwinding():
    # pure contact in tangential velocity: flux is the left physical flux
    wL = np.array([1.0, 1.0, 2.0, 1.0])
    wR = np.array([1.0, 1.0, -3.0, 1.0])
    uL = euler.conserved_from_primitive(wL)
    uR = euler.conserved_from_primitive(wR)
    got = fluxes.exact_rs_flux(uL[:, None], uR[:, None], CTX)[:, 0]
    np.testing.assert_allclose(got, euler.physical_flux(uL), rtol=1e-12)


def test_parse_flux():
    assert fluxes.parse_flux("force-2") == fluxes.FluxChoice("force", 2.0)
    assert fluxes.parse_flux("force-2.5").alpha == 2.5
    assert fluxes.parse_flux("rusanov") == fluxes.FluxChoice("rusanov")
    assert fluxes.parse_flux("exact-rs") == fluxes.FluxChoice("exact-rs")
    assert fluxes.parse_flux("force-2").label() == "force-2"
    for bad in ("force-0.5", "force-x", "upwind", "force"):
        with pytest.raises(ValueError):
            fluxes.parse_flux(bad)


def test_make_flux_dispatch():
    uL, uR = RP1_L, RP1_R
    got = fluxes.make_flux(fluxes.parse_flux("force-3"))(uL, uR, CTX)
    np.testing.assert_array_equal(got, fluxes.force_alpha(uL, uR, CTX, 3.0))
    got = fluxes.make_flux(fluxes.parse_flux("rusanov"))(uL, uR, CTX)
    np.testing.assert_array_equal(got, fluxes.rusanov_flux(uL, uR, CTX))
