"""Deferred-correction time integrator on Gauss-Lobatto subtimenodes.

One step of order P uses M = ceil(P/2) subintervals and exactly P explicit
fixed-point iterations. The integral of the interpolated right-hand side over
[tau_0, tau_m] is encoded in the theta matrix, built once per order in
extended precision and cached.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

import numpy as np
from mpmath import mp

from .quadrature import lobatto_nodes_mp


@dataclass(frozen=True)
class DecCoefficients:
    order: int
    m_sub: int            # number of subintervals M
    nodes: np.ndarray     # M+1 subtimenodes in [0, 1]
    theta: np.ndarray     # (M, M+1): row m-1 integrates the basis over [0, tau_m]


def _lagrange_poly(nodes, l):
    # monomial coefficients of the l-th Lagrange basis, ascending order
    poly = [mp.mpf(1)]
    for j, xj in enumerate(nodes):
        if j == l:
            continue
        scale = nodes[l] - xj
        new = [mp.mpf(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k] -= c * xj / scale
            new[k + 1] += c / scale
        poly = new
    return poly


@lru_cache(maxsize=None)
def build_coefficients(order):
    """Subtimenodes and quadrature matrix for a DeC step of the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    m_sub = ceil(order / 2)
    with mp.workdps(50):
        nodes = lobatto_nodes_mp(m_sub + 1)
        theta = np.empty((m_sub, m_sub + 1))
        for l in range(m_sub + 1):
            poly = _lagrange_poly(nodes, l)
            antider = [c / (k + 1) for k, c in enumerate(poly)]
            for m in range(1, m_sub + 1):
                acc = mp.mpf(0)
                for k, c in enumerate(antider):
                    acc += c * nodes[m] ** (k + 1)
                theta[m - 1, l] = float(acc)
        node_arr = np.array([float(x) for x in nodes])
    return DecCoefficients(order, m_sub, node_arr, theta)


def dec_step(system, t_n, y_n, dt, coeffs):
    """Advance y' = system(t, y) from t_n to t_n + dt.

    The subtimenode states start at y_n; each iteration rebuilds them from
    the cached right-hand-side values, then refreshes those values. The
    node-0 state is never updated. Evaluation failures propagate.
    """
    m_sub = coeffs.m_sub
    y_n = np.asarray(y_n, dtype=float)
    times = t_n + dt * coeffs.nodes
    # every subtimenode state starts at y_n but carries its own time
    g_vals = [np.asarray(system(times[m], y_n), dtype=float) for m in range(m_sub + 1)]
    states = [y_n] * (m_sub + 1)
    for p in range(coeffs.order):
        for m in range(1, m_sub + 1):
            upd = y_n.copy()
            for l in range(m_sub + 1):
                upd += dt * coeffs.theta[m - 1, l] * g_vals[l]
            states[m] = upd
        if p < coeffs.order - 1:
            for m in range(1, m_sub + 1):
                g_vals[m] = np.asarray(system(times[m], states[m]), dtype=float)
    return states[m_sub]
