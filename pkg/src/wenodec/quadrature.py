"""Gauss-Legendre and Gauss-Lobatto rules, computed once at high precision.

Float64 tables would be fine for the solver itself, but the reconstruction
plans are solved at the quadrature nodes and their coefficients should be
exact to the last double digit, so nodes come from mpmath-polished roots.
"""

from functools import lru_cache

import numpy as np
from mpmath import mp


def _legendre_roots(n, dps=50):
    with mp.workdps(dps):
        seeds = np.polynomial.legendre.leggauss(n)[0]
        return [mp.findroot(lambda x: mp.legendre(n, x), mp.mpf(float(s))) for s in seeds]


@lru_cache(maxsize=None)
def gauss_legendre_unit(n):
    """n-point Gauss-Legendre rule on [-1/2, 1/2] with weights summing to 1.

    Returns (nodes, weights) as float64 arrays, plus the mpmath nodes for
    callers that keep computing at high precision.
    """
    with mp.workdps(50):
        roots = _legendre_roots(n)
        nodes_mp = [x / 2 for x in roots]
        weights_mp = []
        for x in roots:
            dp = mp.diff(lambda t: mp.legendre(n, t), x)
            weights_mp.append(1 / ((1 - x**2) * dp**2))  # plain rule weight / 2
        nodes = np.array([float(x) for x in nodes_mp])
        weights = np.array([float(w) for w in weights_mp])
    return nodes, weights, tuple(nodes_mp)


def gauss_legendre(n):
    """Float64 (nodes, weights) on [-1/2, 1/2], weights summing to 1."""
    nodes, weights, _ = gauss_legendre_unit(n)
    return nodes, weights


@lru_cache(maxsize=None)
def lobatto_nodes_mp(n_nodes):
    """Gauss-Lobatto nodes on [0, 1] as mpf values, endpoints included."""
    m = n_nodes - 1
    with mp.workdps(50):
        if m == 1:
            roots = []
        else:
            # interior nodes are roots of P'_m
            seeds = np.cos(np.pi * (np.arange(1, m) / m))[::-1]
            dP = lambda x: mp.diff(lambda t: mp.legendre(m, t), x)
            roots = [mp.findroot(dP, mp.mpf(float(s))) for s in seeds]
        xs = [mp.mpf(-1)] + sorted(roots) + [mp.mpf(1)]
        return [(x + 1) / 2 for x in xs]


def gauss_lobatto(n_nodes):
    """Gauss-Lobatto nodes on [0, 1] (n_nodes >= 2, endpoints included)."""
    return np.array([float(x) for x in lobatto_nodes_mp(n_nodes)])
