"""High-order finite-volume solver for the ideal Euler equations.

WENO reconstruction in characteristic variables, deferred-correction time
stepping, and a family of swappable numerical fluxes (FORCE-alpha, Rusanov,
HLL, exact Riemann solver).
"""

__version__ = "0.1.0"

from .euler import GAS, GasModel, UnphysicalState, ZeroDensity  # noqa: F401
