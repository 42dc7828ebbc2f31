"""WENO point reconstruction from uniform cell averages (orders 3/5/7).

A ReconstructionPlan holds everything the inner loops need, precomputed at
build time in extended precision: per evaluation point, the r low-order
reconstruction rows and the linear weights d_l; shared across points, the
Jiang-Shu smoothness quadratic forms.

Coordinates are normalized to the cell: eta in [-1/2, 1/2], cell width 1.
Sub-stencil l = 0..r-1 covers window positions l..l+r-1 (l = 0 is the
left-biased stencil).
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import mp

# Classical Jiang-Shu regularization. 1e-6 keeps the weights linear near
# degenerate smooth extrema at practical mesh sizes; much smaller values let
# the indicator noise floor drive the weights there and cost two orders of
# accuracy on high-order convergence tests.
EPS_DEFAULT = 1e-6


class NegativeLinearWeights(UserWarning):
    """A requested evaluation point has a negative linear weight.

    Not fatal: the plan still evaluates, but nonlinear weighting assumes
    d_l >= 0, so callers should avoid such point sets.
    """


@dataclass(frozen=True)
class ReconstructionPlan:
    order: int
    r: int
    eta: tuple                     # evaluation points in [-1/2, 1/2]
    rows: np.ndarray               # (npoints, r, r): rows[p, l, k] acts on window[l + k]
    d: np.ndarray                  # (npoints, r) linear weights
    beta_q: np.ndarray             # (r, r, r): beta_l = w_l . beta_q[l] . w_l
    big_row: np.ndarray            # (npoints, 2r-1) high-order row (diagnostics/tests)
    negative_flags: tuple          # per point: any d_l < 0
    eps: float = EPS_DEFAULT


def _avg_matrix(offsets, n):
    # A[k, m] = average of xi^m over the unit cell centred at offsets[k]
    A = mp.matrix(len(offsets), n)
    for k, o in enumerate(offsets):
        o = mp.mpf(o)
        for m in range(n):
            A[k, m] = ((o + mp.mpf(1) / 2) ** (m + 1) - (o - mp.mpf(1) / 2) ** (m + 1)) / (m + 1)
    return A


def _point_row(offsets, eta):
    # coefficients c with p(eta) = c . averages for the interpolating polynomial
    n = len(offsets)
    A = _avg_matrix(offsets, n)
    rhs = mp.matrix([eta**m for m in range(n)])
    return mp.lu_solve(A.T, rhs)


def _beta_form(offsets):
    # Jiang-Shu: sum_{s=1}^{r-1} int_{-1/2}^{1/2} (d^s p / dxi^s)^2 dxi as a
    # quadratic form in the sub-stencil averages
    r = len(offsets)
    A = _avg_matrix(offsets, r)
    Ainv = mp.inverse(A)
    G = mp.matrix(r, r)
    for s in range(1, r):
        for m in range(s, r):
            for mm in range(s, r):
                k = m + mm - 2 * s
                if k % 2 == 0:
                    integral = 2 * (mp.mpf(1) / 2) ** (k + 1) / (k + 1)
                    fac = 1
                    for j in range(s):
                        fac *= (m - j) * (mm - j)
                    G[m, mm] += fac * integral
    return Ainv.T * G * Ainv


@lru_cache(maxsize=None)
def _build_plan_cached(order, eta_key, eps):
    if order not in (3, 5, 7):
        raise ValueError("order must be 3, 5 or 7")
    r = (order + 1) // 2
    etas = [mp.mpf(e) for e in eta_key]
    if any(abs(e) > mp.mpf(1) / 2 for e in etas):
        raise ValueError("evaluation points must lie in [-1/2, 1/2]")

    with mp.workdps(50):
        big_offsets = list(range(-(r - 1), r))
        sub_offsets = [list(range(l - r + 1, l + 1)) for l in range(r)]

        rows = np.empty((len(etas), r, r))
        dmat = np.empty((len(etas), r))
        big = np.empty((len(etas), 2 * r - 1))
        neg = []
        for p, eta in enumerate(etas):
            big_row = _point_row(big_offsets, eta)
            sub_rows = [_point_row(sub_offsets[l], eta) for l in range(r)]
            # embed the r sub-rows into the big window and solve the
            # overdetermined-but-consistent system for the linear weights
            M = mp.matrix(2 * r - 1, r)
            for l in range(r):
                for k in range(r):
                    M[l + k, l] = sub_rows[l][k]
            try:
                d, _ = mp.qr_solve(M, big_row)
            except ValueError as exc:
                # r=2 at the cell center: both sub-reconstructions collapse
                # to the same value and no embedding exists
                raise ArithmeticError(
                    "no linear weights at eta=%r for order %d" % (eta, order)
                ) from exc
            # consistency: the combination must reproduce the big row exactly
            resid = max(abs(x) for x in (M * d - big_row))
            if resid > mp.mpf(10) ** (-30):
                raise ArithmeticError("linear-weight system inconsistent (residual %s)" % resid)
            for l in range(r):
                dmat[p, l] = float(d[l])
                for k in range(r):
                    rows[p, l, k] = float(sub_rows[l][k])
            for k in range(2 * r - 1):
                big[p, k] = float(big_row[k])
            neg.append(bool(any(d[l] < 0 for l in range(r))))

        beta_q = np.empty((r, r, r))
        for l in range(r):
            Q = _beta_form(sub_offsets[l])
            for a in range(r):
                for b in range(r):
                    beta_q[l, a, b] = float(Q[a, b])

    if any(neg):
        warnings.warn(
            "negative linear weights at points %s"
            % [float(e) for e, flag in zip(etas, neg) if flag],
            NegativeLinearWeights,
            stacklevel=3,
        )
    return ReconstructionPlan(
        order=order,
        r=r,
        eta=tuple(float(e) for e in etas),
        rows=rows,
        d=dmat,
        beta_q=beta_q,
        big_row=big,
        negative_flags=tuple(neg),
        eps=eps,
    )


def build_plan(order, evaluation_points, eps=EPS_DEFAULT):
    """Reconstruction plan for the given order at the given in-cell points."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    key = tuple(float(e) for e in evaluation_points)
    return _build_plan_cached(order, key, float(eps))


def smoothness_indicators(window, plan):
    """beta_l for all sub-stencils of one window (length 2r-1)."""
    w = np.asarray(window, dtype=float)
    r = plan.r
    out = np.empty(r)
    for l in range(r):
        seg = w[l : l + r]
        out[l] = seg @ plan.beta_q[l] @ seg
    return out


def nonlinear_weights(betas, d, eps=EPS_DEFAULT):
    """omega_l = a_l / sum(a), a_l = d_l / (eps + beta_l)^2."""
    a = d / (eps + np.asarray(betas)) ** 2
    return a / a.sum()


def reconstruct_scalar(window, plan, point_index=0):
    """WENO value at plan.eta[point_index] from one stencil window."""
    w = np.asarray(window, dtype=float)
    betas = smoothness_indicators(w, plan)
    omega = nonlinear_weights(betas, plan.d[point_index], plan.eps)
    r = plan.r
    vals = np.array([plan.rows[point_index, l] @ w[l : l + r] for l in range(r)])
    return float(omega @ vals)


def linear_reconstruct_scalar(window, plan, point_index=0):
    """High-order linear reconstruction (no nonlinear weighting); test hook."""
    return float(plan.big_row[point_index] @ np.asarray(window, dtype=float))
