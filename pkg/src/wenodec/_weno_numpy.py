"""Vectorized numpy implementation of the characteristic WENO face kernels.

This is the fallback backend; the Cython module _weno_cy implements the same
two entry points with identical semantics. Keep the signatures in sync.

Conventions: ghost width g = r-1; interior cell i maps to padded index i+g.
Eigen matrix arrays carry one matrix pair per interior cell, frozen at that
cell's average. Window algebra matches weno.ReconstructionPlan layout.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

BACKEND = "numpy"


def reconstruct_faces_1d(ug, L, R, rows, d, beta_q, eps):
    """Per-cell WENO boundary values in characteristic variables.

    ug: (nc, N + 2g) cell averages with ghosts; L, R: (N, nc, nc);
    rows/d: plan tables for the two points (eta=-1/2, +1/2).
    Returns (west, east): two (nc, N) arrays of reconstructed states.
    """
    r = rows.shape[1]
    sw = sliding_window_view(ug, 2 * r - 1, axis=1)  # (nc, N, 2r-1)
    w = np.einsum("iac,cik->ika", L, sw, optimize=True)
    win = sliding_window_view(w, r, axis=1)  # (N, l, a, k)
    vals = np.einsum("plk,ilak->pila", rows, win, optimize=True)
    beta = np.einsum("lkh,ilak,ilah->ila", beta_q, win, win, optimize=True)
    alpha = d[:, None, :, None] / (eps + beta[None, ...]) ** 2
    omega = alpha / alpha.sum(axis=2, keepdims=True)
    q = (omega * vals).sum(axis=2)  # (2, N, a)
    out = np.einsum("ica,pia->pic", R, q, optimize=True)
    return out[0].T.copy(), out[1].T.copy()


def _recon_2d_core(ug, L1, R1, L2, R2, rows_face, d_face, rows_quad, d_quad, beta_q, eps):
    # sweep 1 along axis 1 of ug (evaluate at the two face abscissae), then
    # sweep 2 along axis 2 (evaluate at the quadrature ordinates)
    nc = ug.shape[0]
    r = rows_face.shape[1]
    g = r - 1
    n1 = ug.shape[1] - 2 * g
    n2 = ug.shape[2] - 2 * g
    nq = rows_quad.shape[0]
    west = np.empty((nc, nq, n1, n2))
    east = np.empty((nc, nq, n1, n2))

    # band the sweep-2 axis to bound temporary size
    per_col = n1 * (2 * r - 1) ** 2 * nc * 8
    band = max(1, int(32e6 / max(per_col, 1)))
    for j0 in range(0, n2, band):
        j1 = min(j0 + band, n2)
        sw = sliding_window_view(
            ug[:, :, j0 : j1 + 2 * g], (2 * r - 1, 2 * r - 1), axis=(1, 2)
        )  # (nc, n1, bj, m, n)
        l1 = L1[:, j0:j1]
        w = np.einsum("ijac,cijmn->ijmna", l1, sw, optimize=True)
        win = sliding_window_view(w, r, axis=2)  # (i, j, l, n, a, k)
        vals = np.einsum("plk,ijlnak->pijlna", rows_face, win, optimize=True)
        beta = np.einsum("lkh,ijlnak,ijlnah->ijlna", beta_q, win, win, optimize=True)
        alpha = d_face[:, None, None, :, None, None] / (eps + beta[None, ...]) ** 2
        omega = alpha / alpha.sum(axis=3, keepdims=True)
        q1 = (omega * vals).sum(axis=3)  # (2, i, j, n, a)
        lines = np.einsum("ijca,pijna->pijnc", R1[:, j0:j1], q1, optimize=True)

        v = np.einsum("ijac,pijnc->pijna", L2[:, j0:j1], lines, optimize=True)
        win2 = sliding_window_view(v, r, axis=3)  # (p, i, j, l, a, k)
        vals2 = np.einsum("qlk,pijlak->qpijla", rows_quad, win2, optimize=True)
        beta2 = np.einsum("lkh,pijlak,pijlah->pijla", beta_q, win2, win2, optimize=True)
        alpha2 = d_quad[:, None, None, None, :, None] / (eps + beta2[None, ...]) ** 2
        omega2 = alpha2 / alpha2.sum(axis=4, keepdims=True)
        q2 = (omega2 * vals2).sum(axis=4)  # (q, p, i, j, a)
        out = np.einsum("ijca,qpija->qpijc", R2[:, j0:j1], q2, optimize=True)
        west[:, :, :, j0:j1] = out[:, 0].transpose(3, 0, 1, 2)
        east[:, :, :, j0:j1] = out[:, 1].transpose(3, 0, 1, 2)
    return west, east


def reconstruct_faces_2d(ug, Lx, Rx, Ly, Ry, rows_face, d_face, rows_quad, d_quad, beta_q, eps, axis):
    """Two-sweep 2D WENO face states at quadrature points.

    axis=0: (west, east) x-face states, sweep order x then y;
    axis=1: (south, north) y-face states, sweep order y then x.
    Output arrays are (nc, nq, Nx, Ny).
    """
    if axis == 0:
        return _recon_2d_core(
            ug, Lx, Rx, Ly, Ry, rows_face, d_face, rows_quad, d_quad, beta_q, eps
        )
    ugt = np.ascontiguousarray(ug.transpose(0, 2, 1))
    Lyt = np.ascontiguousarray(Ly.transpose(1, 0, 2, 3))
    Ryt = np.ascontiguousarray(Ry.transpose(1, 0, 2, 3))
    Lxt = np.ascontiguousarray(Lx.transpose(1, 0, 2, 3))
    Rxt = np.ascontiguousarray(Rx.transpose(1, 0, 2, 3))
    south, north = _recon_2d_core(
        ugt, Lyt, Ryt, Lxt, Rxt, rows_face, d_face, rows_quad, d_quad, beta_q, eps
    )
    return south.transpose(0, 1, 3, 2).copy(), north.transpose(0, 1, 3, 2).copy()
