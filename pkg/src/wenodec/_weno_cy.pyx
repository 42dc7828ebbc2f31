# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled characteristic WENO face kernels.

Mirror of _weno_numpy: same entry points, same argument layout, same output
conventions. Keep the two implementations in sync; the equivalence test in
tests/test_weno.py compares them directly. Stencil sizes are bounded (r <= 4,
nc <= 4, <= 4 quadrature points) so all scratch lives on the stack.
"""

import numpy as np

cimport cython


BACKEND = "cython"

# stack buffer bounds: r <= 4 (order 7), window 2r-1 <= 7, nc <= 4, nq <= 4


cdef void _faces_1d(const double[:, ::1] ug, const double[:, :, ::1] L,
                    const double[:, :, ::1] R, const double[:, :, ::1] rows,
                    const double[:, ::1] d, const double[:, :, ::1] bq,
                    double eps, double[:, ::1] west, double[:, ::1] east) noexcept nogil:
    cdef Py_ssize_t nc = ug.shape[0]
    cdef Py_ssize_t n = west.shape[1]
    cdef Py_ssize_t r = rows.shape[1]
    cdef Py_ssize_t W = 2 * r - 1
    cdef Py_ssize_t i, a, c, k, h, l, p
    cdef double w[7][4]
    cdef double beta[4]
    cdef double q[2][4]
    cdef double om[4]
    cdef double s, bsum, val, acc

    for i in range(n):
        for a in range(nc):
            for k in range(W):
                s = 0.0
                for c in range(nc):
                    s += L[i, a, c] * ug[c, i + k]
                w[k][a] = s
        for a in range(nc):
            for l in range(r):
                s = 0.0
                for k in range(r):
                    for h in range(r):
                        s += bq[l, k, h] * w[l + k][a] * w[l + h][a]
                beta[l] = s
            for p in range(2):
                bsum = 0.0
                for l in range(r):
                    s = eps + beta[l]
                    om[l] = d[p, l] / (s * s)
                    bsum += om[l]
                acc = 0.0
                for l in range(r):
                    val = 0.0
                    for k in range(r):
                        val += rows[p, l, k] * w[l + k][a]
                    acc += om[l] * val
                q[p][a] = acc / bsum
        for c in range(nc):
            s = 0.0
            acc = 0.0
            for a in range(nc):
                s += R[i, c, a] * q[0][a]
                acc += R[i, c, a] * q[1][a]
            west[c, i] = s
            east[c, i] = acc


def reconstruct_faces_1d(ug, L, R, rows, d, beta_q, eps):
    """Per-cell WENO boundary values in characteristic variables.

    ug: (nc, N + 2g) cell averages with ghosts; L, R: (N, nc, nc);
    rows/d: plan tables for the two points (eta=-1/2, +1/2).
    Returns (west, east): two (nc, N) arrays of reconstructed states.
    """
    ug = np.ascontiguousarray(ug, dtype=np.float64)
    L = np.ascontiguousarray(L, dtype=np.float64)
    R = np.ascontiguousarray(R, dtype=np.float64)
    rows = np.ascontiguousarray(rows, dtype=np.float64)
    d = np.ascontiguousarray(d, dtype=np.float64)
    beta_q = np.ascontiguousarray(beta_q, dtype=np.float64)
    cdef Py_ssize_t nc = ug.shape[0]
    cdef Py_ssize_t r = rows.shape[1]
    cdef Py_ssize_t n = ug.shape[1] - 2 * (r - 1)
    if nc > 4 or r > 4 or rows.shape[0] != 2:
        raise ValueError("unsupported stencil configuration")
    west = np.empty((nc, n))
    east = np.empty((nc, n))
    _faces_1d(ug, L, R, rows, d, beta_q, eps, west, east)
    return west, east


cdef void _faces_2d_core(const double[:, :, ::1] ug, const double[:, :, :, ::1] L1,
                         const double[:, :, :, ::1] R1, const double[:, :, :, ::1] L2,
                         const double[:, :, :, ::1] R2, const double[:, :, ::1] rows_f,
                         const double[:, ::1] d_f, const double[:, :, ::1] rows_q,
                         const double[:, ::1] d_q, const double[:, :, ::1] bq,
                         double eps, double[:, :, :, ::1] lo,
                         double[:, :, :, ::1] hi) noexcept nogil:
    cdef Py_ssize_t nc = ug.shape[0]
    cdef Py_ssize_t r = rows_f.shape[1]
    cdef Py_ssize_t W = 2 * r - 1
    cdef Py_ssize_t nq = rows_q.shape[0]
    cdef Py_ssize_t n1 = lo.shape[2]
    cdef Py_ssize_t n2 = lo.shape[3]
    cdef Py_ssize_t i, j, a, c, k, h, l, m, p, qi
    cdef double w1[7][7][4]
    cdef double lines[2][7][4]
    cdef double v2[2][7][4]
    cdef double beta[4]
    cdef double om[4]
    cdef double qline[2][4]
    cdef double q2[4][4]
    cdef double s, bsum, val, acc

    for i in range(n1):
        for j in range(n2):
            # sweep 1: project the whole block, reconstruct along the first
            # axis at both face abscissae for every transverse offset
            for a in range(nc):
                for m in range(W):
                    for k in range(W):
                        s = 0.0
                        for c in range(nc):
                            s += L1[i, j, a, c] * ug[c, i + m, j + k]
                        w1[m][k][a] = s
            for k in range(W):
                for a in range(nc):
                    for l in range(r):
                        s = 0.0
                        for m in range(r):
                            for h in range(r):
                                s += bq[l, m, h] * w1[l + m][k][a] * w1[l + h][k][a]
                        beta[l] = s
                    for p in range(2):
                        bsum = 0.0
                        for l in range(r):
                            s = eps + beta[l]
                            om[l] = d_f[p, l] / (s * s)
                            bsum += om[l]
                        acc = 0.0
                        for l in range(r):
                            val = 0.0
                            for m in range(r):
                                val += rows_f[p, l, m] * w1[l + m][k][a]
                            acc += om[l] * val
                        qline[p][a] = acc / bsum
                for p in range(2):
                    for c in range(nc):
                        s = 0.0
                        for a in range(nc):
                            s += R1[i, j, c, a] * qline[p][a]
                        lines[p][k][c] = s
            # sweep 2: project the line averages, reconstruct along the
            # second axis at the face quadrature ordinates
            for p in range(2):
                for k in range(W):
                    for a in range(nc):
                        s = 0.0
                        for c in range(nc):
                            s += L2[i, j, a, c] * lines[p][k][c]
                        v2[p][k][a] = s
            for p in range(2):
                for a in range(nc):
                    for l in range(r):
                        s = 0.0
                        for m in range(r):
                            for h in range(r):
                                s += bq[l, m, h] * v2[p][l + m][a] * v2[p][l + h][a]
                        beta[l] = s
                    for qi in range(nq):
                        bsum = 0.0
                        for l in range(r):
                            s = eps + beta[l]
                            om[l] = d_q[qi, l] / (s * s)
                            bsum += om[l]
                        acc = 0.0
                        for l in range(r):
                            val = 0.0
                            for m in range(r):
                                val += rows_q[qi, l, m] * v2[p][l + m][a]
                            acc += om[l] * val
                        q2[qi][a] = acc / bsum
                for qi in range(nq):
                    for c in range(nc):
                        s = 0.0
                        for a in range(nc):
                            s += R2[i, j, c, a] * q2[qi][a]
                        if p == 0:
                            lo[c, qi, i, j] = s
                        else:
                            hi[c, qi, i, j] = s


def _faces_2d(ug, L1, R1, L2, R2, rows_face, d_face, rows_quad, d_quad, beta_q, eps):
    ug = np.ascontiguousarray(ug, dtype=np.float64)
    L1 = np.ascontiguousarray(L1, dtype=np.float64)
    R1 = np.ascontiguousarray(R1, dtype=np.float64)
    L2 = np.ascontiguousarray(L2, dtype=np.float64)
    R2 = np.ascontiguousarray(R2, dtype=np.float64)
    rows_face = np.ascontiguousarray(rows_face, dtype=np.float64)
    d_face = np.ascontiguousarray(d_face, dtype=np.float64)
    rows_quad = np.ascontiguousarray(rows_quad, dtype=np.float64)
    d_quad = np.ascontiguousarray(d_quad, dtype=np.float64)
    beta_q = np.ascontiguousarray(beta_q, dtype=np.float64)
    cdef Py_ssize_t nc = ug.shape[0]
    cdef Py_ssize_t r = rows_face.shape[1]
    cdef Py_ssize_t nq = rows_quad.shape[0]
    cdef Py_ssize_t n1 = ug.shape[1] - 2 * (r - 1)
    cdef Py_ssize_t n2 = ug.shape[2] - 2 * (r - 1)
    if nc > 4 or r > 4 or nq > 4 or rows_face.shape[0] != 2:
        raise ValueError("unsupported stencil configuration")
    lo = np.empty((nc, nq, n1, n2))
    hi = np.empty((nc, nq, n1, n2))
    _faces_2d_core(
        ug, L1, R1, L2, R2, rows_face, d_face, rows_quad, d_quad, beta_q, eps, lo, hi
    )
    return lo, hi


def reconstruct_faces_2d(ug, Lx, Rx, Ly, Ry, rows_face, d_face, rows_quad, d_quad, beta_q, eps, axis):
    """Two-sweep 2D WENO face states at quadrature points.

    axis=0: (west, east) x-face states, sweep order x then y;
    axis=1: (south, north) y-face states, sweep order y then x.
    Output arrays are (nc, nq, Nx, Ny).
    """
    if axis == 0:
        return _faces_2d(
            ug, Lx, Rx, Ly, Ry, rows_face, d_face, rows_quad, d_quad, beta_q, eps
        )
    ugt = np.ascontiguousarray(np.asarray(ug).transpose(0, 2, 1))
    Lyt = np.ascontiguousarray(np.asarray(Ly).transpose(1, 0, 2, 3))
    Ryt = np.ascontiguousarray(np.asarray(Ry).transpose(1, 0, 2, 3))
    Lxt = np.ascontiguousarray(np.asarray(Lx).transpose(1, 0, 2, 3))
    Rxt = np.ascontiguousarray(np.asarray(Rx).transpose(1, 0, 2, 3))
    south, north = _faces_2d(
        ugt, Lyt, Ryt, Lxt, Rxt, rows_face, d_face, rows_quad, d_quad, beta_q, eps
    )
    return south.transpose(0, 1, 3, 2).copy(), north.transpose(0, 1, 3, 2).copy()
