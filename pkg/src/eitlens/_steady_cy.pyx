# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled steady-state kernel: per-point 9x9 assembly + pivoted solve.

Semantics are identical to ``_kernels_py.solve_steady_vec``; this path
avoids the (N, 9, 9) batch allocation and LAPACK call overhead, which
dominates direct per-pixel response evaluation during propagation.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def solve_steady_vec(double[::1] xp, double[::1] xc,
                     double complex[:, ::1] l0,
                     double complex[:, ::1] lp,
                     double complex[:, ::1] lc):
    """Batched trace-constrained solve; see the numpy twin for the contract."""
    cdef Py_ssize_t n = xp.shape[0]
    out_arr = np.empty((n, 9), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr

    cdef double complex a[9][10]
    cdef double complex m, tmp
    cdef double p, best
    cdef double xpv, xcv
    cdef Py_ssize_t ipt, i, j, k, piv

    for ipt in range(n):
        xpv = xp[ipt]
        xcv = xc[ipt]
        for i in range(9):
            for j in range(9):
                a[i][j] = l0[i, j] + xpv * lp[i, j] + xcv * lc[i, j]
            a[i][9] = 0.0
        # Trace constraint replaces the rho_gg row; RHS is e0.
        for j in range(9):
            a[0][j] = 0.0
        a[0][0] = 1.0
        a[0][4] = 1.0
        a[0][8] = 1.0
        a[0][9] = 1.0

        # Gaussian elimination with partial pivoting on the augmented system.
        for k in range(9):
            piv = k
            best = abs(a[k][k])
            for i in range(k + 1, 9):
                p = abs(a[i][k])
                if p > best:
                    best = p
                    piv = i
            if piv != k:
                for j in range(k, 10):
                    tmp = a[k][j]
                    a[k][j] = a[piv][j]
                    a[piv][j] = tmp
            if best == 0.0:
                for j in range(9):
                    out[ipt, j] = np.nan
                break
            for i in range(k + 1, 9):
                m = a[i][k] / a[k][k]
                if m != 0.0:
                    for j in range(k + 1, 10):
                        a[i][j] = a[i][j] - m * a[k][j]
        else:
            for k in range(8, -1, -1):
                tmp = a[k][9]
                for j in range(k + 1, 9):
                    tmp = tmp - a[k][j] * out[ipt, j]
                out[ipt, k] = tmp / a[k][k]

    return out_arr
