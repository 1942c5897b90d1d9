# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometric-product kernels.

Same contracts as ``_product_py``; the blade index XOR is computed inline
and only the (2**m x 2**m) sign table is consumed.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def gp(cnp.float64_t[::1] x, cnp.float64_t[::1] y, cnp.int8_t[:, ::1] signs):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, j
    cdef cnp.float64_t xi
    out_arr = np.zeros(n, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_arr
    for i in range(n):
        xi = x[i]
        if xi == 0.0:
            continue
        for j in range(n):
            out[i ^ j] += signs[i, j] * xi * y[j]
    return out_arr


def gp_batch(cnp.float64_t[:, ::1] X, cnp.float64_t[:, ::1] Y,
             cnp.int8_t[:, ::1] signs):
    cdef Py_ssize_t nb = X.shape[0]
    cdef Py_ssize_t n = X.shape[1]
    cdef Py_ssize_t b, i, j
    cdef cnp.float64_t xi
    out_arr = np.zeros((nb, n), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] out = out_arr
    for b in range(nb):
        for i in range(n):
            xi = X[b, i]
            if xi == 0.0:
                continue
            for j in range(n):
                out[b, i ^ j] += signs[i, j] * xi * Y[b, j]
    return out_arr
