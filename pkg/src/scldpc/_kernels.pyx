# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled min-sum and syndrome kernels (see ``_kernels_py`` for the reference)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, INFINITY
from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t idx_t


cdef inline bint _syndrome_zero(const idx_t[:] row_ptr, const idx_t[:] col_idx,
                                unsigned char[:] hard, Py_ssize_t rows) noexcept nogil:
    cdef Py_ssize_t i, e
    cdef unsigned char par
    for i in range(rows):
        par = 0
        for e in range(row_ptr[i], row_ptr[i + 1]):
            par ^= hard[col_idx[e]]
        if par:
            return False
    return True


def syndrome(const idx_t[:] row_ptr, const idx_t[:] col_idx, const unsigned char[:] bits):
    cdef Py_ssize_t rows = row_ptr.shape[0] - 1
    out = np.zeros(rows, dtype=np.uint8)
    cdef unsigned char[:] o = out
    cdef Py_ssize_t i, e
    cdef unsigned char par
    with nogil:
        for i in range(rows):
            par = 0
            for e in range(row_ptr[i], row_ptr[i + 1]):
                par ^= bits[col_idx[e]] & 1
            o[i] = par
    return out


def minsum(const idx_t[:] row_ptr, const idx_t[:] col_idx,
           const idx_t[:] col_ptr, const idx_t[:] edge_of_csc,
           const double[:] llr, int max_iter, double clip,
           unsigned char[:] hard):
    """Flooding min-sum. Writes decisions into ``hard``; returns (iterations, converged)."""
    cdef Py_ssize_t rows = row_ptr.shape[0] - 1
    cdef Py_ssize_t cols = col_ptr.shape[0] - 1
    cdef Py_ssize_t nnz = col_idx.shape[0]
    cdef Py_ssize_t i, j, e, k, pos
    cdef double a, mag, min1, min2, s, t, v
    cdef unsigned char sgn, neg
    cdef int it = 0
    cdef bint ok

    cdef double *v2c = <double *> malloc(max(nnz, 1) * sizeof(double))
    cdef double *c2v = <double *> malloc(max(nnz, 1) * sizeof(double))
    if v2c == NULL or c2v == NULL:
        free(v2c)
        free(c2v)
        raise MemoryError()
    try:
        with nogil:
            for j in range(cols):
                hard[j] = llr[j] < 0
            for e in range(nnz):
                v2c[e] = llr[col_idx[e]]
            ok = _syndrome_zero(row_ptr, col_idx, hard, rows)
            while not ok and it < max_iter:
                it += 1
                for i in range(rows):
                    min1 = INFINITY
                    min2 = INFINITY
                    pos = -1
                    sgn = 0
                    for e in range(row_ptr[i], row_ptr[i + 1]):
                        a = v2c[e]
                        sgn ^= a < 0
                        mag = fabs(a)
                        if mag < min1:
                            min2 = min1
                            min1 = mag
                            pos = e
                        elif mag < min2:
                            min2 = mag
                    for e in range(row_ptr[i], row_ptr[i + 1]):
                        mag = min2 if e == pos else min1
                        neg = sgn ^ (v2c[e] < 0)
                        c2v[e] = -mag if neg else mag
                for j in range(cols):
                    s = 0.0
                    for k in range(col_ptr[j], col_ptr[j + 1]):
                        s = s + c2v[edge_of_csc[k]]
                    t = llr[j] + s
                    hard[j] = t < 0
                    for k in range(col_ptr[j], col_ptr[j + 1]):
                        e = edge_of_csc[k]
                        v = t - c2v[e]
                        if v > clip:
                            v = clip
                        elif v < -clip:
                            v = -clip
                        v2c[e] = v
                ok = _syndrome_zero(row_ptr, col_idx, hard, rows)
    finally:
        free(v2c)
        free(c2v)
    return it, bool(ok)
