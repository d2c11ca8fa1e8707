# cython: boundscheck=False, wraparound=False, cdivision=True
"""C recurrence kernels: scaled orthonormal evaluation and Christoffel
weights.  Mirrors _kernels_py exactly; see that module for the contract."""
import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, log

cnp.import_array()

cdef double _HI = 1e140
cdef double _LO = 1e-140
cdef double _LN2_256 = 256 * 0.69314718055994530942
cdef double _DOWN = 2.0 ** -256
cdef double _UP = 2.0 ** 256


def eval_scaled(diag, off, double log_p0, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.ascontiguousarray(off, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(x), dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t npts = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sign_p = np.empty(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] log_p = np.empty(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sign_dp = np.empty(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] log_dp = np.empty(npts)
    cdef Py_ssize_t i, k
    cdef double s, u0, u1, u2, d0, d1, d2, t, m, xv
    for i in range(npts):
        xv = xs[i]
        s = log_p0
        u0 = 1.0
        d0 = 0.0
        if n == 0:
            sign_p[i] = 1.0
            log_p[i] = s
            sign_dp[i] = 0.0
            log_dp[i] = -INFINITY
            continue
        u1 = (xv - a[0]) / b[0]
        d1 = 1.0 / b[0]
        for k in range(1, n):
            t = xv - a[k]
            u2 = (t * u1 - b[k - 1] * u0) / b[k]
            d2 = (t * d1 + u1 - b[k - 1] * d0) / b[k]
            u0 = u1
            u1 = u2
            d0 = d1
            d1 = d2
            m = fabs(u1)
            if fabs(d1) > m:
                m = fabs(d1)
            if m > _HI:
                u0 *= _DOWN
                u1 *= _DOWN
                d0 *= _DOWN
                d1 *= _DOWN
                s += _LN2_256
            elif m < _LO and m > 0.0:
                u0 *= _UP
                u1 *= _UP
                d0 *= _UP
                d1 *= _UP
                s -= _LN2_256
        if u1 == 0.0:
            sign_p[i] = 0.0
            log_p[i] = -INFINITY
        else:
            sign_p[i] = 1.0 if u1 > 0.0 else -1.0
            log_p[i] = log(fabs(u1)) + s
        if d1 == 0.0:
            sign_dp[i] = 0.0
            log_dp[i] = -INFINITY
        else:
            sign_dp[i] = 1.0 if d1 > 0.0 else -1.0
            log_dp[i] = log(fabs(d1)) + s
    return sign_p, log_p, sign_dp, log_dp


def christoffel_log_weights(diag, off, double log_p0, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.ascontiguousarray(off, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(x), dtype=np.float64)
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t npts = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(npts)
    cdef Py_ssize_t i, k
    cdef double s, u0, u1, u2, ssum, xv
    for i in range(npts):
        xv = xs[i]
        s = log_p0
        u0 = 1.0
        ssum = 1.0
        if m > 1:
            u1 = (xv - a[0]) / b[0]
            ssum += u1 * u1
            for k in range(1, m - 1):
                u2 = ((xv - a[k]) * u1 - b[k - 1] * u0) / b[k]
                u0 = u1
                u1 = u2
                ssum += u1 * u1
                if fabs(u1) > _HI:
                    u0 *= _DOWN
                    u1 *= _DOWN
                    ssum *= _DOWN * _DOWN
                    s += _LN2_256
        out[i] = -(log(ssum) + 2.0 * s)
    return out
