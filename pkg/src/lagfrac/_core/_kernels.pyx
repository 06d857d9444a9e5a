# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Laguerre/Hermite recurrences and the Schlafli sums."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p, fabs, sqrt, INFINITY, M_PI

cnp.import_array()

cdef double RESCALE = 1e150
cdef double LOG_RESCALE = log(1e150)


def laguerre_scaled(int k, double a, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xv.shape[0], i
    cdef int m
    shape = np.shape(x)
    if k == 0:
        return np.ones(shape), np.zeros(shape)
    mant_arr = np.empty(n)
    prev_arr = np.ones(n)
    scale_arr = np.zeros(n)
    cdef double[::1] p1 = mant_arr
    cdef double[::1] p0 = prev_arr
    cdef double[::1] sc = scale_arr
    cdef double c1, c2, inv, p2
    for i in range(n):
        p1[i] = 1.0 + a - xv[i]
    # degree-outer sweep: the inner loop is a plain vector update
    for m in range(1, k):
        inv = 1.0 / (m + 1)
        c1 = (2 * m + 1 + a) * inv
        c2 = (m + a) * inv
        for i in range(n):
            p2 = (c1 - xv[i] * inv) * p1[i] - c2 * p0[i]
            p0[i] = p1[i]
            p1[i] = p2
        if m % 8 == 7 or m == k - 1:
            for i in range(n):
                if fabs(p1[i]) > RESCALE:
                    p1[i] /= RESCALE
                    p0[i] /= RESCALE
                    sc[i] += LOG_RESCALE
    return mant_arr.reshape(shape), scale_arr.reshape(shape)


def laguerre_table(int kmax, double a, x):
    xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] xv = xa.ravel()
    cdef Py_ssize_t n = xv.shape[0], i
    cdef int m
    cdef double inv, c1, c2
    out_arr = np.empty((kmax + 1, n))
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        out[0, i] = 1.0
    if kmax >= 1:
        for i in range(n):
            out[1, i] = 1.0 + a - xv[i]
    for m in range(1, kmax):
        inv = 1.0 / (m + 1)
        c1 = (2 * m + 1 + a) * inv
        c2 = (m + a) * inv
        for i in range(n):
            out[m + 1, i] = (c1 - xv[i] * inv) * out[m, i] - c2 * out[m - 1, i]
    return out_arr.reshape((kmax + 1,) + np.shape(x))


def hermite_table(int kmax, x):
    xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] xv = xa.ravel()
    cdef Py_ssize_t n = xv.shape[0], i
    cdef int m
    cdef double c1, c2
    out_arr = np.empty((kmax + 1, n))
    cdef double[:, ::1] out = out_arr
    cdef double c0 = M_PI ** -0.25
    for i in range(n):
        out[0, i] = c0 * exp(-0.5 * xv[i] * xv[i])
    if kmax >= 1:
        for i in range(n):
            out[1, i] = sqrt(2.0) * xv[i] * out[0, i]
    for m in range(1, kmax):
        c1 = sqrt(2.0 / (m + 1))
        c2 = sqrt(m / (m + 1.0))
        for i in range(n):
            out[m + 1, i] = c1 * xv[i] * out[m, i] - c2 * out[m - 1, i]
    return out_arr.reshape((kmax + 1,) + np.shape(x))


cdef inline double _gegen_one(double z, const double[::1] s, const double[::1] lw) nogil:
    cdef Py_ssize_t i, n = s.shape[0]
    cdef double e, mx = -INFINITY, acc = 0.0
    for i in range(n):
        e = lw[i] - z * (1.0 + s[i])
        if e > mx:
            mx = e
    for i in range(n):
        acc += exp(lw[i] - z * (1.0 + s[i]) - mx)
    return mx + log(acc)


cdef inline double _lag_one(double z, const double[::1] v, const double[::1] lw, double power) nogil:
    cdef Py_ssize_t i, n = v.shape[0]
    cdef double e, r, mx = -INFINITY, acc = 0.0
    cdef double inv = 0.5 / z
    for i in range(n):
        r = v[i] * inv
        if r >= 1.0:
            continue
        e = lw[i] + power * log1p(-r)
        if e > mx:
            mx = e
    for i in range(n):
        r = v[i] * inv
        if r >= 1.0:
            continue
        acc += exp(lw[i] + power * log1p(-r) - mx)
    return mx + log(acc)


def log_gegenbauer_sum(z, nodes, log_weights):
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef const double[::1] s = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] lw = np.ascontiguousarray(log_weights, dtype=np.float64)
    out_arr = np.empty(zv.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(zv.shape[0]):
            out[i] = _gegen_one(zv[i], s, lw)
    return out_arr


def log_laguerre_sum(z, nodes, log_weights, double power):
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef const double[::1] v = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] lw = np.ascontiguousarray(log_weights, dtype=np.float64)
    out_arr = np.empty(zv.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(zv.shape[0]):
            out[i] = _lag_one(zv[i], v, lw, power)
    return out_arr


def log_schlafli(z, g_nodes, g_logw, l_nodes, l_logw, double power,
                 double lag_exponent, double lag_offset, double z_switch):
    """log of the normalized Schlafli average E[exp(-z(1+s))], regime by z."""
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef const double[::1] gs = np.ascontiguousarray(g_nodes, dtype=np.float64)
    cdef const double[::1] gw = np.ascontiguousarray(g_logw, dtype=np.float64)
    cdef const double[::1] ls = np.ascontiguousarray(l_nodes, dtype=np.float64)
    cdef const double[::1] lw = np.ascontiguousarray(l_logw, dtype=np.float64)
    out_arr = np.empty(zv.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double zi
    with nogil:
        for i in range(zv.shape[0]):
            zi = zv[i]
            if zi <= z_switch:
                out[i] = _gegen_one(zi, gs, gw)
            else:
                out[i] = lag_offset - lag_exponent * log(zi) + _lag_one(zi, ls, lw, power)
    return out_arr
