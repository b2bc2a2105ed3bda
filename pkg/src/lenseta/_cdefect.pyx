# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled defect-sum kernel; same arithmetic as ``_pykernels.defect_sum``."""

from libc.math cimport sin, cos, M_PI
from libc.stdlib cimport malloc, free


def defect_sum(long long p, long long s, qs):
    cdef long long two_p = 2 * p
    cdef Py_ssize_t n = len(qs)
    cdef Py_ssize_t i
    cdef long long k, ks
    cdef double c_re = 1.0, c_im = 0.0, tmp
    cdef double sum_re = 0.0, comp_re = 0.0, sum_im = 0.0, comp_im = 0.0
    cdef double base, theta, w_re, w_im, t_re, t_im, y, t
    cdef double pi_over_p = M_PI / p
    cdef double two_pi_over_p = 2.0 * M_PI / p
    cdef long long *q = <long long *> malloc((n if n > 0 else 1) * sizeof(long long))
    if q == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            q[i] = qs[i] % two_p
            tmp = c_re
            c_re = 0.5 * c_im
            c_im = -0.5 * tmp
        s = s % p
        if s < 0:
            s += p
        for k in range(1, p):
            ks = (k * s) % p
            if ks == 0:
                continue
            base = 1.0
            for i in range(n):
                base /= sin(pi_over_p * ((k * q[i]) % two_p))
            theta = two_pi_over_p * ks
            w_re = cos(theta) - 1.0
            w_im = sin(theta)
            t_re = base * (c_re * w_re - c_im * w_im)
            t_im = base * (c_re * w_im + c_im * w_re)

            y = t_re - comp_re
            t = sum_re + y
            comp_re = (t - sum_re) - y
            sum_re = t

            y = t_im - comp_im
            t = sum_im + y
            comp_im = (t - sum_im) - y
            sum_im = t
    finally:
        free(q)
    return sum_re / p, sum_im / p
