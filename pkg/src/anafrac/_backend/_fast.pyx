# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the numerical hot kernels.

Mirror of ``pure.py``; see that module for the gamma algorithm notes and
the tail bound derivation used by ``ml3``.
"""

from libc.math cimport exp, log, sin, floor, fabs, pow, NAN, INFINITY, M_PI

NAME = "compiled"

cdef double[7] STIRLING
STIRLING[0] = 1.0 / 12.0
STIRLING[1] = -1.0 / 360.0
STIRLING[2] = 1.0 / 1260.0
STIRLING[3] = -1.0 / 1680.0
STIRLING[4] = 1.0 / 1188.0
STIRLING[5] = -691.0 / 360360.0
STIRLING[6] = 1.0 / 156.0

cdef double SQRT_2PI = 2.5066282746310002
cdef double LOG_SQRT_2PI = 0.9189385332046727417803297364056176398


cdef double _stirling_s(double y) noexcept nogil:
    cdef double w = 1.0 / (y * y)
    cdef double acc = STIRLING[6]
    cdef int i
    for i in range(5, -1, -1):
        acc = acc * w + STIRLING[i]
    return acc / y


cdef double _gamma_pos(double x) noexcept nogil:
    cdef double prod = 1.0
    cdef double y = x
    cdef double half
    while y < 13.0:
        prod *= y
        y += 1.0
    half = pow(y, 0.5 * (y - 0.5)) * exp(-0.5 * y)
    return SQRT_2PI * exp(_stirling_s(y)) * half * half / prod


cdef double _lngamma(double x) noexcept nogil:
    if not x > 0.0:
        return NAN
    if x >= 13.0:
        return (x - 0.5) * log(x) - x + LOG_SQRT_2PI + _stirling_s(x)
    if x >= 0.5:
        return log(_gamma_pos(x))
    return log(M_PI / sin(M_PI * x)) - log(_gamma_pos(1.0 - x))


cpdef double lngamma(double x):
    return _lngamma(x)


cpdef double gammafn(double x):
    if x > 0.0:
        if x >= 0.5:
            return _gamma_pos(x)
        return M_PI / (sin(M_PI * x) * _gamma_pos(1.0 - x))
    if x == floor(x):
        return NAN
    return M_PI / (sin(M_PI * x) * _gamma_pos(1.0 - x))


cpdef double poch(double rho, long n):
    cdef double acc = 1.0
    cdef long i
    for i in range(n):
        acc *= rho + i
    return acc


cpdef tuple ml3(double rho, double beta, double alpha, double x,
                double tol, long max_terms):
    cdef double lg = _lngamma(alpha)
    cdef double term = exp(-lg)
    cdef double total = term
    cdef double ln_g_cur = lg
    cdef double ln_g_next, g_ratio, factor, q, tail
    cdef long n
    for n in range(max_terms):
        ln_g_next = _lngamma(beta * (n + 1) + alpha)
        g_ratio = exp(ln_g_cur - ln_g_next)
        factor = (rho + n) / (n + 1.0)
        q = factor if factor > 1.0 else 1.0
        q = q * fabs(x) * g_ratio
        if q < 1.0:
            tail = fabs(term) * q / (1.0 - q)
            if tail <= tol:
                return total, n + 1, tail
        term *= factor * x * g_ratio
        total += term
        ln_g_cur = ln_g_next
    return total, -1, INFINITY


cpdef double series_sum(double[::1] coeffs, double u):
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc * u + coeffs[i]
    return acc


cpdef void series_sum_many(double[::1] coeffs, double[::1] u, double[::1] out):
    cdef Py_ssize_t n = coeffs.shape[0]
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc, uj
    if n == 0:
        for j in range(m):
            out[j] = 0.0
        return
    for j in range(m):
        uj = u[j]
        acc = coeffs[n - 1]
        for i in range(n - 2, -1, -1):
            acc = acc * uj + coeffs[i]
        out[j] = acc
