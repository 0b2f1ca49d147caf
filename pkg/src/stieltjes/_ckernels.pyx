# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels: special functions and the adaptive
Gauss-Kronrod driver.  Algorithms are identical to ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, exp, log, log1p, pow, fabs, floor, sqrt, M_PI, NAN, INFINITY

cnp.import_array()

from ._pykernels import NODES, KWEIGHTS, GWEIGHTS

cdef double EPS = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308
cdef double LANCZOS_G = 7.0
cdef double SQRT_2PI = 2.5066282746310002
cdef double LOG_SQRT_2PI = 0.91893853320467274
cdef double[9] LANCZOS_COEF
LANCZOS_COEF[:] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef int SERIES_MAX_TERMS = 20000
cdef double DIRECT_SERIES_MAX = 0.97

cdef double[21] C_NODES
cdef double[21] C_KW
cdef double[21] C_GW
for _i in range(21):
    C_NODES[_i] = NODES[_i]
    C_KW[_i] = KWEIGHTS[_i]
    C_GW[_i] = GWEIGHTS[_i]


cdef inline bint _is_nonpos_int(double x) nogil:
    return x <= 0.0 and x == floor(x)


cdef double c_sinpi(double x) nogil:
    cdef double r = x - 2.0 * floor(0.5 * x)
    if r == 0.0 or r == 1.0:
        return 0.0
    if r > 1.0:
        return -c_sinpi(r - 1.0)
    if r > 0.5:
        r = 1.0 - r
    return sin(M_PI * r)


cdef double c_gamma(double x) nogil:
    cdef double acc, t, half
    cdef int i
    if _is_nonpos_int(x):
        return NAN
    if x < 0.5:
        return M_PI / (c_sinpi(x) * c_gamma(1.0 - x))
    if x > 171.7:
        return INFINITY
    x -= 1.0
    acc = LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += LANCZOS_COEF[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    half = pow(t, 0.5 * (x + 0.5))
    return SQRT_2PI * half * (half * exp(-t)) * acc


cdef double c_lgamma(double x) nogil:
    cdef double acc, t
    cdef int i
    if _is_nonpos_int(x):
        return INFINITY
    if x < 0.5:
        return log(M_PI / fabs(c_sinpi(x))) - c_lgamma(1.0 - x)
    x -= 1.0
    acc = LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += LANCZOS_COEF[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (x + 0.5) * log(t) - t + log(acc)


cdef double c_rgamma(double x) nogil:
    if _is_nonpos_int(x):
        return 0.0
    if x > 171.0:
        return exp(-c_lgamma(x))
    return 1.0 / c_gamma(x)


cdef double c_beta(double a, double b) nogil:
    if a + b < 120.0:
        return c_gamma(a) * c_gamma(b) / c_gamma(a + b)
    return exp(c_lgamma(a) + c_lgamma(b) - c_lgamma(a + b))


cdef double _betacf(double a, double b, double x) nogil:
    cdef double fpmin = 1e-300
    cdef double qab = a + b, qap = a + 1.0, qam = a - 1.0
    cdef double c = 1.0, d, h, aa, dl
    cdef int m, m2
    d = 1.0 - qab * x / qap
    if fabs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, 10001):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if fabs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if fabs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        dl = d * c
        h *= dl
        if fabs(dl - 1.0) < 1e-16:
            return h
    return h


cdef double c_betainc(double x, double a, double b) nogil:
    cdef double front
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return c_beta(a, b)
    front = exp(a * log(x) + b * log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return c_beta(a, b) - front * _betacf(b, a, 1.0 - x) / b


cdef double _series(double a, double b, double c, double z) nogil:
    cdef double s = 1.0, t = 1.0
    cdef int k, small = 0
    for k in range(SERIES_MAX_TERMS):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        s += t
        if t == 0.0:
            break
        if fabs(t) <= EPS * fabs(s):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return s


cdef double _connection(double a, double b, double c, double x) nogil:
    cdef double y = 1.0 - x
    cdef double s = c - a - b
    cdef double t1 = c_gamma(c) * c_gamma(s) * c_rgamma(c - a) * c_rgamma(c - b)
    cdef double t2 = c_gamma(c) * c_gamma(-s) * c_rgamma(a) * c_rgamma(b)
    cdef double v = 0.0
    if t1 != 0.0:
        v += t1 * _series(a, b, 1.0 - s, y)
    if t2 != 0.0:
        v += t2 * pow(y, s) * _series(c - a, c - b, 1.0 + s, y)
    return v


cdef double _sym(double a, double b, double c, double x, double e) nogil:
    return 0.5 * (_connection(a, b, c + e, x) + _connection(a, b, c - e, x))


cdef double _near_one(double a, double b, double c, double x) nogil:
    cdef double s = c - a - b
    cdef double frac = fabs(s - floor(s + 0.5))
    cdef double d = 5e-3
    if frac > 2e-3:
        return _connection(a, b, c, x)
    return 1.5 * _sym(a, b, c, x, d) - 0.6 * _sym(a, b, c, x, 2.0 * d) + 0.1 * _sym(a, b, c, x, 3.0 * d)


cdef double c_hyp2f1(double a, double b, double c, double z) nogil:
    cdef double w, pref
    if _is_nonpos_int(c):
        return NAN
    if a == 0.0 or b == 0.0:
        return 1.0
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        return _series(a, b, c, z)
    if fabs(z) <= 0.5:
        return _series(a, b, c, z)
    if z < -0.5:
        w = z / (z - 1.0)
        pref = pow(1.0 - z, -a)
        if _is_nonpos_int(c - b):
            return pref * _series(a, c - b, c, w)
        if w <= DIRECT_SERIES_MAX:
            return pref * _series(a, c - b, c, w)
        return pref * _near_one(a, c - b, c, w)
    if z <= DIRECT_SERIES_MAX:
        return _series(a, b, c, z)
    if z < 1.0:
        return _near_one(a, b, c, z)
    return NAN


def sinpi(double x):
    return c_sinpi(x)


def gamma(double x):
    return c_gamma(x)


def lgamma(double x):
    return c_lgamma(x)


def rgamma(double x):
    return c_rgamma(x)


def beta(double a, double b):
    return c_beta(a, b)


def betainc(double x, double a, double b):
    return c_betainc(x, a, b)


def hyp2f1(double a, double b, double c, double z):
    return c_hyp2f1(a, b, c, z)


def gamma_array(x):
    cdef cnp.ndarray[double, ndim=1] xin = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xin)
    cdef Py_ssize_t i, n = xin.shape[0]
    with nogil:
        for i in range(n):
            out[i] = c_gamma(xin[i])
    return out.reshape(np.shape(x))


def betainc_array(x, double a, double b):
    cdef cnp.ndarray[double, ndim=1] xin = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xin)
    cdef Py_ssize_t i, n = xin.shape[0]
    with nogil:
        for i in range(n):
            out[i] = c_betainc(xin[i], a, b)
    return out.reshape(np.shape(x))


def hyp2f1_array(double a, double b, double c, z):
    cdef cnp.ndarray[double, ndim=1] zin = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(zin)
    cdef Py_ssize_t i, n = zin.shape[0]
    with nogil:
        for i in range(n):
            out[i] = c_hyp2f1(a, b, c, zin[i])
    return out.reshape(np.shape(z))


cdef void _panel(double complex[:] fv, Py_ssize_t off, double half,
                 double complex *value, double *error) nogil:
    cdef double complex resk = 0.0, resg = 0.0, reskh
    cdef double resabs = 0.0, resasc = 0.0, err
    cdef Py_ssize_t k
    for k in range(21):
        resk = resk + C_KW[k] * fv[off + k]
        resg = resg + C_GW[k] * fv[off + k]
        resabs += C_KW[k] * abs(fv[off + k])
    reskh = 0.5 * resk
    for k in range(21):
        resasc += C_KW[k] * abs(fv[off + k] - reskh)
    resk = resk * half
    resabs *= fabs(half)
    resasc *= fabs(half)
    err = abs(resk - resg * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, pow(200.0 * err / resasc, 1.5))
    if resabs > UFLOW / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    value[0] = resk
    error[0] = err


def gk21_adaptive(f, double lo, double hi, double abs_tol, double rel_tol, int limit):
    """Compiled twin of ``_pykernels.gk21_adaptive``."""
    if limit < 1:
        limit = 1
    cdef cnp.ndarray[double, ndim=1] los = np.empty(limit)
    cdef cnp.ndarray[double, ndim=1] his = np.empty(limit)
    cdef cnp.ndarray[double complex, ndim=1] vals = np.empty(limit, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] errs = np.empty(limit)
    cdef cnp.ndarray[char, ndim=1] split_ok = np.ones(limit, dtype=np.int8)
    cdef cnp.ndarray[double, ndim=1] nodes = np.empty(42)
    cdef double complex[:] fv
    cdef double complex v, v1, v2, total_v, value
    cdef double e, e1, e2, total_e, tol, a, b, m, h, best, error
    cdef Py_ssize_t n = 1, i, idx, k
    cdef double half = 0.5 * (hi - lo)
    cdef double center = 0.5 * (lo + hi)

    for k in range(21):
        nodes[k] = center + half * C_NODES[k]
    fv = np.ascontiguousarray(f(nodes[:21]), dtype=np.complex128)
    _panel(fv, 0, half, &v, &e)
    los[0] = lo
    his[0] = hi
    vals[0] = v
    errs[0] = e
    total_v = v
    total_e = e
    while True:
        tol = max(abs_tol, rel_tol * abs(total_v))
        if total_e <= tol or n >= limit:
            break
        idx = -1
        best = -1.0
        for i in range(n):
            if split_ok[i] and errs[i] > best:
                best = errs[i]
                idx = i
        if idx < 0:
            break
        a = los[idx]
        b = his[idx]
        m = 0.5 * (a + b)
        if m <= a or m >= b or (b - a) < 100.0 * EPS * max(fabs(a), fabs(b)):
            split_ok[idx] = 0
            continue
        h = 0.5 * (m - a)
        for k in range(21):
            nodes[k] = 0.5 * (a + m) + h * C_NODES[k]
            nodes[21 + k] = 0.5 * (m + b) + h * C_NODES[k]
        fv = np.ascontiguousarray(f(nodes.copy()), dtype=np.complex128)
        _panel(fv, 0, h, &v1, &e1)
        _panel(fv, 21, h, &v2, &e2)
        total_v = total_v + v1 + v2 - vals[idx]
        total_e = total_e + e1 + e2 - errs[idx]
        his[idx] = m
        vals[idx] = v1
        errs[idx] = e1
        los[n] = m
        his[n] = b
        vals[n] = v2
        errs[n] = e2
        split_ok[n] = 1
        n += 1
    value = 0.0
    error = 0.0
    for i in range(n):
        value = value + vals[i]
        error += errs[i]
    tol = max(abs_tol, rel_tol * abs(value))
    return complex(value), error, n, error <= tol
