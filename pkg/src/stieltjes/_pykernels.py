"""Pure-Python reference implementation of the numerical kernels.

Mirrors ``_ckernels.pyx`` algorithm for algorithm (same Lanczos
coefficients, same series cut-offs, same Gauss-Kronrod bisection order), so
the two backends agree to rounding.  Imported only when the compiled
extension is missing or ``STIELTJES_PURE_PYTHON`` is set.
"""

import heapq
import math

import numpy as np

EPS = 2.220446049250313e-16
UFLOW = 2.2250738585072014e-308

# Lanczos approximation, g = 7, n = 9.
LANCZOS_G = 7.0
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
SQRT_2PI = 2.5066282746310002
LOG_SQRT_2PI = 0.91893853320467274

# 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
XGK = (
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
)
WGK = (
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452978,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
)
WG = (
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)

# node layout: x_k = center + half * NODES[k]
NODES = np.array([-v for v in XGK[:10]] + [0.0] + [v for v in XGK[:10][::-1]])
KWEIGHTS = np.array(list(WGK[:10]) + [WGK[10]] + list(WGK[:10][::-1]))
_gw = np.zeros(21)
for _j in range(5):
    # Gauss nodes sit at odd positions of XGK (1, 3, 5, 7, 9)
    _gw[2 * _j + 1] = WG[_j]
    _gw[19 - 2 * _j] = WG[_j]
GWEIGHTS = _gw

SERIES_MAX_TERMS = 20000
# beyond this the connection formula about z = 1 takes over
DIRECT_SERIES_MAX = 0.97


def _is_nonpos_int(x):
    return x <= 0.0 and x == math.floor(x)


def sinpi(x):
    r = x - 2.0 * math.floor(0.5 * x)  # r in [0, 2)
    if r == 0.0 or r == 1.0:
        return 0.0
    if r > 1.0:
        return -sinpi(r - 1.0)
    if r > 0.5:
        r = 1.0 - r
    return math.sin(math.pi * r)


def gamma(x):
    if _is_nonpos_int(x):
        return math.nan
    if x < 0.5:
        return math.pi / (sinpi(x) * gamma(1.0 - x))
    if x > 171.7:
        return math.inf
    x -= 1.0
    acc = LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += LANCZOS_COEF[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    # split the power so t**(x+0.5) does not overflow before exp(-t) damps it
    half = t ** (0.5 * (x + 0.5))
    return SQRT_2PI * half * (half * math.exp(-t)) * acc


def lgamma(x):
    """log|Gamma(x)|."""
    if _is_nonpos_int(x):
        return math.inf
    if x < 0.5:
        return math.log(math.pi / abs(sinpi(x))) - lgamma(1.0 - x)
    x -= 1.0
    acc = LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += LANCZOS_COEF[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def rgamma(x):
    """1/Gamma(x), zero at the poles."""
    if _is_nonpos_int(x):
        return 0.0
    if x > 171.0:
        return math.exp(-lgamma(x))
    return 1.0 / gamma(x)


def _betacf(a, b, x):
    fpmin = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, 10001):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        dl = d * c
        h *= dl
        if abs(dl - 1.0) < 1e-16:
            return h
    return h


def beta(a, b):
    if a + b < 120.0:
        return gamma(a) * gamma(b) / gamma(a + b)
    return math.exp(lgamma(a) + lgamma(b) - lgamma(a + b))


def betainc(x, a, b):
    """Unregularized incomplete beta integral over (0, x), a, b > 0."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return beta(a, b)
    front = math.exp(a * math.log(x) + b * math.log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return beta(a, b) - front * _betacf(b, a, 1.0 - x) / b


def _series(a, b, c, z):
    s = 1.0
    t = 1.0
    small = 0
    for k in range(SERIES_MAX_TERMS):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        s += t
        if t == 0.0:
            break
        if abs(t) <= EPS * abs(s):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return s


def _connection(a, b, c, x):
    # z in (1/2, 1): expansion in powers of 1 - x
    y = 1.0 - x
    s = c - a - b
    t1 = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b)
    t2 = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b)
    v = 0.0
    if t1 != 0.0:
        v += t1 * _series(a, b, 1.0 - s, y)
    if t2 != 0.0:
        v += t2 * y ** s * _series(c - a, c - b, 1.0 + s, y)
    return v


def _near_one(a, b, c, x):
    s = c - a - b
    frac = abs(s - math.floor(s + 0.5))
    if frac > 2e-3:
        return _connection(a, b, c, x)
    # near-integer c-a-b: the two connection terms carry cancelling poles, so
    # take a symmetric sixth-order Richardson limit in c instead
    d = 5e-3

    def g(e):
        return 0.5 * (_connection(a, b, c + e, x) + _connection(a, b, c - e, x))

    return 1.5 * g(d) - 0.6 * g(2.0 * d) + 0.1 * g(3.0 * d)


def hyp2f1(a, b, c, z):
    """Real Gauss hypergeometric function for z < 1."""
    if _is_nonpos_int(c):
        return math.nan
    if a == 0.0 or b == 0.0:
        return 1.0
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        return _series(a, b, c, z)
    if abs(z) <= 0.5:
        return _series(a, b, c, z)
    if z < -0.5:
        w = z / (z - 1.0)
        pref = (1.0 - z) ** (-a)
        if _is_nonpos_int(c - b):
            return pref * _series(a, c - b, c, w)
        if w <= DIRECT_SERIES_MAX:
            return pref * _series(a, c - b, c, w)
        return pref * _near_one(a, c - b, c, w)
    if z <= DIRECT_SERIES_MAX:
        return _series(a, b, c, z)
    if z < 1.0:
        return _near_one(a, b, c, z)
    return math.nan


def gamma_array(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    flat_in = x.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = gamma(float(flat_in[i]))
    return out


def betainc_array(x, a, b):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    flat_in = x.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = betainc(float(flat_in[i]), a, b)
    return out


def hyp2f1_array(a, b, c, z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    flat_in = z.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = hyp2f1(a, b, c, float(flat_in[i]))
    return out


def _panel(fv, half):
    """QUADPACK qk21 estimate from 21 node values on a panel of half-width ``half``."""
    resk = complex(np.dot(KWEIGHTS, fv))
    resg = complex(np.dot(GWEIGHTS, fv))
    absf = np.abs(fv)
    resabs = float(np.dot(KWEIGHTS, absf))
    reskh = 0.5 * resk
    resasc = float(np.dot(KWEIGHTS, np.abs(fv - reskh)))
    resk *= half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg * half))
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > UFLOW / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    return resk, err


def gk21_adaptive(f, lo, hi, abs_tol, rel_tol, limit):
    """Globally adaptive Gauss-Kronrod integration of a vectorized ``f``.

    Returns ``(value, error, n_panels, converged)``; the value is complex.
    Panels are bisected largest-error first, ties broken by creation order,
    and the final sum runs in creation order.
    """
    half = 0.5 * (hi - lo)
    fv = np.asarray(f(0.5 * (lo + hi) + half * NODES), dtype=complex)
    v, e = _panel(fv, half)
    los = [lo]
    his = [hi]
    vals = [v]
    errs = [e]
    splittable = [True]
    heap = [(-e, 0)]
    total_v = v
    total_e = e
    while True:
        tol = max(abs_tol, rel_tol * abs(total_v))
        if total_e <= tol or len(vals) >= limit or not heap:
            break
        _, idx = heapq.heappop(heap)
        a = los[idx]
        b = his[idx]
        m = 0.5 * (a + b)
        if not splittable[idx] or m <= a or m >= b or (b - a) < 100.0 * EPS * max(abs(a), abs(b)):
            splittable[idx] = False
            continue
        h = 0.5 * (m - a)
        nodes = np.concatenate((0.5 * (a + m) + h * NODES, 0.5 * (m + b) + h * NODES))
        fv = np.asarray(f(nodes), dtype=complex)
        v1, e1 = _panel(fv[:21], h)
        v2, e2 = _panel(fv[21:], h)
        total_v += v1 + v2 - vals[idx]
        total_e += e1 + e2 - errs[idx]
        his[idx] = m
        vals[idx] = v1
        errs[idx] = e1
        los.append(m)
        his.append(b)
        vals.append(v2)
        errs.append(e2)
        splittable.append(True)
        heapq.heappush(heap, (-e1, idx))
        heapq.heappush(heap, (-e2, len(vals) - 1))
    value = 0j
    error = 0.0
    for i in range(len(vals)):
        value += vals[i]
        error += errs[i]
    tol = max(abs_tol, rel_tol * abs(value))
    return value, error, len(vals), error <= tol
