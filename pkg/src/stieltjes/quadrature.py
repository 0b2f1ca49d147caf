"""Adaptive Gauss-Kronrod integration with declared algebraic endpoint weights.

An integrand is described by a smooth ``core`` and exponents ``la``, ``lb``:

    f(x) = core(x) * (x - a)**la * (b - x)**lb

The weights are removed analytically.  Near ``a`` the substitution
x = a + h s^(1/(1+la)) turns (x-a)^la dx into h^(1+la)/(1+la) ds, and
symmetrically near ``b``; when both ends are singular the interval is split
at its midpoint.  An infinite upper limit is handled by integrating the
finite part (a, a + L) directly and mapping the tail through the fixed
rational substitution x = a + L + L w/(1-w).  If the caller declares the
tail decay f ~ x^(-gamma), the tail carries the weight (1-w)^(gamma-2).

The subdivision budget per integral comes from ``STIELTJES_QUAD_BUDGET``
(default 2000 panels).
"""

import math
import os
from collections import namedtuple

import numpy as np

from ._backend import kernels

QuadResult = namedtuple("QuadResult", ["value", "error", "converged", "panels"])

DEFAULT_BUDGET = 2000


def quad_budget():
    raw = os.environ.get("STIELTJES_QUAD_BUDGET", "")
    if not raw:
        return DEFAULT_BUDGET
    try:
        n = int(raw)
    except ValueError:
        raise ValueError("STIELTJES_QUAD_BUDGET must be an integer, got %r" % raw)
    return max(n, 1)


class SingularIntegrand:
    """core(x) (x-a)^la (b-x)^lb on (a, b); ``b`` may be ``inf``.

    For an infinite ``b`` the right exponent is ignored; ``tail_decay`` is
    the exponent gamma in f(x) ~ x^(-gamma) (None means faster than any
    power), and ``scale`` sets where the tail map starts.
    """

    def __init__(self, core, a, b, la=0.0, lb=0.0, tail_decay=None, scale=None):
        self.core = core
        self.a = float(a)
        self.b = float(b)
        self.la = float(la)
        self.lb = float(lb)
        self.tail_decay = tail_decay
        self.scale = scale
        if not self.b > self.a:
            raise ValueError("empty or reversed interval (%r, %r)" % (a, b))
        if self.la <= -1.0 or (math.isfinite(self.b) and self.lb <= -1.0):
            raise ValueError("declared exponents must exceed -1")
        if not math.isfinite(self.b) and tail_decay is not None and tail_decay <= 1.0:
            raise ValueError("tail decay exponent must exceed 1 for convergence")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        v = self.core(x)
        if self.la != 0.0:
            v = v * (x - self.a) ** self.la
        if self.lb != 0.0 and math.isfinite(self.b):
            v = v * (self.b - x) ** self.lb
        return v


def _run(g, lo, hi, rel_tol, abs_tol, limit):
    v, e, n, ok = kernels.gk21_adaptive(g, lo, hi, abs_tol, rel_tol, limit)
    return v, e, n, ok


def _left_weighted(core, a, b, la, rel_tol, abs_tol, limit):
    # int_a^b core(x) (x-a)^la dx with x = a + h s^k, k = 1/(1+la)
    h = b - a
    k = 1.0 / (1.0 + la)
    fac = h ** (1.0 + la) / (1.0 + la)

    def g(s):
        return core(a + h * s ** k)

    v, e, n, ok = _run(g, 0.0, 1.0, rel_tol, abs_tol / fac if fac else abs_tol, limit)
    return v * fac, e * fac, n, ok


def _right_weighted(core, a, b, lb, rel_tol, abs_tol, limit):
    h = b - a
    k = 1.0 / (1.0 + lb)
    fac = h ** (1.0 + lb) / (1.0 + lb)

    def g(s):
        return core(b - h * s ** k)

    v, e, n, ok = _run(g, 0.0, 1.0, rel_tol, abs_tol / fac if fac else abs_tol, limit)
    return v * fac, e * fac, n, ok


def _finite(core, a, b, la, lb, rel_tol, abs_tol, limit):
    if la == 0.0 and lb == 0.0:
        return _run(core, a, b, rel_tol, abs_tol, limit)
    if lb == 0.0:
        return _left_weighted(core, a, b, la, rel_tol, abs_tol, limit)
    if la == 0.0:
        return _right_weighted(core, a, b, lb, rel_tol, abs_tol, limit)
    m = 0.5 * (a + b)

    def left_core(x):
        return core(x) * (b - x) ** lb

    def right_core(x):
        return core(x) * (x - a) ** la

    v1, e1, n1, ok1 = _left_weighted(left_core, a, m, la, rel_tol, 0.5 * abs_tol, limit)
    v2, e2, n2, ok2 = _right_weighted(right_core, m, b, lb, rel_tol, 0.5 * abs_tol, limit)
    return v1 + v2, e1 + e2, n1 + n2, ok1 and ok2


def _tail(f, x0, scale, gamma, rel_tol, abs_tol, limit):
    # x = x0 + L w/(1-w), written in v = 1 - w so that small v is never
    # formed by cancellation: x = x0 + L (1-v)/v, dx = L/v^2 dv
    L = scale
    if gamma is None:
        def g(w):
            v = 1.0 - w
            return f(x0 + L * w / v) * (L / (v * v))
        return _run(g, 0.0, 1.0, rel_tol, abs_tol, limit)

    def g2(v):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = f(x0 + L * (1.0 - v) / v) * (L * v ** (-gamma))
        return np.where(v > 0.0, out, 0.0)

    return _finite(g2, 0.0, 1.0, gamma - 2.0, 0.0, rel_tol, abs_tol, limit)


def integrate(f, rel_tol=1e-12, abs_tol=0.0, complex_result=False):
    """Integrate a :class:`SingularIntegrand`; returns a :class:`QuadResult`.

    ``converged`` is False when the panel budget ran out before the error
    estimate met max(abs_tol, rel_tol |value|); the value is then the best
    estimate available.
    """
    if rel_tol < 1e-13:
        raise ValueError("rel_tol below 1e-13 is not supported")
    limit = quad_budget()
    if math.isfinite(f.b):
        v, e, n, ok = _finite(f.core, f.a, f.b, f.la, f.lb, rel_tol, abs_tol, limit)
    else:
        L = f.scale if f.scale is not None else max(1.0, abs(f.a))
        v1, e1, n1, ok1 = _finite(f.core, f.a, f.a + L, f.la, 0.0, rel_tol, 0.5 * abs_tol, limit)
        v2, e2, n2, ok2 = _tail(f, f.a + L, L, f.tail_decay, rel_tol, 0.5 * abs_tol, limit)
        v, e, n = v1 + v2, e1 + e2, n1 + n2
        ok = e <= max(abs_tol, rel_tol * abs(v)) or (ok1 and ok2)
    if not complex_result:
        v = v.real
    return QuadResult(v, e, bool(ok), n)


def quad(core, a, b, la=0.0, lb=0.0, tail_decay=None, scale=None, rel_tol=1e-12,
         abs_tol=0.0, complex_result=False):
    """Convenience wrapper: build the integrand and integrate it."""
    return integrate(SingularIntegrand(core, a, b, la, lb, tail_decay, scale),
                     rel_tol=rel_tol, abs_tol=abs_tol, complex_result=complex_result)
