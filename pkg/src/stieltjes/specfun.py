"""Gamma-type special functions and the real Gauss hypergeometric function.

Thin validating wrappers over the backend kernels (compiled when available).
The 2F1 path table is fixed: power series for |z| <= 0.5 and for
0.5 < z <= 0.97, the Pfaff transformation for z < -0.5, and the connection
formula about z = 1 beyond that, with a symmetric Richardson limit in ``c``
when ``c - a - b`` is within 2e-3 of an integer.
"""

import math

import numpy as np

from ._backend import kernels


def _is_pole(x):
    return x <= 0.0 and x == math.floor(x)


def gamma_fn(x):
    """Gamma function for real ``x`` away from the poles."""
    x = float(x)
    if _is_pole(x):
        raise ValueError("gamma_fn: pole at non-positive integer %r" % x)
    return kernels.gamma(x)


def lgamma_fn(x):
    """log|Gamma(x)|."""
    x = float(x)
    if _is_pole(x):
        raise ValueError("lgamma_fn: pole at non-positive integer %r" % x)
    return kernels.lgamma(x)


def rgamma_fn(x):
    """Reciprocal Gamma; entire, so zero at the poles."""
    return kernels.rgamma(float(x))


def beta_fn(a, b):
    """Euler Beta function B(a, b) for a, b > 0."""
    a = float(a)
    b = float(b)
    if a <= 0.0 or b <= 0.0:
        raise ValueError("beta_fn requires a, b > 0, got (%r, %r)" % (a, b))
    return kernels.beta(a, b)


def inc_beta(x, a, b, regularized=False):
    """Incomplete Beta integral over (0, x).

    Unregularized by default; ``regularized=True`` divides by B(a, b).
    """
    x = float(x)
    a = float(a)
    b = float(b)
    if a <= 0.0 or b <= 0.0:
        raise ValueError("inc_beta requires a, b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValueError("inc_beta requires 0 <= x <= 1, got %r" % x)
    v = kernels.betainc(x, a, b)
    if regularized:
        v /= kernels.beta(a, b)
    return v


def gen_inc_beta(x, a, b):
    """Integral of t^(a-1) (1-t)^(b-1) over (0, x) continued in ``a``.

    Equals inc_beta for a, b > 0.  For a < 0 (not an integer) it is the
    analytic continuation x^a/a 2F1(a, 1-b; a+1; x), which is what
    differences of the form  F(x2) - F(x1)  with 0 < x1 < x2 need.
    """
    x = float(x)
    if x <= 0.0:
        if a > 0.0:
            return 0.0
        raise ValueError("gen_inc_beta: x = 0 with a <= 0 diverges")
    if a > 0.0 and b > 0.0:
        return kernels.betainc(min(x, 1.0), a, b)
    if _is_pole(a):
        raise ValueError("gen_inc_beta: a is a non-positive integer")
    if x >= 1.0:
        if b <= 0.0:
            raise ValueError("gen_inc_beta: x = 1 with b <= 0 diverges")
        return kernels.gamma(a) * kernels.gamma(b) * kernels.rgamma(a + b)
    return x ** a / a * kernels.hyp2f1(a, 1.0 - b, a + 1.0, x)


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    out = 1.0
    for j in range(int(k)):
        out *= a + j
    return out


def falling(p, k):
    """Falling factorial p (p-1) ... (p-k+1)."""
    out = 1.0
    for j in range(int(k)):
        out *= p - j
    return out


def gauss_2f1(a, b, c, z):
    """Real Gauss hypergeometric function 2F1(a, b; c; z) for z < 1."""
    a = float(a)
    b = float(b)
    c = float(c)
    z = float(z)
    if _is_pole(c):
        raise ValueError("gauss_2f1: c is a non-positive integer")
    if not z < 1.0:
        raise ValueError("gauss_2f1: only z < 1 is supported, got %r" % z)
    return kernels.hyp2f1(a, b, c, z)


def gauss_2f1_at_one(a, b, c):
    """Gauss summation value 2F1(a, b; c; 1) for c > a + b."""
    if not c > a + b:
        raise ValueError("Gauss summation needs c > a + b")
    return (gamma_fn(c) * gamma_fn(c - a - b)
            * rgamma_fn(c - a) * rgamma_fn(c - b))


def gamma_array(x):
    return kernels.gamma_array(np.asarray(x, dtype=float))


def betainc_array(x, a, b):
    return kernels.betainc_array(np.asarray(x, dtype=float), float(a), float(b))


def hyp2f1_array(a, b, c, z):
    return kernels.hyp2f1_array(float(a), float(b), float(c), np.asarray(z, dtype=float))
