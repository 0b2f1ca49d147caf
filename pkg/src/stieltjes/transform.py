"""Generalized Stieltjes transforms in the two equivalent representations.

mu-form:   f(z) = int mu(du) (u+z)^(-alpha) + mu_inf + mu_0 z^(-alpha)
rho-form:  f(z) = int rho(dt) (1+tz)^(-alpha) + rho_0 + rho_inf z^(-alpha)

The representations are exchanged by the involution N_alpha.  Complex powers
use the principal branch exp(alpha Log w), which is positive on the positive
half-axis and respects f(conj z) = conj f(z).
"""

import cmath
import math

import numpy as np

from . import measure as _m
from .measure import INF, Measure, involution, kernel_integral, membership_integral, moments
from .quadrature import quad
from .specfun import gamma_fn, pochhammer

MU = "mu"
RHO = "rho"


class StieltjesFunction:
    """A measure, an order alpha > 0 and a representation flag."""

    __slots__ = ("measure", "alpha", "representation")

    def __init__(self, measure, alpha, representation=MU, check=True):
        alpha = float(alpha)
        if alpha <= 0.0:
            raise ValueError("order alpha must be positive")
        if representation not in (MU, RHO):
            raise ValueError("representation must be 'mu' or 'rho'")
        if check and measure.closed_form:
            if membership_integral(measure, alpha) == INF:
                raise ValueError("measure is not in M_alpha: integral of (1+t)^-alpha diverges")
        object.__setattr__(self, "measure", measure)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "representation", representation)

    def __setattr__(self, name, value):
        raise AttributeError("StieltjesFunction is immutable")

    def __repr__(self):
        return "StieltjesFunction(alpha=%g, %s-form, %r)" % (self.alpha, self.representation, self.measure)

    def __call__(self, z):
        return eval_transform(self, z)

    def mu_form(self):
        if self.representation == MU:
            return self
        return StieltjesFunction(involution(self.measure, self.alpha), self.alpha, MU, check=False)

    def rho_form(self):
        if self.representation == RHO:
            return self
        return StieltjesFunction(involution(self.measure, self.alpha), self.alpha, RHO, check=False)

    def derivative(self, n, x):
        return derivative(self, n, x)


def _check_point(z):
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise ValueError("branch cut: z = %r lies on (-inf, 0]" % (z,))
    return z


def _cpow(w, e):
    # principal branch; real arithmetic on the positive axis
    if isinstance(w, np.ndarray):
        if np.iscomplexobj(w):
            return np.exp(e * np.log(w))
        return w ** e
    if isinstance(w, complex):
        return cmath.exp(e * cmath.log(w))
    return w ** e


def _clog(w):
    return cmath.log(w) if isinstance(w, complex) else math.log(w)


def _mu_closed(alpha, z):
    def closed(tm, a, b):
        if not tm.is_constant:
            return None
        if b == INF:
            if alpha <= 1.0:
                return None
            return tm.c * _cpow(a + z, 1.0 - alpha) / (alpha - 1.0)
        if alpha == 1.0:
            return tm.c * (_clog(b + z) - _clog(a + z))
        return tm.c * (_cpow(a + z, 1.0 - alpha) - _cpow(b + z, 1.0 - alpha)) / (alpha - 1.0)
    return closed


def _rho_closed(alpha, z):
    def closed(tm, a, b):
        if not tm.is_constant:
            return None
        if b == INF:
            if alpha <= 1.0:
                return None
            return tm.c * _cpow(1.0 + a * z, 1.0 - alpha) / (z * (alpha - 1.0))
        if alpha == 1.0:
            return tm.c * (_clog(1.0 + b * z) - _clog(1.0 + a * z)) / z
        return tm.c * (_cpow(1.0 + a * z, 1.0 - alpha) - _cpow(1.0 + b * z, 1.0 - alpha)) / (z * (alpha - 1.0))
    return closed


def _integral_part(mu, alpha, z, form, rel_tol=1e-12):
    """The integral over (0, inf) of the representation kernel, atoms included."""
    real = z.imag == 0.0
    zz = z.real if real else z
    if form == MU:
        def kern(u):
            return _cpow(u + zz, -alpha)
        closed = _mu_closed(alpha, zz)
        scale = max(1.0, abs(z))
    else:
        def kern(u):
            return _cpow(1.0 + u * zz, -alpha)
        closed = _rho_closed(alpha, zz)
        scale = max(1.0, 1.0 / abs(z))
    inner = mu.replace(atom_zero=0.0, atom_infinity=0.0)
    v, err = kernel_integral(inner, kern, k_decay=alpha, rel_tol=rel_tol, scale=scale,
                             complex_result=not real, closed=closed)
    if v == INF:
        raise ValueError("transform integral diverges: measure not in M_alpha")
    return complex(v), err


def eval_transform(f, z, rel_tol=1e-12):
    """f(z) at a complex point off the cut (-inf, 0]."""
    z = _check_point(z)
    mu = f.measure
    alpha = f.alpha
    v, _ = _integral_part(mu, alpha, z, f.representation, rel_tol)
    zpow = _cpow(z.real if z.imag == 0.0 else z, -alpha)
    if f.representation == MU:
        v += mu.atom_infinity + mu.atom_zero * zpow
    else:
        v += mu.atom_zero + mu.atom_infinity * zpow
    return v


def eval_real(f, x):
    """f(x) for real x > 0, as a float."""
    return eval_transform(f, complex(x, 0.0)).real


def eval_many(f, zs):
    return np.array([eval_transform(f, z) for z in np.ravel(zs)]).reshape(np.shape(zs))


def reciprocal_map(f):
    """g(z) = z^(-alpha) f(1/z), represented by the measure N_alpha mu_f."""
    if f.representation != MU:
        raise ValueError("reciprocal_map expects a mu-form function")
    return StieltjesFunction(involution(f.measure, f.alpha), f.alpha, MU, check=False)


def series_coefficients(f, k_max):
    """Power-series coefficients c_k = (-1)^k (alpha)_k/k! rho_k about z = 0."""
    g = f.rho_form()
    rho = g.measure
    if rho.atom_infinity > 0.0 or rho.support_sup() == INF:
        raise ValueError("series_coefficients requires compact rho support (no atom at infinity)")
    rk = moments(rho, k_max)
    out = []
    w = 1.0
    for k in range(int(k_max) + 1):
        if k > 0:
            # (alpha)_k / k! updated in ratio form
            w *= (g.alpha + k - 1.0) / k
        out.append((-1.0) ** k * w * rk[k])
    return out


def series_radius(f):
    """Radius 1/R of the disk of convergence, R = sup supp rho."""
    R = f.rho_form().measure.support_sup()
    return INF if R == 0.0 else 1.0 / R


def series_eval(f, z, k_max):
    c = series_coefficients(f, k_max)
    z = complex(z)
    s = 0j
    p = 1.0 + 0j
    for ck in c:
        s += ck * p
        p *= z
    return s


def _laplace_inner(mu, u):
    """L(mu; u) = integral of e^(-u t) d mu(t) over (0, inf), u > 0."""
    def kern(t):
        return np.exp(-u * t)

    def closed(tm, a, b):
        if not tm.is_constant:
            return None
        eb = 0.0 if b == INF else math.exp(-u * b)
        return tm.c * (math.exp(-u * a) - eb) / u

    v, _ = kernel_integral(mu.replace(atom_zero=0.0, atom_infinity=0.0), kern, k_decay=None,
                           scale=1.0 / u, closed=closed)
    return float(v)


def _tail_power(mu):
    g = -INF
    for pc in mu.pieces:
        if pc.b == INF:
            for tm in pc.terms:
                g = max(g, tm.p + tm.r)
    return g


def laplace_factorization_eval(f, z, rel_tol=1e-10):
    """f(z) via the iterated Laplace transform (1/Gamma(a)) L(u^(a-1) L(mu; u); z) + mu_inf."""
    g = f.mu_form()
    mu = g.measure
    alpha = g.alpha
    z = float(z)
    if z <= 0.0:
        raise ValueError("laplace_factorization_eval needs real z > 0")
    if mu.atom_zero != 0.0:
        raise ValueError("not covered by the Laplace factorization: atom at zero must vanish")
    # an infinite-mass density ~ t^g makes L(mu; u) ~ u^(-g-1) near u = 0
    gt = _tail_power(mu)
    la = alpha - 1.0
    if gt > -1.0:
        la = alpha - 2.0 - gt
    shift = alpha - 1.0 - la
    ga = gamma_fn(alpha)

    def core(u):
        u = np.asarray(u, dtype=float)
        inner = np.array([_laplace_inner(mu, ui) for ui in u])
        return u ** shift * np.exp(-z * u) * inner / ga

    res = quad(core, 0.0, INF, la=la, tail_decay=None, scale=1.0 / z, rel_tol=rel_tol)
    return res.value + mu.atom_infinity


def modulus_bound(f, z):
    """(A |(z-1)/Im z|^alpha + mu_inf, |f(z)|) for Re z <= 0, Im z != 0."""
    g = f.mu_form()
    z = complex(z)
    if z.real > 0.0:
        raise ValueError("bound proved only for Re z <= 0")
    if z.imag == 0.0:
        raise ValueError("modulus bound needs Im z != 0")
    mu = g.measure
    A = membership_integral(mu, g.alpha)
    bound = A * abs((z - 1.0) / z.imag) ** g.alpha + mu.atom_infinity
    actual = abs(eval_transform(g, z))
    return bound, actual


def derivative(f, n, x):
    """n-th derivative at real x > 0 from the measure:
    (-1)^n (alpha)_n [int mu(du) (u+x)^(-alpha-n) + mu_0 x^(-alpha-n)]."""
    n = int(n)
    g = f.mu_form()
    x = float(x)
    if x <= 0.0:
        raise ValueError("derivatives are taken on x > 0")
    if n == 0:
        return eval_real(g, x)
    mu = g.measure
    alpha = g.alpha
    v, _ = _integral_part(mu, alpha + n, complex(x, 0.0), MU)
    v = v.real + mu.atom_zero * x ** (-alpha - n)
    return (-1.0) ** n * pochhammer(alpha, n) * v


def _derivatives_closed(f, n, x):
    # vectorized path for atoms and constant pieces; None otherwise
    g = f.mu_form()
    mu = g.measure
    if any(not tm.is_constant for pc in mu.pieces for tm in pc.terms):
        return None
    if np.any(x <= 0.0):
        raise ValueError("derivatives are taken on x > 0")
    e = g.alpha + n
    v = np.zeros(x.shape)
    if mu.atom_zero:
        v += mu.atom_zero * x ** (-e)
    for u, m in mu.atoms:
        v += m * (u + x) ** (-e)
    for pc in mu.pieces:
        c = sum(tm.c for tm in pc.terms)
        if pc.b == INF:
            if e <= 1.0:
                return None
            v += c * (pc.a + x) ** (1.0 - e) / (e - 1.0)
        elif e == 1.0:
            v += c * (np.log(pc.b + x) - np.log(pc.a + x))
        else:
            v += c * ((pc.a + x) ** (1.0 - e) - (pc.b + x) ** (1.0 - e)) / (e - 1.0)
    return (-1.0) ** n * pochhammer(g.alpha, n) * v


class MeasureDerivatives:
    """Derivative provider f^(n)(x) for a measure-backed transform."""

    closed_form = True

    def __init__(self, f):
        self.f = f
        self.max_order = None

    def __call__(self, n, x):
        x = np.asarray(x, dtype=float)
        fast = _derivatives_closed(self.f, int(n), x) if n > 0 else None
        if fast is not None:
            return fast
        out = np.array([derivative(self.f, n, xi) for xi in x.ravel()])
        return out.reshape(x.shape)

    def value(self, z):
        return eval_transform(self.f, z)
