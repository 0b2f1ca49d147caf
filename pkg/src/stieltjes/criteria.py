"""Membership diagnostics for the classes S_alpha.

Every check here samples a finite grid, so a pass is evidence only.  The
Sokal test works from closed-form derivatives supplied by a derivative
provider: any object with ``provider(n, x)`` returning f^(n)(x) for real
x > 0 (array in, array out), an optional ``max_order`` (None when
unlimited) and optionally ``value(z)`` for complex evaluation.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional

import numpy as np

from .specfun import falling, pochhammer

NO_VIOLATION = "no violation found"
VIOLATION = "violation"

NECESSARY_ONLY = "necessary conditions only: a pass does not imply membership"


@dataclass
class CriterionReport:
    criterion: str
    domain: dict
    verdict: str
    witness: Optional[Any] = None
    value: Optional[float] = None
    label: str = ""
    details: List[Any] = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == NO_VIOLATION

    def to_dict(self):
        w = self.witness
        if isinstance(w, complex):
            w = [w.real, w.imag]
        return {"criterion": self.criterion, "domain": self.domain, "verdict": self.verdict,
                "witness": w, "value": self.value, "label": self.label,
                "details": [str(d) for d in self.details]}


# ----------------------------------------------------------------- providers

class PoleSum:
    """sum_j c_j (z + p_j)^(-k_j): rational or fractional power sums with exact derivatives."""

    max_order = None

    def __init__(self, terms):
        self.terms = [(float(c), float(p), float(k)) for c, p, k in terms]

    def __call__(self, n, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for c, p, k in self.terms:
            out = out + c * (-1.0) ** n * pochhammer(k, n) * (x + p) ** (-k - n)
        return out

    def value(self, z):
        z = complex(z)
        return sum(c * cmath.exp(-k * cmath.log(z + p)) for c, p, k in self.terms)


class ConstantProvider:
    max_order = None

    def __init__(self, c):
        self.c = float(c)

    def __call__(self, n, x):
        x = np.asarray(x, dtype=float)
        return np.full(x.shape, self.c if n == 0 else 0.0)

    def value(self, z):
        return complex(self.c)


class ProductProvider:
    """Derivatives of f g by the Leibniz rule."""

    def __init__(self, f, g):
        self.f = f
        self.g = g
        orders = [getattr(h, "max_order", None) for h in (f, g)]
        known = [o for o in orders if o is not None]
        self.max_order = min(known) if known else None

    def __call__(self, n, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for j in range(n + 1):
            out = out + math.comb(n, j) * self.f(j, x) * self.g(n - j, x)
        return out

    def value(self, z):
        return self.f.value(z) * self.g.value(z)


class NegativeDerivative:
    """Provider for -f'."""

    def __init__(self, f):
        self.f = f
        m = getattr(f, "max_order", None)
        self.max_order = None if m is None else m - 1

    def __call__(self, n, x):
        return -np.asarray(self.f(n + 1, x))


def provider_sanity(provider, x_points=(0.5, 1.0, 3.0), rel_tol=1e-5):
    """Compare orders 1 and 2 with central differences of the lower order."""
    for x in x_points:
        h = 1e-4 * x
        for n in (1, 2):
            hi = float(np.asarray(provider(n - 1, np.array([x + h])))[0])
            lo = float(np.asarray(provider(n - 1, np.array([x - h])))[0])
            fd = (hi - lo) / (2.0 * h)
            ex = float(np.asarray(provider(n, np.array([x])))[0])
            if abs(fd - ex) > rel_tol * (abs(ex) + abs(hi) + 1e-300) + 1e-12:
                return False, (n, x, ex, fd)
    return True, None


# --------------------------------------------------------------- Sokal test

def sokal_terms(provider, alpha, n, k, x):
    """Leibniz terms of (-1)^n D^k (x^P f^(n)), P = n+k+alpha-1."""
    P = n + k + alpha - 1.0
    x = np.asarray(x, dtype=float)
    terms = []
    for j in range(k + 1):
        terms.append((-1.0) ** n * math.comb(k, j) * falling(P, j) * x ** (P - j)
                     * np.asarray(provider(n + k - j, x)))
    return np.array(terms)


def sokal_value(provider, alpha, n, k, x):
    """F_{n,k}(x) together with the largest Leibniz term in modulus."""
    t = sokal_terms(provider, alpha, n, k, x)
    return t.sum(axis=0), np.max(np.abs(t), axis=0)


def default_x_grid():
    return np.geomspace(0.05, 20.0, 33)


def sokal_test(provider, alpha, n_max=4, k_max=4, x_grid=None, tol=1e-10, sanity=True):
    """Scan F_{n,k}(x) >= 0 for n <= n_max, k <= k_max over ``x_grid``.

    A value below -tol (1 + max Leibniz term) is a violation; the first one
    in (n, k, x) order is the witness.
    """
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValueError("sokal_test requires alpha > 0")
    need = n_max + k_max
    mo = getattr(provider, "max_order", None)
    if mo is not None and mo < need:
        raise ValueError("provider supplies derivatives up to order %d, %d needed" % (mo, need))
    xs = default_x_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    if sanity:
        ok, info = provider_sanity(provider)
        if not ok:
            raise ValueError("derivative provider disagrees with finite differences: %r" % (info,))
    domain = {"alpha": alpha, "n_max": n_max, "k_max": k_max,
              "x_min": float(xs.min()), "x_max": float(xs.max()), "points": int(xs.size)}
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            F, big = sokal_value(provider, alpha, n, k, xs)
            bad = np.nonzero(F < -tol * (1.0 + big))[0]
            if len(bad):
                i = bad[0]
                x = float(xs[i])
                # re-evaluate on a locally refined grid around the witness
                lo = xs[i - 1] if i > 0 else x / 1.5
                hi = xs[i + 1] if i + 1 < xs.size else x * 1.5
                ref = np.geomspace(lo, hi, 5)
                Fr, _ = sokal_value(provider, alpha, n, k, ref)
                return CriterionReport("sokal", domain, VIOLATION, (n, k, x), float(F[i]),
                                       "", [("refined", ref.tolist(), Fr.tolist())])
    return CriterionReport("sokal", domain, NO_VIOLATION, label="finite scan: membership evidence only")


# ------------------------------------------------------- complex criteria

def _as_eval(f):
    if hasattr(f, "value"):
        return f.value
    return f


def default_z_grid(upper=True, n_r=20, n_t=20, arg_max=math.pi):
    r = np.geomspace(0.1, 10.0, n_r)
    t = np.linspace(0.0, arg_max, n_t + 2)[1:-1]
    z = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    return z if upper else np.conj(z)


def krein_test(f, z_grid=None, x_grid=None, tol=1e-12):
    """f(x) >= 0 on x > 0 and Im f(z) <= 0 for Im z > 0, sampled.

    Holomorphy off the cut is the caller's responsibility.
    """
    ev = _as_eval(f)
    zs = default_z_grid() if z_grid is None else np.asarray(z_grid, dtype=complex)
    xs = default_x_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    domain = {"z_points": int(zs.size), "x_points": int(xs.size)}
    for x in xs:
        v = complex(ev(complex(float(x), 0.0)))
        if v.real < -tol * (1.0 + abs(v)):
            return CriterionReport("krein", domain, VIOLATION, float(x), v.real, "f(x) < 0")
    for z in zs:
        if z.imag <= 0.0:
            continue
        v = complex(ev(complex(z)))
        if v.imag > tol * (1.0 + abs(v)):
            return CriterionReport("krein", domain, VIOLATION, complex(z), v.imag, "Im f(z) > 0")
    return CriterionReport("krein", domain, NO_VIOLATION, label="sampled sign conditions")


def _probe_centres(arg_max=math.pi, n_r=13, n_t=13):
    r = np.geomspace(0.1, 10.0, n_r)
    t = np.linspace(0.0, arg_max, n_t + 2)[1:-1]
    return [(ri, ti) for ri in r for ti in t]


def holomorphy_probe(f, n_nodes=64, tol=1e-8):
    """Contour integrals of f over small circles in the cut plane.

    A holomorphic f integrates to zero over each circle; a clearly non-zero
    value reveals a singularity inside.  Returns the first offending centre
    or None.
    """
    ev = _as_eval(f)
    w = np.exp(2j * math.pi * np.arange(n_nodes) / n_nodes)
    for half in (1.0, -1.0):
        for r, t in _probe_centres():
            c = r * cmath.exp(1j * half * t)
            rad = 0.5 * r * min(math.sin(t), 0.4)
            pts = c + rad * w
            vals = np.array([complex(ev(complex(p))) for p in pts])
            # trapezoid rule for the closed contour
            integral = np.mean(vals * rad * w) * 2j * math.pi
            scale = 2.0 * math.pi * rad * (1.0 + float(np.max(np.abs(vals))))
            if abs(integral) > tol * scale:
                return complex(c), abs(integral)
    return None


def sector_test(f, alpha, z_grid=None, x_grid=None, tol=1e-12, probe=True):
    """Necessary conditions for S_alpha, alpha >= 1: holomorphy in the cut
    plane (probed), f(x) >= 0 on x > 0, Im f(z) <= 0 for 0 < arg z < pi/alpha."""
    alpha = float(alpha)
    if alpha < 1.0:
        raise ValueError("sector_test requires alpha >= 1")
    ev = _as_eval(f)
    amax = math.pi / alpha
    zs = default_z_grid(arg_max=amax) if z_grid is None else np.asarray(z_grid, dtype=complex)
    xs = default_x_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    domain = {"alpha": alpha, "sector": [0.0, amax], "z_points": int(zs.size),
              "x_points": int(xs.size), "holomorphy_probe": bool(probe)}
    if probe:
        hit = holomorphy_probe(ev)
        if hit is not None:
            return CriterionReport("sector", domain, VIOLATION, hit[0], hit[1],
                                   "not holomorphic near the witness", )
    for x in xs:
        v = complex(ev(complex(float(x), 0.0)))
        if v.real < -tol * (1.0 + abs(v)):
            return CriterionReport("sector", domain, VIOLATION, float(x), v.real, "f(x) < 0")
    for z in zs:
        arg = cmath.phase(z)
        if not 0.0 < arg < amax:
            continue
        v = complex(ev(complex(z)))
        if v.imag > tol * (1.0 + abs(v)):
            return CriterionReport("sector", domain, VIOLATION, complex(z), v.imag,
                                   "Im f(z) > 0 inside the sector")
    return CriterionReport("sector", domain, NO_VIOLATION, label=NECESSARY_ONLY)


# ----------------------------------------------------------- power maps

def _func_eval(f):
    if hasattr(f, "alpha") and hasattr(f, "measure"):
        return f.__call__
    return _as_eval(f)


def power_map_root(f, alpha=None):
    """z -> f(z)^(1/alpha) (principal branch) for f in S_alpha, 0 < alpha <= 1."""
    alpha = float(f.alpha if alpha is None else alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValueError("power_map_root requires 0 < alpha <= 1")
    ev = _func_eval(f)
    if alpha == 1.0:
        return lambda z: complex(ev(z))

    def g(z):
        v = complex(ev(z))
        if v == 0.0:
            return 0j
        return cmath.exp(cmath.log(v) / alpha)
    return g


def power_map_stretch(f, alpha=None):
    """z -> f(z^(1/alpha)) (principal branch) for f in S_alpha, alpha >= 1.

    The map into S_1 is not onto.
    """
    alpha = float(f.alpha if alpha is None else alpha)
    if alpha < 1.0:
        raise ValueError("power_map_stretch requires alpha >= 1")
    ev = _func_eval(f)
    if alpha == 1.0:
        return lambda z: complex(ev(z))

    def g(z):
        z = complex(z)
        return complex(ev(cmath.exp(cmath.log(z) / alpha)))
    return g


# ------------------------------------------- sector-condition counterexample

def remark7_im_formula(x, y):
    """Closed form of Im f(x + iy) for f = (z+1)^-2 - (z+2)^-2 / 2."""
    num = (30 + 87 * x + 96 * x ** 2 + 50 * x ** 3 + 12 * x ** 4 + x ** 5 + 12 * y ** 2
           + 22 * x * y ** 2 + 12 * x ** 2 * y ** 2 + 2 * x ** 3 * y ** 2 + x * y ** 4)
    den = (1 + 2 * x + x ** 2 + y ** 2) ** 2 * (4 + 4 * x + x ** 2 + y ** 2) ** 2
    return -y * num / den


def remark7_function():
    """(evaluator, derivative provider, Im formula) for f = (z+1)^-2 - (z+2)^-2 / 2."""
    prov = PoleSum([(1.0, 1.0, 2.0), (-0.5, 2.0, 2.0)])
    return prov.value, prov, remark7_im_formula


def product_membership_check(f, alpha, g, beta, n_max=3, k_max=3, x_grid=None, tol=1e-10):
    """Sokal scan of f g at order alpha + beta (beta = 0 for constants)."""
    order = float(alpha) + float(beta)
    rep = sokal_test(ProductProvider(f, g), order, n_max, k_max, x_grid, tol)
    rep.criterion = "product"
    rep.domain["orders"] = [float(alpha), float(beta)]
    return rep
