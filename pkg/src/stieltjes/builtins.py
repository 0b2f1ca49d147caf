"""Named test functions with known closed forms.

``get_builtin("example3(0.5,1,2)")`` and friends return a :class:`Builtin`
bundling the transform, its closed form, a derivative provider where one is
available, and a provenance header for reports.
"""

import cmath
import re
from dataclasses import dataclass, field
from typing import Any, Callable

from .criteria import PoleSum, remark7_im_formula
from .measure import INF, DensityPiece, Measure, PowerTerm, constant_piece
from .quadrature import quad
from .specfun import gamma_fn, gauss_2f1
from .transform import MU, MeasureDerivatives, StieltjesFunction


@dataclass
class Builtin:
    name: str
    params: dict
    header: str
    function: StieltjesFunction
    closed_form: Callable
    provider: Any = None
    extra: dict = field(default_factory=dict)

    def report_header(self):
        return {"builtin": self.name, "params": self.params, "closed_form": self.header}


def _cpow(w, e):
    w = complex(w)
    if w.imag == 0.0 and w.real > 0.0:
        return complex(w.real ** e)
    return cmath.exp(e * cmath.log(w))


def example1(alpha=2.0):
    """Unit density on (0, 1): f(z) = (z^(1-a) - (1+z)^(1-a))/(a-1), alpha > 1."""
    alpha = float(alpha)
    if alpha <= 1.0:
        raise ValueError("example1 needs alpha > 1")
    mu = Measure(pieces=[constant_piece(0.0, 1.0)])
    f = StieltjesFunction(mu, alpha, MU)

    def closed(z):
        return (_cpow(z, 1.0 - alpha) - _cpow(1.0 + complex(z), 1.0 - alpha)) / (alpha - 1.0)

    def phi_closed(y, eps):
        if y <= 1.0:
            return y ** (1.0 - eps) / (1.0 - eps)
        return (y ** (1.0 - eps) - (y - 1.0) ** (1.0 - eps)) / (1.0 - eps)

    return Builtin("example1", {"alpha": alpha},
                   "example1: f(z) = [z^(1-alpha) - (1+z)^(1-alpha)]/(alpha-1), "
                   "mu = unit density on (0,1)",
                   f, closed, MeasureDerivatives(f),
                   {"phi_closed": phi_closed, "exact_order": alpha})


def example2(alpha=2.0):
    """Unit density on (1, inf): f(z) = (1+z)^(1-a)/(a-1), exact order a-1."""
    alpha = float(alpha)
    if alpha <= 1.0:
        raise ValueError("example2 needs alpha > 1")
    mu = Measure(pieces=[constant_piece(1.0, INF)])
    f = StieltjesFunction(mu, alpha, MU)

    def closed(z):
        return _cpow(1.0 + complex(z), 1.0 - alpha) / (alpha - 1.0)

    def phi_closed(y, eps):
        return 0.0 if y <= 1.0 else (y - 1.0) ** (1.0 - eps) / (1.0 - eps)

    lower = StieltjesFunction(Measure(atoms=[(1.0, 1.0 / (alpha - 1.0))]), alpha - 1.0, MU) \
        if alpha - 1.0 > 0.0 else None
    return Builtin("example2", {"alpha": alpha},
                   "example2: f(z) = 1/[(alpha-1)(1+z)^(alpha-1)], mu = unit density on (1,inf)",
                   f, closed, PoleSum([(1.0 / (alpha - 1.0), 1.0, alpha - 1.0)]),
                   {"phi_closed": phi_closed, "exact_order": alpha - 1.0, "lower": lower})


def example3(a=0.5, b=1.0, c=2.0):
    """f(z) = 2F1(a, b; c; -z) in S_a, density C t^(a-c) (t-1)^(c-b-1) on (1, inf)."""
    a = float(a)
    b = float(b)
    c = float(c)
    if not (c > b > 0.0 and 0.0 < a <= b):
        raise ValueError("example3 needs c > b > 0 and 0 < a <= b")
    C = gamma_fn(c) / (gamma_fn(b) * gamma_fn(c - b))
    mu = Measure(pieces=[DensityPiece(1.0, INF, [PowerTerm(C, p=a - c, r=c - b - 1.0, s=1.0)])])
    f = StieltjesFunction(mu, a, MU)

    def closed(z):
        z = complex(z)
        if z.imag != 0.0:
            raise ValueError("the 2F1 closed form is evaluated on the real axis only")
        return complex(gauss_2f1(a, b, c, -z.real))

    def phi_closed(y, eps):
        # the transform's measure carries C; the closed form is C times it
        if y <= 1.0:
            return 0.0
        A = gamma_fn(c - b) * gamma_fn(1.0 - eps) / gamma_fn(c - b - eps + 1.0)
        return C * A * (y - 1.0) ** (c - b - eps) * gauss_2f1(c - a, c - b, c - b - eps + 1.0, -(y - 1.0))

    def euler(z):
        res = quad(lambda u: (1.0 + z * u) ** (-a), 0.0, 1.0, la=b - 1.0, lb=c - b - 1.0,
                   rel_tol=1e-12)
        return C * res.value

    return Builtin("example3", {"a": a, "b": b, "c": c},
                   "example3: f(z) = 2F1(a,b;c;-z), mu(t) = C t^(a-c) (t-1)^(c-b-1) on (1,inf), "
                   "C = Gamma(c)/[Gamma(b)Gamma(c-b)]",
                   f, closed, MeasureDerivatives(f),
                   {"phi_closed": phi_closed, "euler": euler, "exact_order": a})


def remark7():
    """f(z) = (z+1)^-2 - (z+2)^-2/2: sector conditions hold at order 2, yet f is not in S_2."""
    prov = PoleSum([(1.0, 1.0, 2.0), (-0.5, 2.0, 2.0)])
    nu = Measure(pieces=[constant_piece(1.0, 2.0, 2.0), constant_piece(2.0, INF, 1.0)])
    f = StieltjesFunction(nu, 3.0, MU)
    return Builtin("remark7", {},
                   "remark7: f(z) = 1/(z+1)^2 - 1/(2(z+2)^2); in S_3 with density 2 on (1,2], "
                   "1 on (2,inf)",
                   f, prov.value, prov, {"im_formula": remark7_im_formula, "exact_order": 3.0})


def remark8(alpha=2.0, m=3.0):
    """f_m(z) = int_1^m dt/(z+t)^alpha (exact order alpha); the m -> inf limit has order alpha-1."""
    alpha = float(alpha)
    m = float(m)
    if alpha <= 1.0 or m <= 1.0:
        raise ValueError("remark8 needs alpha > 1 and m > 1")
    f = StieltjesFunction(Measure(pieces=[constant_piece(1.0, m)]), alpha, MU)

    def closed(z):
        z = complex(z)
        return (_cpow(z + 1.0, 1.0 - alpha) - _cpow(z + m, 1.0 - alpha)) / (alpha - 1.0)

    limit = example2(alpha)
    return Builtin("remark8", {"alpha": alpha, "m": m},
                   "remark8: f_m(z) = [(z+1)^(1-alpha) - (z+m)^(1-alpha)]/(alpha-1), "
                   "limit 1/[(alpha-1)(z+1)^(alpha-1)]",
                   f, closed,
                   PoleSum([(1.0 / (alpha - 1.0), 1.0, alpha - 1.0), (-1.0 / (alpha - 1.0), m, alpha - 1.0)]),
                   {"limit": limit, "exact_order": alpha, "limit_exact_order": alpha - 1.0})


BUILTINS = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "remark7": remark7,
    "remark8": remark8,
}

_CALL = re.compile(r"^\s*([a-z0-9_]+)\s*(?:\(([^()]*)\))?\s*$")


def parse_builtin(text):
    """Split ``name`` or ``name(1.5, 2)`` into (name, [floats])."""
    mt = _CALL.match(text)
    if not mt:
        raise ValueError("malformed builtin name %r" % text)
    name = mt.group(1)
    if name not in BUILTINS:
        raise ValueError("unknown builtin %r (known: %s)" % (name, ", ".join(sorted(BUILTINS))))
    args = []
    if mt.group(2) and mt.group(2).strip():
        for part in mt.group(2).split(","):
            try:
                args.append(float(part))
            except ValueError:
                raise ValueError("builtin argument %r is not a number" % part.strip())
    return name, args


def get_builtin(name, alpha=None):
    """Resolve a builtin such as ``example1(2)``; ``alpha`` fills the order of
    example1/2 and remark8 when no arguments are given."""
    name, args = parse_builtin(name)
    if not args and alpha is not None and name in ("example1", "example2", "remark8"):
        args = [alpha]
    return BUILTINS[name](*args)
