"""Fractional integrals of measures, their inversions, and order transitions.

rl_left      left-sided Riemann-Liouville integral I+_eta of a measure
kober_right  right-sided Kober-Erdelyi integral K-_{alpha,eta}
             (conjugate to rl_left under the involution:
              N_{alpha+eta} I+_eta = K-_{alpha,eta} N_alpha)

Closed forms are used for atoms and for terms c (u - s)^r (constants and
pure powers included); every other term becomes a numerical density whose
values are computed by singular quadrature on demand, tagged ``exact=False``.
"""

import math
from collections import namedtuple

import numpy as np

from .measure import (INF, DensityPiece, Measure, PowerTerm, _term_quad, distribution,
                      kernel_integral, merge_pieces)
from .quadrature import quad
from .specfun import betainc_array, gamma_fn, gen_inc_beta, rgamma_fn
from .transform import MU, RHO, StieltjesFunction


class FractionalOrder:
    """eta > 0 together with n = floor(eta)."""

    __slots__ = ("eta", "n")

    def __init__(self, eta):
        eta = float(eta)
        if not eta > 0.0:
            raise ValueError("fractional order eta must be positive, got %r" % eta)
        self.eta = eta
        self.n = int(math.floor(eta))

    def __repr__(self):
        return "FractionalOrder(eta=%g, n=%d)" % (self.eta, self.n)


def _order(eta):
    return eta if isinstance(eta, FractionalOrder) else FractionalOrder(eta)


class DistributionFunction:
    """y -> F(y) = mu([0, y)) for a measure known only through a formula."""

    def __init__(self, fn, atom_infinity=0.0, exact=True, note=""):
        self._fn = fn
        self.atom_infinity = atom_infinity
        self.exact = exact
        self.note = note

    def __call__(self, y):
        if np.ndim(y) == 0:
            return float(self._fn(float(y)))
        y = np.asarray(y, dtype=float)
        return np.array([self._fn(float(v)) for v in y.ravel()]).reshape(y.shape)


# ------------------------------------------------------- fractional values

def _vec(fn):
    def wrapped(y):
        y = np.asarray(y, dtype=float)
        return np.array([fn(float(v)) for v in y.ravel()]).reshape(y.shape)
    return wrapped


def _single_frac(c, s, r, a, b, y, eta):
    """(1/G(1+n-eta)) D^n int_a^min(y,b) c (u-s)^r (y-u)^(n-eta) du, n = floor(eta)."""
    if y <= a:
        return 0.0
    d = y - s
    e = r + 1.0 - eta
    rg = rgamma_fn(1.0 - eta)
    if y <= b:
        v = gamma_fn(r + 1.0) * rgamma_fn(r + 2.0 - eta) * d ** e
        if a > s and rg != 0.0:
            v -= rg * d ** e * gen_inc_beta((a - s) / d, r + 1.0, 1.0 - eta)
        return c * v
    if rg == 0.0:
        return 0.0
    hi = gen_inc_beta((b - s) / d, r + 1.0, 1.0 - eta)
    lo = gen_inc_beta((a - s) / d, r + 1.0, 1.0 - eta) if a > s else 0.0
    return c * rg * d ** e * (hi - lo)


def frac_value(mu, y, eta, method="auto", rel_tol=1e-12):
    """(1/Gamma(1+n-eta)) (d/dy)^n int_[0,y) mu(du) (y-u)^(n-eta), n = max(0, floor eta).

    For eta < 1 this is a plain weakly singular integral; for eta >= 1 the
    derivative is taken symbolically, which needs atoms and terms of the
    form c (u - s)^r only.  ``method="quadrature"`` forces quadrature for all
    pieces (eta < 1 only).
    """
    y = float(y)
    eta = float(eta)
    if y <= 0.0:
        return 0.0
    rg = rgamma_fn(1.0 - eta)
    total = 0.0
    if mu.atom_zero:
        total += mu.atom_zero * rg * y ** (-eta)
    for u, m in mu.atoms:
        if u < y:
            total += m * rg * (y - u) ** (-eta)
    for pc in mu.pieces:
        if pc.a >= y:
            continue
        for tm in pc.terms:
            sf = tm.single_factor()
            if sf is not None and method != "quadrature":
                s, r = sf
                if r == 0.0:
                    s = pc.a
                total += _single_frac(tm.c, s, r, pc.a, pc.b, y, eta)
                continue
            if eta >= 1.0:
                raise ValueError("closed-form path unavailable for term %r" % (tm,))
            hi = min(y, pc.b)
            if hi == y:
                res = _term_quad(tm, pc.a, hi, None, 0.0, -eta, rel_tol=rel_tol)
            else:
                res = _term_quad(tm, pc.a, hi, lambda u: (y - u) ** (-eta), rel_tol=rel_tol)
            total += rg * res.value
    return total


def _frac_closed_ok(mu):
    return all(tm.single_factor() is not None for pc in mu.pieces for tm in pc.terms)


# -------------------------------------------------------------- rl_left

def _rl_term_pieces(tm, a, b, eta, rel_tol):
    ge = gamma_fn(eta)
    out = []
    sf = tm.single_factor()
    if sf is not None:
        s, r = sf
        if r == 0.0:
            s = a
        c = tm.c
        lead = c * gamma_fn(r + 1.0) * rgamma_fn(r + 1.0 + eta)
        if s == a:
            out.append(DensityPiece(a, b, [PowerTerm(lead, r=r + eta, s=s)]))
            if b < INF:
                if r == 0.0:
                    k = c * rgamma_fn(eta + 1.0)
                    out.append(DensityPiece(b, INF, [PowerTerm(k, r=eta, s=a),
                                                     PowerTerm(-k, r=eta, s=b)]))
                else:
                    def tailf(y, s=s, r=r, b=b):
                        d = y - s
                        return c / ge * d ** (r + eta) * np.array(
                            [gen_inc_beta(x, r + 1.0, eta) for x in np.ravel((b - s) / d)]).reshape(np.shape(y))
                    out.append(DensityPiece(b, INF, [PowerTerm(1.0, core=tailf, exact=True)]))
            return out
        # anchor strictly left of the piece: subtract the part over (s, a)
        def inner(y, s=s, r=r):
            d = y - s
            x = np.ravel((a - s) / d)
            return c / ge * d ** (r + eta) * np.array(
                [gen_inc_beta(v, r + 1.0, eta) for v in x]).reshape(np.shape(y))
        out.append(DensityPiece(a, b, [PowerTerm(lead, r=r + eta, s=s),
                                       PowerTerm(-1.0, core=inner, exact=True)]))
        if b < INF:
            def tailf2(y, s=s, r=r):
                d = y - s
                xb = np.ravel((b - s) / d)
                xa = np.ravel((a - s) / d)
                vals = np.array([gen_inc_beta(u, r + 1.0, eta) - gen_inc_beta(v, r + 1.0, eta)
                                 for u, v in zip(xb, xa)])
                return c / ge * d ** (r + eta) * vals.reshape(np.shape(y))
            out.append(DensityPiece(b, INF, [PowerTerm(1.0, core=tailf2, exact=True)]))
        return out

    def numeric(y):
        if y <= a:
            return 0.0
        hi = min(y, b)
        if hi == y:
            res = _term_quad(tm, a, hi, None, 0.0, eta - 1.0, rel_tol=rel_tol)
        else:
            res = _term_quad(tm, a, hi, lambda u: (y - u) ** (eta - 1.0), rel_tol=rel_tol)
        return res.value / ge

    ea = _own_exponent(tm, a)
    P = tm.p + tm.r
    if b == INF:
        out.append(_numeric_piece(numeric, a, INF, left=ea + eta, tail=P + eta))
    else:
        qb = tm.q + eta if (tm.q != 0.0 and tm.t == b) else 0.0
        out.append(_numeric_piece(numeric, a, b, left=ea + eta, right=qb))
        out.append(_numeric_piece(numeric, b, INF, left=qb, tail=eta - 1.0))
    return out


def rl_left(mu, eta, rel_tol=1e-11):
    """Riemann-Liouville left integral I+_eta of a measure.

    The result is absolutely continuous on (0, inf) with no atom at 0 and
    keeps the atom at infinity.
    """
    eta = _order(eta).eta
    ge = gamma_fn(eta)
    pieces = []
    if mu.atom_zero:
        pieces.append(DensityPiece(0.0, INF, [PowerTerm(mu.atom_zero / ge, p=eta - 1.0)]))
    for u, m in mu.atoms:
        pieces.append(DensityPiece(u, INF, [PowerTerm(m / ge, r=eta - 1.0, s=u)]))
    for pc in mu.pieces:
        for tm in pc.terms:
            pieces.extend(_rl_term_pieces(tm, pc.a, pc.b, eta, rel_tol))
    return Measure(0.0, mu.atom_infinity, [], merge_pieces(pieces), check=False)


def rl_left_invert(nu, eta, method="auto"):
    """Recover F_mu from nu = I+_eta mu for 0 < eta < 1:
    F(y) = (1/Gamma(1-eta)) int_[0,y) nu(du) (y-u)^(-eta)."""
    eta = _order(eta).eta
    if eta >= 1.0:
        raise ValueError("n-fold differentiation path requires closed-form measures; "
                         "use rl_left_invert_closed")
    exact = nu.closed_form and _frac_closed_ok(nu) and method != "quadrature"
    return DistributionFunction(lambda y: frac_value(nu, y, eta, method=method),
                                nu.atom_infinity, exact=exact)


def rl_left_invert_closed(nu, eta):
    """Symbolic inversion for any eta > 0 on atoms and c (u-s)^r terms."""
    eta = _order(eta).eta
    if not (nu.closed_form and _frac_closed_ok(nu)):
        raise ValueError("closed-form path unavailable: nu has generic or multi-factor terms")
    return DistributionFunction(lambda y: frac_value(nu, y, eta), nu.atom_infinity, exact=True)


# ----------------------------------------------------------- kober_right

def _kober_power(c, p, a, b, alpha, eta):
    """Pieces for c u^p on (a, b):  (c/G(eta)) y^p [IB(min(1,y/a)) - IB(y/b)],
    IB(x) the (continued) incomplete Beta with parameters (alpha-1-p, eta)."""
    A = alpha - 1.0 - p
    if A <= 0.0 and A == math.floor(A):
        return None
    if b == INF and A <= 0.0:
        raise ValueError("term u^%g is not integrable against the Kober kernel" % p)
    k = c * rgamma_fn(eta)
    full = gen_inc_beta(1.0, A, eta)

    def ib(x):
        return np.array([gen_inc_beta(v, A, eta) for v in np.ravel(x)])

    out = []
    if b == INF:
        out.append(DensityPiece(a, INF, [PowerTerm(k * full, p=p)]))
    else:
        def upper(y):
            y = np.asarray(y, dtype=float)
            return k * y ** p * (full - ib(y / b).reshape(y.shape))
        out.append(DensityPiece(a, b, [PowerTerm(1.0, core=upper, exact=True)]))
    if a > 0.0:
        def lower(y):
            y = np.asarray(y, dtype=float)
            v = ib(y / a)
            if b < INF:
                v = v - ib(y / b)
            return k * y ** p * v.reshape(y.shape)
        out.append(DensityPiece(0.0, a, [PowerTerm(1.0, core=lower, exact=True)]))
    return out


def kober_right(mu, alpha, eta, rel_tol=1e-11):
    """Kober-Erdelyi right integral K-_{alpha,eta} of a measure.

    tau(dy) = mu({0}) delta_0 + (1/Gamma(eta)) y^(alpha-1)
              [int_(y,inf) mu(du) u^(1-eta-alpha) (u-y)^(eta-1) + mu_inf] dy.
    The atom at 0 is copied and the result has no atom at infinity.
    """
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValueError("kober_right requires alpha > 0")
    eta = _order(eta).eta
    ge = gamma_fn(eta)
    pieces = []
    if mu.atom_infinity:
        pieces.append(DensityPiece(0.0, INF, [PowerTerm(mu.atom_infinity / ge, p=alpha - 1.0)]))
    for u, m in mu.atoms:
        pieces.append(DensityPiece(0.0, u, [PowerTerm(m * u ** (1.0 - eta - alpha) / ge,
                                                      p=alpha - 1.0, q=eta - 1.0, t=u)]))
    for pc in mu.pieces:
        for tm in pc.terms:
            sf = tm.single_factor()
            if sf is not None and sf[0] == 0.0:
                got = _kober_power(tm.c, sf[1], pc.a, pc.b, alpha, eta)
                if got is not None:
                    pieces.extend(got)
                    continue
            pieces.extend(_kober_numeric(tm, pc.a, pc.b, alpha, eta, rel_tol))
    return Measure(mu.atom_zero, 0.0, [], merge_pieces(pieces), check=False)


def _kober_numeric(tm, a, b, alpha, eta, rel_tol):
    ge = gamma_fn(eta)

    def kern_factor(u):
        return u ** (1.0 - eta - alpha)

    def numeric(y):
        if y >= b:
            return 0.0
        if y > a:
            res = _term_quad(tm, y, b, kern_factor, eta - 1.0, 0.0, alpha, rel_tol=rel_tol,
                             scale=max(1.0, y))
        else:
            res = _term_quad(tm, a, b, lambda u: kern_factor(u) * (u - y) ** (eta - 1.0),
                             0.0, 0.0, alpha, rel_tol=rel_tol, scale=max(1.0, a))
        if res is None:
            raise ValueError("Kober integral diverges for term %r" % (tm,))
        return y ** (alpha - 1.0) * res.value / ge

    ea = _own_exponent(tm, a)
    out = []
    if a > 0.0:
        out.append(_numeric_piece(numeric, 0.0, a, left=alpha - 1.0,
                                  right=ea + eta if ea + eta < 0.0 else 0.0))
    lo = a
    if a == 0.0 and b == INF:
        out.append(_numeric_piece(numeric, 0.0, 1.0, left=alpha - 1.0))
        lo = 1.0
    if b == INF:
        out.append(_numeric_piece(numeric, lo, INF, left=alpha - 1.0 if lo == 0.0 else 0.0,
                                  tail=tm.p + tm.r))
    else:
        qb = tm.q + eta if (tm.q != 0.0 and tm.t == b) else eta
        out.append(_numeric_piece(numeric, lo, b, left=alpha - 1.0 if lo == 0.0 else 0.0, right=qb))
    return out


def _own_exponent(tm, a):
    if tm.r != 0.0 and tm.s == a:
        return tm.r
    if a == 0.0:
        return tm.p
    return 0.0


def _numeric_piece(fn, a, b, left=0.0, right=0.0, tail=None):
    """A numeric density on (a, b) carrying its known local behaviour as
    explicit power factors, so that quadrature sees the singularities as
    declared endpoint weights: (y-a)^left near a, (b-y)^right near a finite b,
    y^tail at infinity."""
    if a == 0.0:
        p, r, s = left, 0.0, 0.0
    else:
        p, r, s = 0.0, left, a
    if b == INF and tail is not None:
        p = tail - r
    q, t = (right, b) if (b < INF and right != 0.0) else (0.0, INF)
    term = PowerTerm(1.0, p, r, q, s, t)

    def core(y, term=term):
        y = np.asarray(y, dtype=float)
        w = term.value(y)
        v = np.array([fn(float(x)) for x in y.ravel()]).reshape(y.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(w != 0.0, v / w, 0.0)

    return DensityPiece(a, b, [PowerTerm(1.0, p, r, q, s, t, core=core, exact=False)])


MuInfinityEstimate = namedtuple("MuInfinityEstimate", ["value", "ladder", "estimates", "converged"])


def _aitken(e1, e2, e3):
    den = (e3 - e2) - (e2 - e1)
    if den == 0.0 or not math.isfinite(den):
        return e3
    v = e3 - (e3 - e2) ** 2 / den
    # keep the raw value when the extrapolation jumps outside the data range
    lo = min(e1, e2, e3)
    hi = max(e1, e2, e3)
    span = hi - lo
    if not (lo - span <= v <= hi + span):
        return e3
    return v


def mu_infinity_limit(tau, alpha, eta, ladder=(1e2, 1e3, 1e4, 1e5)):
    """mu_inf = alpha Gamma(eta) lim y^(-alpha) F_tau(y), evaluated on a ladder
    with the atom of tau at 0 left out.

    Declared non-convergent when the last two estimates differ by more than
    10% (of max(|estimate|, 1e-2), so that a vanishing limit is not flagged).
    """
    eta = _order(eta).eta
    k = alpha * gamma_fn(eta)
    # the atom at 0 drops out in the limit; leaving it out sharpens the ladder
    inner = tau.replace(atom_zero=0.0)
    est = [k * y ** (-alpha) * distribution(inner, y) for y in ladder]
    value = _aitken(*est[-3:]) if len(est) >= 3 else est[-1]
    diff = abs(est[-1] - est[-2]) if len(est) >= 2 else 0.0
    converged = diff <= 0.1 * max(abs(est[-1]), 1e-2)
    return MuInfinityEstimate(value, tuple(ladder), tuple(est), converged)


def kober_right_invert(tau, alpha, eta, rel_tol=1e-10):
    """Recover (F_mu, mu_inf) from tau = K-_{alpha,eta} mu for 0 < eta < 1.

    F(y) = tau({0}) + (1/Gamma(1-eta)) int_(0,inf) tau(ds) K(y, s) with
    K = alpha B_{min(1,y/s)}(alpha+eta, 1-eta) - [s > y] (y/s)^(alpha+eta) (1-y/s)^(-eta),
    the n = 0 case after exchanging the order of integration.
    Returns ``(DistributionFunction, MuInfinityEstimate)``.
    """
    alpha = float(alpha)
    eta = _order(eta).eta
    if eta >= 1.0:
        raise ValueError("kober_right_invert handles 0 < eta < 1 only")
    rg = rgamma_fn(1.0 - eta)
    a1 = alpha + eta
    b1 = 1.0 - eta
    full = gamma_fn(a1) * gamma_fn(b1) * rgamma_fn(a1 + b1)
    inner = tau.replace(atom_zero=0.0, atom_infinity=0.0)

    def F(y):
        if y <= 0.0:
            return 0.0
        below = distribution(inner, y)

        def kern(s, y=y):
            s = np.asarray(s, dtype=float)
            x = y / s
            return alpha * betainc_array(x, a1, b1) * (s - y) ** eta - x ** a1 * s ** eta

        above, _ = kernel_integral(inner, kern, lo=y, hi=INF, k_la=-eta, k_decay=a1,
                                   include_lo_atom=False, rel_tol=rel_tol, scale=max(1.0, y))
        return tau.atom_zero + rg * (alpha * full * below + float(above))

    est = mu_infinity_limit(tau, alpha, eta)
    return DistributionFunction(F, est.value, exact=False), est


# ------------------------------------------------------------------- Lah

class LahCoefficients:
    """Coefficients of (-x^2 D)^n f = sum_m a(n,m) x^(n+m) f^(m)."""

    def __init__(self, n, coefficients):
        self.n = n
        self.coefficients = coefficients

    def __getitem__(self, m):
        return self.coefficients.get(m, 0)

    def __repr__(self):
        return "LahCoefficients(n=%d, %r)" % (self.n, self.coefficients)


def lah_number(n, m):
    """Signed Lah number a(n,m) = (-1)^n n!/m! C(n-1, m-1) (exact integer)."""
    if n < 1 or m < 1 or m > n:
        return 0
    return (-1) ** n * (math.factorial(n) // math.factorial(m)) * math.comb(n - 1, m - 1)


def lah_expand(n):
    n = int(n)
    if n < 1:
        raise ValueError("lah_expand needs n >= 1")
    coeffs = {m: lah_number(n, m) for m in range(1, n + 1)}
    # the signed numbers obey a(n+1,m) = -[(n+m) a(n,m) + a(n,m-1)];
    # their magnitudes obey the same recurrence without the sign
    if n > 1:
        for m in range(1, n + 1):
            prev = -((n - 1 + m) * lah_number(n - 1, m) + lah_number(n - 1, m - 1))
            if prev != coeffs[m]:
                raise ArithmeticError("Lah recurrence failed at (%d, %d)" % (n, m))
    return LahCoefficients(n, coeffs)


# -------------------------------------------------------- order raising

def order_raise_mu(f, beta):
    """Represent f in S_alpha (mu-form) at order beta > alpha.

    mu_beta = Gamma(beta)/Gamma(alpha) I+_{beta-alpha} mu_alpha, with mu_inf kept.
    """
    if f.representation != MU:
        raise ValueError("order_raise_mu expects a mu-form function")
    beta = float(beta)
    alpha = f.alpha
    if not beta > alpha:
        raise ValueError("order_raise_mu needs beta > alpha")
    mu = f.measure
    raised = rl_left(mu.replace(atom_infinity=0.0), beta - alpha)
    k = math.exp(math.lgamma(beta) - math.lgamma(alpha))
    out = raised.scaled(k).replace(atom_infinity=mu.atom_infinity)
    return StieltjesFunction(out, beta, MU, check=False)


def order_raise_rho(f, beta):
    """Represent f in S_alpha (rho-form) at order beta > alpha.

    rho_beta = Gamma(beta)/Gamma(alpha) [K-_{alpha,beta-alpha} rho_alpha without rho_0],
    with rho_0 kept.
    """
    if f.representation != RHO:
        raise ValueError("order_raise_rho expects a rho-form function")
    beta = float(beta)
    alpha = f.alpha
    if not beta > alpha:
        raise ValueError("order_raise_rho needs beta > alpha")
    rho = f.measure
    raised = kober_right(rho.replace(atom_zero=0.0), alpha, beta - alpha)
    k = math.exp(math.lgamma(beta) - math.lgamma(alpha))
    out = raised.scaled(k).replace(atom_zero=rho.atom_zero)
    return StieltjesFunction(out, beta, RHO, check=False)


def rho_infinity_from_raised(rho_beta, alpha, beta, ladder=(1e2, 1e3, 1e4, 1e5)):
    """rho_alpha({inf}) = Gamma(beta-alpha) Gamma(alpha+1)/Gamma(beta) lim y^(-alpha) F_{rho_beta}(y)."""
    k = gamma_fn(beta - alpha) * gamma_fn(alpha + 1.0) / gamma_fn(beta)
    inner = rho_beta.replace(atom_zero=0.0)
    est = [k * y ** (-alpha) * distribution(inner, y) for y in ladder]
    return MuInfinityEstimate(_aitken(*est[-3:]), tuple(ladder), tuple(est),
                              abs(est[-1] - est[-2]) <= 0.1 * max(abs(est[-1]), 1e-2))


# ---------------------------------------------------- function transitions

def _decay_exponent(g, x):
    T = 1e5 * max(1.0, x)
    g1 = abs(g(T))
    g2 = abs(g(4.0 * T))
    if g1 == 0.0 or g2 == 0.0:
        return None
    return -math.log(g2 / g1) / math.log(4.0)


def _scalar(fn):
    def wrapped(t):
        t = np.asarray(t, dtype=float)
        return np.array([float(fn(float(v))) for v in t.ravel()]).reshape(t.shape)
    return wrapped


def function_transition_down(f_beta, alpha, beta, mu_infinity, rel_tol=1e-10):
    """Evaluator for f_alpha from f_beta:
    f_alpha(x) = G(beta)/(G(alpha)G(beta-alpha)) int_x^inf (f_beta - mu_inf)(t-x)^(beta-alpha-1) dt + mu_inf."""
    alpha = float(alpha)
    beta = float(beta)
    if not 0.0 < alpha < beta:
        raise ValueError("function_transition_down needs 0 < alpha < beta")
    k = gamma_fn(beta) * rgamma_fn(alpha) * rgamma_fn(beta - alpha)
    g = _scalar(lambda t: f_beta(t) - mu_infinity)
    ex = beta - alpha - 1.0

    def f_alpha(x):
        x = float(x)
        if x <= 0.0:
            raise ValueError("transition evaluated on x > 0 only")
        dec = _decay_exponent(lambda t: g(np.array([t]))[0], x)
        if dec is None:
            return mu_infinity
        gamma_tail = dec - ex
        if gamma_tail <= 1.0 + 1e-3:
            raise ValueError("non-convergent tail: integrand decays like t^-%.3g" % gamma_tail)
        res = quad(g, x, INF, la=ex, tail_decay=gamma_tail, scale=max(1.0, x), rel_tol=rel_tol)
        return k * res.value + mu_infinity

    return f_alpha


def function_transition_up(f_alpha_derivatives, alpha, beta, mu_infinity, rel_tol=1e-10):
    """Evaluator for f_beta from the derivatives of f_alpha (Caputo form):
    f_beta(x) = G(alpha)(-1)^n/(G(beta)G(n-beta+alpha)) int_x^inf f_alpha^(n)(t)(t-x)^(n-1-beta+alpha) dt + mu_inf,
    n = floor(beta - alpha) + 1."""
    if f_alpha_derivatives is None:
        raise ValueError("function_transition_up needs a derivative provider")
    alpha = float(alpha)
    beta = float(beta)
    if not 0.0 < alpha < beta:
        raise ValueError("function_transition_up needs 0 < alpha < beta")
    n = int(math.floor(beta - alpha)) + 1
    k = gamma_fn(alpha) * (-1.0) ** n * rgamma_fn(beta) * rgamma_fn(n - beta + alpha)
    ex = n - 1.0 - beta + alpha

    def g(t):
        return np.asarray(f_alpha_derivatives(n, np.asarray(t, dtype=float)), dtype=float)

    def f_beta(x):
        x = float(x)
        if x <= 0.0:
            raise ValueError("transition evaluated on x > 0 only")
        dec = _decay_exponent(lambda t: g(np.array([t]))[0], x)
        if dec is None:
            return mu_infinity
        gamma_tail = dec - ex
        if gamma_tail <= 1.0 + 1e-3:
            raise ValueError("non-convergent tail: integrand decays like t^-%.3g" % gamma_tail)
        res = quad(g, x, INF, la=ex, tail_decay=gamma_tail, scale=max(1.0, x), rel_tol=rel_tol)
        return k * res.value + mu_infinity

    return f_beta
