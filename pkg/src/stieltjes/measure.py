"""Finitely presented non-negative measures on the compactified half-line.

A :class:`Measure` holds an atom at 0, an atom at infinity, finitely many
interior atoms and a sorted list of :class:`DensityPiece` objects.  A piece
density is a sum of :class:`PowerTerm` objects

    c * core(u) * u^p * (u - s)^r * (t - u)^q,      s <= a,  t >= b,

on its interval (a, b).  Constants, the power laws c u^p (b-u)^q and all
the images of these under the operators in this package stay inside the
family without a ``core``; a callable ``core`` marks a generic density that
only admits numerical integration.
"""

import json
import math

import numpy as np

from . import specfun
from .quadrature import QuadResult, quad

INF = math.inf


def _fmt(x):
    return "inf" if x == INF else repr(float(x))


class PowerTerm:
    """One summand c core(u) u^p (u-s)^r (t-u)^q of a piece density.

    ``exact`` is False when ``core`` hides a numerical integral; it drives
    tolerance choices downstream.
    """

    __slots__ = ("c", "p", "r", "q", "s", "t", "core", "exact")

    def __init__(self, c, p=0.0, r=0.0, q=0.0, s=0.0, t=INF, core=None, exact=None):
        c = float(c)
        p = float(p)
        r = float(r)
        q = float(q)
        s = float(s)
        t = float(t)
        if s == 0.0:
            p += r
            r = 0.0
        if r == 0.0:
            s = 0.0
        if q == 0.0:
            t = INF
        elif t == INF:
            raise ValueError("a (t-u)^q factor needs a finite t")
        if s < 0.0:
            raise ValueError("left anchor must be >= 0")
        self.c = c
        self.p = p
        self.r = r
        self.q = q
        self.s = s
        self.t = t
        self.core = core
        self.exact = (core is None) if exact is None else bool(exact)

    def __repr__(self):
        parts = ["c=%g" % self.c]
        if self.p:
            parts.append("p=%g" % self.p)
        if self.r:
            parts.append("r=%g, s=%g" % (self.r, self.s))
        if self.q:
            parts.append("q=%g, t=%g" % (self.q, self.t))
        if self.core is not None:
            parts.append("core=%s" % getattr(self.core, "__name__", "fn"))
        return "PowerTerm(%s)" % ", ".join(parts)

    @property
    def is_constant(self):
        return self.core is None and self.p == 0.0 and self.r == 0.0 and self.q == 0.0

    def single_factor(self):
        """(anchor, exponent) when the term is c (u - anchor)^exponent, else None."""
        if self.core is not None or self.q != 0.0:
            return None
        if self.r != 0.0:
            if self.p != 0.0:
                return None
            return self.s, self.r
        return 0.0, self.p

    def value(self, u):
        u = np.asarray(u, dtype=float)
        v = np.full(u.shape, self.c)
        if self.core is not None:
            v = v * self.core(u)
        if self.p != 0.0:
            v = v * u ** self.p
        if self.r != 0.0:
            v = v * (u - self.s) ** self.r
        if self.q != 0.0:
            v = v * (self.t - u) ** self.q
        return v

    def scaled(self, k):
        return PowerTerm(self.c * k, self.p, self.r, self.q, self.s, self.t, self.core, self.exact)

    def involuted(self, alpha):
        # v = 1/u:  u^p (u-s)^r (t-u)^q  ->  s^r t^q v^(-p-r-q) (v-1/t)^q (1/s-v)^r
        c = self.c
        if self.r != 0.0:
            c *= self.s ** self.r
        if self.q != 0.0:
            c *= self.t ** self.q
        p = alpha - 2.0 - self.p - self.r - self.q
        s = 1.0 / self.t if self.q != 0.0 else 0.0
        t = 1.0 / self.s if self.r != 0.0 else INF
        core = None
        if self.core is not None:
            inner = self.core

            def core(v, inner=inner):
                with np.errstate(divide="ignore"):
                    return inner(1.0 / np.asarray(v, dtype=float))
        return PowerTerm(c, p, self.q, self.r, s, t, core, self.exact)

    def to_dict(self):
        if self.core is not None:
            raise ValueError("generic terms have no closed-form serialization")
        d = {"c": self.c}
        if self.p:
            d["p"] = self.p
        if self.r:
            d["r"] = self.r
            d["s"] = self.s
        if self.q:
            d["q"] = self.q
            d["t"] = self.t
        return d


class DensityPiece:
    """A density on the open interval (a, b), b possibly infinite."""

    __slots__ = ("a", "b", "terms")

    def __init__(self, a, b, terms):
        a = float(a)
        b = float(b)
        if not (0.0 <= a < b):
            raise ValueError("piece interval must satisfy 0 <= a < b, got (%r, %r)" % (a, b))
        terms = tuple(terms)
        for tm in terms:
            if tm.r != 0.0 and tm.s > a:
                raise ValueError("term anchor s=%r lies inside (%r, %r)" % (tm.s, a, b))
            if tm.q != 0.0 and tm.t < b:
                raise ValueError("term anchor t=%r lies inside (%r, %r)" % (tm.t, a, b))
        self.a = a
        self.b = b
        self.terms = terms

    def __repr__(self):
        return "DensityPiece((%s, %s), %r)" % (_fmt(self.a), _fmt(self.b), list(self.terms))

    @property
    def exact(self):
        return all(t.exact for t in self.terms)

    @property
    def closed_form(self):
        return all(t.core is None for t in self.terms)

    @property
    def is_constant(self):
        return len(self.terms) == 1 and self.terms[0].is_constant

    def value(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape)
        inside = (u > self.a) & (u < self.b)
        if np.any(inside):
            ui = u[inside]
            acc = np.zeros(ui.shape)
            for tm in self.terms:
                acc = acc + tm.value(ui)
            out[inside] = acc
        return out

    def scaled(self, k):
        return DensityPiece(self.a, self.b, [t.scaled(k) for t in self.terms])

    def sample_points(self, n=9):
        if self.b == INF:
            return self.a + np.geomspace(1e-3, 1e3, n) * max(1.0, self.a)
        return self.a + (self.b - self.a) * (np.arange(1, n + 1) / (n + 1.0))


def constant_piece(a, b, c=1.0):
    return DensityPiece(a, b, [PowerTerm(c)])


def power_piece(a, b, c, p=0.0, q=0.0):
    """c u^p (b - u)^q on (a, b), the JSON "power" form."""
    return DensityPiece(a, b, [PowerTerm(c, p=p, q=q, t=b if q else INF)])


def generic_piece(a, b, fn, exact=False):
    return DensityPiece(a, b, [PowerTerm(1.0, core=fn, exact=exact)])


class Measure:
    """Non-negative measure on [0, inf]: atoms at 0 and inf, atoms, density pieces."""

    __slots__ = ("atom_zero", "atom_infinity", "atoms", "pieces")

    def __init__(self, atom_zero=0.0, atom_infinity=0.0, atoms=(), pieces=(), check=True):
        atom_zero = float(atom_zero)
        atom_infinity = float(atom_infinity)
        if atom_zero < 0.0 or atom_infinity < 0.0:
            raise ValueError("atom masses must be non-negative")
        merged = {}
        for u, m in atoms:
            u = float(u)
            m = float(m)
            if not (0.0 < u < INF):
                raise ValueError("interior atoms need 0 < u < inf, got %r" % u)
            if m < 0.0:
                raise ValueError("atom mass must be non-negative")
            if m > 0.0:
                merged[u] = merged.get(u, 0.0) + m
        pieces = sorted(pieces, key=lambda pc: pc.a)
        for left, right in zip(pieces, pieces[1:]):
            if right.a < left.b:
                raise ValueError("density pieces overlap: %r and %r" % (left, right))
        object.__setattr__(self, "atom_zero", atom_zero)
        object.__setattr__(self, "atom_infinity", atom_infinity)
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))
        object.__setattr__(self, "pieces", tuple(pieces))
        if check:
            for pc in self.pieces:
                if pc.closed_form:
                    v = pc.value(pc.sample_points())
                    scale = max(1.0, float(np.max(np.abs(v))))
                    if np.any(v < -1e-9 * scale):
                        raise ValueError("density of %r is negative somewhere" % (pc,))

    def __setattr__(self, name, value):
        raise AttributeError("Measure is immutable")

    def __repr__(self):
        return "Measure(atom_zero=%g, atom_infinity=%g, atoms=%r, pieces=%r)" % (
            self.atom_zero, self.atom_infinity, list(self.atoms), list(self.pieces))

    @property
    def is_zero(self):
        return (self.atom_zero == 0.0 and self.atom_infinity == 0.0 and not self.atoms
                and not self.pieces)

    @property
    def exact(self):
        return all(pc.exact for pc in self.pieces)

    @property
    def closed_form(self):
        return all(pc.closed_form for pc in self.pieces)

    def support_sup(self):
        """Supremum of the support on [0, inf); inf if unbounded or atom at inf."""
        if self.atom_infinity > 0.0:
            return INF
        s = 0.0
        if self.atoms:
            s = max(s, self.atoms[-1][0])
        if self.pieces:
            s = max(s, self.pieces[-1].b)
        return s

    def breakpoints(self):
        pts = {0.0}
        pts.update(u for u, _ in self.atoms)
        for pc in self.pieces:
            pts.add(pc.a)
            if pc.b < INF:
                pts.add(pc.b)
        return sorted(pts)

    def density(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape)
        for pc in self.pieces:
            out = out + pc.value(u)
        return out

    def scaled(self, k):
        return Measure(self.atom_zero * k, self.atom_infinity * k,
                       [(u, m * k) for u, m in self.atoms],
                       [pc.scaled(k) for pc in self.pieces], check=False)

    def replace(self, **kw):
        args = dict(atom_zero=self.atom_zero, atom_infinity=self.atom_infinity,
                    atoms=self.atoms, pieces=self.pieces)
        args.update(kw)
        return Measure(check=False, **args)

    def to_dict(self):
        return to_dict(self)

    def total_mass(self):
        """Total mass of [0, inf); may be infinite."""
        return distribution(self, INF)


def add_measures(*ms):
    """Sum of measures whose density pieces partition compatibly (merges terms)."""
    atom_zero = sum(m.atom_zero for m in ms)
    atom_inf = sum(m.atom_infinity for m in ms)
    atoms = [a for m in ms for a in m.atoms]
    pieces = [pc for m in ms for pc in m.pieces]
    return Measure(atom_zero, atom_inf, atoms, merge_pieces(pieces), check=False)


def merge_pieces(pieces):
    """Re-partition overlapping pieces so that each output piece sums the terms."""
    if not pieces:
        return []
    cuts = set()
    for pc in pieces:
        cuts.add(pc.a)
        cuts.add(pc.b)
    cuts = sorted(cuts)
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        terms = []
        for pc in pieces:
            if pc.a <= lo and hi <= pc.b:
                terms.extend(pc.terms)
        if terms:
            out.append(DensityPiece(lo, hi, _combine_terms(terms)))
    return out


def _combine_terms(terms):
    keyed = {}
    order = []
    extra = []
    for tm in terms:
        if tm.core is not None:
            extra.append(tm)
            continue
        key = (tm.p, tm.r, tm.s, tm.q, tm.t)
        if key not in keyed:
            keyed[key] = 0.0
            order.append(key)
        keyed[key] += tm.c
    out = []
    for key in order:
        c = keyed[key]
        if c != 0.0:
            p, r, s, q, t = key
            out.append(PowerTerm(c, p, r, q, s, t))
    return out + extra


# ---------------------------------------------------------------- integration

INEXACT_REL_TOL = 1e-9

def _term_quad(term, lo, hi, kernel=None, k_la=0.0, k_lb=0.0, k_decay=0.0,
               rel_tol=1e-12, scale=None, complex_result=False):
    """Integral over (lo, hi) of term(u) kernel(u) (u-lo)^k_la (hi-u)^k_lb.

    The term's own singular factors are declared to the integrator when they
    sit at lo or hi; ``k_decay`` is the kernel's decay exponent at infinity
    (None for decay faster than any power).
    """
    if not term.exact:
        # numeric cores carry inner quadrature noise near 1e-11
        rel_tol = max(rel_tol, INEXACT_REL_TOL)
    la = k_la
    lb = k_lb if hi < INF else 0.0
    own_p = own_r = own_q = False
    if term.r != 0.0 and term.s == lo:
        la += term.r
        own_r = True
    elif term.p != 0.0 and lo == 0.0:
        la += term.p
        own_p = True
    if term.q != 0.0 and term.t == hi:
        lb += term.q
        own_q = True
    if la <= -1.0 or lb <= -1.0:
        # non-integrable endpoint singularity of a non-negative integrand
        return QuadResult(INF, INF, True, 0)
    c = term.c
    tcore = term.core

    def core(u):
        v = np.full(np.shape(u), c, dtype=complex if complex_result else float)
        if tcore is not None:
            v = v * tcore(u)
        if term.p != 0.0 and not own_p:
            v = v * u ** term.p
        if term.r != 0.0 and not own_r:
            v = v * (u - term.s) ** term.r
        if term.q != 0.0 and not own_q:
            v = v * (term.t - u) ** term.q
        if kernel is not None:
            v = v * kernel(u)
        return v

    decay = None
    if hi == INF and k_decay is not None:
        decay = k_decay - term.p - term.r
        if decay <= 1.0:
            return None
    return quad(core, lo, hi, la=la, lb=lb, tail_decay=decay, scale=scale,
                rel_tol=rel_tol, complex_result=complex_result)


def _clip(pc, lo, hi):
    a = max(pc.a, lo)
    b = min(pc.b, hi)
    return (a, b) if a < b else None


def kernel_integral(mu, kernel, lo=0.0, hi=INF, k_la=0.0, k_lb=0.0, k_decay=0.0,
                    include_lo_atom=True, rel_tol=1e-12, scale=None, complex_result=False,
                    closed=None):
    """Integral of kernel(u) (u-lo)^k_la (hi-u)^k_lb against mu on [lo, hi).

    The atom at infinity is never included.  Atoms exactly at ``hi`` are
    excluded and the atom at ``lo`` (including the atom at 0) only when
    ``include_lo_atom``.  ``closed(term, a, b)`` may return a closed-form
    value for a term on a clipped interval, or None to fall back to
    quadrature.  Returns ``(value, error)``; value is inf on divergence.
    """
    def point(u):
        v = kernel(np.array([u]))[0] if kernel is not None else 1.0
        if k_la:
            v *= (u - lo) ** k_la
        if k_lb and hi < INF:
            v *= (hi - u) ** k_lb
        return v

    total = 0j if complex_result else 0.0
    err = 0.0
    if mu.atom_zero and (lo < 0.0 or (lo == 0.0 and include_lo_atom)):
        total += mu.atom_zero * point(0.0)
    for u, m in mu.atoms:
        if (lo < u < hi) or (u == lo and include_lo_atom):
            total += m * point(u)
    for pc in mu.pieces:
        ab = _clip(pc, lo, hi)
        if ab is None:
            continue
        a, b = ab
        ka = k_la if a == lo else 0.0
        kb = k_lb if b == hi else 0.0
        kern = kernel
        if (k_la and a != lo) or (k_lb and b != hi and hi < INF):
            def kern(u, a=a, b=b):
                v = kernel(u) if kernel is not None else np.ones(np.shape(u))
                if k_la and a != lo:
                    v = v * (u - lo) ** k_la
                if k_lb and b != hi and hi < INF:
                    v = v * (hi - u) ** k_lb
                return v
        loose = []
        for tm in pc.terms:
            if closed is not None:
                v = closed(tm, a, b)
                if v is not None and v != INF:
                    total += v
                    continue
            res = _term_quad(tm, a, b, kern, ka, kb, k_decay, rel_tol, scale, complex_result)
            if res is None:
                loose.append(tm)
                continue
            total += res.value
            err += res.error
        if loose:
            res = _joint_tail(loose, a, kern, ka, rel_tol, scale, complex_result)
            if res is None:
                return INF, INF
            total += res[0]
            err += res[1]
    return total, err


def _joint_tail(terms, a, kernel, k_la, rel_tol, scale, complex_result):
    # terms whose tails diverge one by one but may cancel as a sum: integrate
    # each over (a, a+L), then the summed integrand beyond with a measured decay
    L = scale if scale is not None else max(1.0, a)
    x0 = a + L
    total = 0.0
    err = 0.0
    for tm in terms:
        r = _term_quad(tm, a, x0, kernel, k_la, 0.0, None, rel_tol, None, complex_result)
        total += r.value
        err += r.error

    def g(u):
        u = np.asarray(u, dtype=float)
        v = sum(tm.value(u) for tm in terms)
        if kernel is not None:
            v = v * kernel(u)
        if k_la:
            v = v * (u - a) ** k_la
        return v

    T = 1e6 * x0
    g1 = abs(complex(g(np.array([T]))[0]))
    g2 = abs(complex(g(np.array([4.0 * T]))[0]))
    if g1 == 0.0 and g2 == 0.0:
        return total, err
    if g1 == 0.0 or g2 == 0.0:
        return None
    decay = -math.log(g2 / g1) / math.log(4.0)
    if decay <= 1.0 + 1e-6:
        return None
    r = quad(g, x0, INF, tail_decay=decay, scale=L, rel_tol=rel_tol, complex_result=complex_result)
    return total + r.value, err + r.error


def _power_increment(anchor, e, a, b):
    """Integral of (u - anchor)^e over (a, b), b may be inf (returns inf)."""
    if b == INF:
        if e >= -1.0 or a == anchor:
            return INF
        return -(a - anchor) ** (e + 1.0) / (e + 1.0)
    if e == -1.0:
        if a == anchor:
            return INF
        return math.log((b - anchor) / (a - anchor))
    if a == anchor and e < -1.0:
        return INF
    return ((b - anchor) ** (e + 1.0) - (a - anchor) ** (e + 1.0)) / (e + 1.0)


def _closed_mass(tm, a, b):
    sf = tm.single_factor()
    if sf is None:
        return None
    anchor, e = sf
    return tm.c * _power_increment(anchor, e, a, b)


# ------------------------------------------------------------------ operations

def membership_integral(mu, alpha):
    """Integral of (1+t)^(-alpha) against mu over [0, inf); inf if divergent."""
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")

    def kern(u):
        return (1.0 + u) ** (-alpha)

    def closed(tm, a, b):
        if tm.is_constant:
            if b == INF:
                if alpha <= 1.0:
                    return INF
                return tm.c * (1.0 + a) ** (1.0 - alpha) / (alpha - 1.0)
            if alpha == 1.0:
                return tm.c * math.log((1.0 + b) / (1.0 + a))
            return tm.c * ((1.0 + a) ** (1.0 - alpha) - (1.0 + b) ** (1.0 - alpha)) / (alpha - 1.0)
        return None

    v, _ = kernel_integral(mu, kern, k_decay=alpha, closed=closed)
    return v


def distribution(mu, x):
    """Left-continuous F(x) = mu([0, x)) with F(0) = 0; excludes the atom at inf."""
    x = float(x)
    if x <= 0.0:
        return 0.0
    v, _ = kernel_integral(mu, None, 0.0, x, closed=_closed_mass)
    return float(v)


def distribution_array(mu, xs):
    return np.array([distribution(mu, x) for x in np.ravel(xs)]).reshape(np.shape(xs))


def involution(mu, alpha):
    """The measure N_alpha mu: pushforward under t -> 1/t with weight t^(-alpha)."""
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValueError("involution requires alpha > 0")
    atoms = [(1.0 / u, m * u ** (-alpha)) for u, m in mu.atoms]
    pieces = []
    for pc in mu.pieces:
        a = 1.0 / pc.b if pc.b < INF else 0.0
        b = 1.0 / pc.a if pc.a > 0.0 else INF
        pieces.append(DensityPiece(a, b, [t.involuted(alpha) for t in pc.terms]))
    return Measure(mu.atom_infinity, mu.atom_zero, atoms, pieces, check=False)


def moments(rho, k_max):
    """Moments rho_k = integral of t^k d rho, k = 0..k_max (compact support only)."""
    k_max = int(k_max)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if rho.atom_infinity > 0.0 or rho.support_sup() == INF:
        raise ValueError("moments require compact support")
    out = []
    for k in range(k_max + 1):
        def kern(u, k=k):
            return u ** k

        def closed(tm, a, b, k=k):
            sf = tm.single_factor()
            if sf is None or sf[0] != 0.0:
                return None
            return tm.c * _power_increment(0.0, sf[1] + k, a, b)

        v, _ = kernel_integral(rho, kern, closed=closed)
        out.append(float(v))
    return out


def measures_equal(m1, m2, grid=None, tol=1e-10, atom_tol=1e-15):
    """Atoms (including 0 and inf) equal within ``atom_tol`` and densities within
    ``tol`` (relative to max(1, |density|)) on ``grid``.

    The default ``atom_tol`` allows the last-ulp rounding of u^(-alpha).
    """
    def close(x, y):
        return abs(x - y) <= atom_tol * max(1.0, abs(x), abs(y))

    if not close(m1.atom_zero, m2.atom_zero) or not close(m1.atom_infinity, m2.atom_infinity):
        return False
    if len(m1.atoms) != len(m2.atoms):
        return False
    for (u1, w1), (u2, w2) in zip(m1.atoms, m2.atoms):
        if not close(u1, u2) or not close(w1, w2):
            return False
    if grid is None:
        grid = np.geomspace(1e-3, 1e3, 121)
    grid = np.asarray(grid, dtype=float)
    bp = np.array([b for b in m1.breakpoints() + m2.breakpoints()])
    keep = np.array([np.all(np.abs(g - bp) > 1e-9 * max(1.0, g)) for g in grid])
    g = grid[keep]
    d1 = m1.density(g)
    d2 = m2.density(g)
    return bool(np.all(np.abs(d1 - d2) <= tol * np.maximum(1.0, np.abs(d1))))


# ------------------------------------------------------------------------ JSON

def _parse_num(v, where):
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "+inf", "infinity"):
            return INF
        raise ValueError("%s: expected a number or \"inf\", got %r" % (where, v))
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError("%s: expected a number, got %r" % (where, v))
    return float(v)


def _term_from_dict(d, b, where):
    c = _parse_num(d.get("c", 1.0), where + ".c")
    p = _parse_num(d.get("p", 0.0), where + ".p")
    r = _parse_num(d.get("r", 0.0), where + ".r")
    s = _parse_num(d.get("s", 0.0), where + ".s")
    q = _parse_num(d.get("q", 0.0), where + ".q")
    t = _parse_num(d.get("t", b), where + ".t") if q else INF
    return PowerTerm(c, p, r, q, s, t)


def from_dict(d):
    """Build a Measure from the JSON measure format."""
    if not isinstance(d, dict):
        raise ValueError("measure JSON must be an object")
    known = {"atom_zero", "atom_infinity", "atoms", "pieces"}
    unknown = set(d) - known
    if unknown:
        raise ValueError("unknown measure fields: %s" % ", ".join(sorted(unknown)))
    atoms = []
    for i, pair in enumerate(d.get("atoms", [])):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError("atoms[%d]: expected [u, m]" % i)
        atoms.append((_parse_num(pair[0], "atoms[%d][0]" % i), _parse_num(pair[1], "atoms[%d][1]" % i)))
    pieces = []
    for i, pd in enumerate(d.get("pieces", [])):
        where = "pieces[%d]" % i
        iv = pd.get("interval")
        if not isinstance(iv, (list, tuple)) or len(iv) != 2:
            raise ValueError("%s.interval: expected [a, b]" % where)
        a = _parse_num(iv[0], where + ".interval[0]")
        b = _parse_num(iv[1], where + ".interval[1]")
        form = pd.get("form", "constant")
        if form == "constant":
            pieces.append(constant_piece(a, b, _parse_num(pd.get("c", 1.0), where + ".c")))
        elif form == "power":
            pieces.append(DensityPiece(a, b, [_term_from_dict(pd, b, where)]))
        elif form == "sum":
            pieces.append(DensityPiece(a, b, [_term_from_dict(td, b, "%s.terms[%d]" % (where, j))
                                              for j, td in enumerate(pd.get("terms", []))]))
        elif form == "tabulated":
            xs = np.asarray(pd["x"], dtype=float)
            ys = np.asarray(pd["y"], dtype=float)
            if xs.shape != ys.shape or xs.size < 2 or np.any(np.diff(xs) <= 0):
                raise ValueError("%s: tabulated x must be increasing and match y" % where)
            if np.any(ys < 0):
                raise ValueError("%s: tabulated density must be non-negative" % where)

            def tab(u, xs=xs, ys=ys):
                return np.interp(u, xs, ys)
            pieces.append(generic_piece(a, b, tab))
        else:
            raise ValueError("%s.form: unknown form %r" % (where, form))
    return Measure(_parse_num(d.get("atom_zero", 0.0), "atom_zero"),
                   _parse_num(d.get("atom_infinity", 0.0), "atom_infinity"), atoms, pieces)


def _tab_grid(a, b, n=257):
    if b == INF:
        # geometric offsets from a resolve an edge singularity and the tail
        L = max(a, 1.0)
        return a + np.geomspace(1e-8 * L, 1e6 * L, 2 * n)
    # cluster geometrically toward both edges, linear in between
    h = b - a
    g = np.geomspace(1e-9 * h, 0.5 * h, n)
    return np.concatenate((a + g, np.linspace(a, b, n)[1:-1], b - g))


def to_dict(mu, tabulate=True):
    """JSON-ready dict; generic pieces are tabulated (lossy) when ``tabulate``."""
    out = {"atom_zero": mu.atom_zero, "atom_infinity": mu.atom_infinity,
           "atoms": [[u, m] for u, m in mu.atoms], "pieces": []}
    for pc in mu.pieces:
        iv = [pc.a, _fmt(pc.b) if pc.b == INF else pc.b]
        if not pc.closed_form:
            if not tabulate:
                raise ValueError("piece %r has a generic density" % (pc,))
            xs = np.unique(_tab_grid(pc.a, pc.b))
            xs = xs[(xs > pc.a) & (xs < pc.b)] if pc.b < INF else xs[xs > pc.a]
            out["pieces"].append({"interval": iv, "form": "tabulated",
                                  "x": xs.tolist(), "y": pc.value(xs).tolist()})
        elif pc.is_constant:
            out["pieces"].append({"interval": iv, "form": "constant", "c": pc.terms[0].c})
        elif len(pc.terms) == 1:
            d = {"interval": iv, "form": "power"}
            d.update(pc.terms[0].to_dict())
            out["pieces"].append(d)
        else:
            out["pieces"].append({"interval": iv, "form": "sum",
                                  "terms": [t.to_dict() for t in pc.terms]})
    return out


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError("malformed measure JSON at line %d column %d: %s"
                         % (exc.lineno, exc.colno, exc.msg))
    return from_dict(d)


def load(path):
    with open(path) as fh:
        return loads(fh.read())


def dumps(mu, **kw):
    return json.dumps(to_dict(mu), **kw)
