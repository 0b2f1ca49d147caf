"""Exact Stieltjes order: the Phi criterion and an order search built on it.

For a mu-form measure of order beta and 0 < eps < min(beta, 1),

    Phi(y) = int_[0,y) mu(du) (y - u)^(-eps),

and beta exceeds the exact order iff Phi is non-decreasing for some eps.
The same quantity with eps = beta - gamma (any gamma < beta) is, up to the
positive factor Gamma(1-eps), the distribution function of the measure that
would represent f at order gamma; the order search tests that function for
monotonicity.  All verdicts are grid evidence, never proofs.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .fractional import _aitken, frac_value
from .measure import INF
from .specfun import gamma_fn

NON_DECREASING = "non-decreasing on grid"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"

BETA_EXACT = "beta exact (evidence)"
BETA_NOT_EXACT = "beta not exact (evidence)"

MonotonicityVerdict = namedtuple("MonotonicityVerdict", ["verdict", "witness", "samples"])
RatioEstimate = namedtuple("RatioEstimate", ["ladder", "ratios", "estimate", "spread", "conclusion"])


@dataclass
class OrderReport:
    beta_tested: float
    epsilon: float
    phi_samples: List[Tuple[float, float]]
    monotone_verdict: str
    witness: Optional[float] = None
    ratio_estimate: Optional[float] = None
    conclusion: str = INCONCLUSIVE
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "beta_tested": self.beta_tested,
            "epsilon": self.epsilon,
            "phi_samples": [[float(y), float(v)] for y, v in self.phi_samples],
            "monotone_verdict": self.monotone_verdict,
            "witness": self.witness,
            "ratio_estimate": self.ratio_estimate,
            "conclusion": self.conclusion,
            "notes": list(self.notes),
        }


@dataclass
class OrderInterval:
    lo: float
    hi: float
    conclusion: str
    evidence: List[str] = field(default_factory=list)

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def to_dict(self):
        return {"interval": [self.lo, self.hi], "conclusion": self.conclusion,
                "evidence": list(self.evidence)}


def _check_eps(epsilon, beta=None):
    eps = float(epsilon)
    top = 1.0 if beta is None else min(float(beta), 1.0)
    if not 0.0 < eps < top:
        raise ValueError("epsilon must lie in (0, min(beta, 1)) = (0, %g), got %r" % (top, eps))
    return eps


def phi(mu_beta, epsilon, y, beta=None):
    """Phi(y) = int_[0,y) mu(du) (y-u)^(-eps); closed form for atoms and power terms."""
    eps = _check_eps(epsilon, beta)
    y = float(y)
    if y <= 0.0:
        return 0.0
    return gamma_fn(1.0 - eps) * frac_value(mu_beta, y, eps)


def default_grid(mu, n=96):
    """Log-spaced grid around the measure's scale plus points just past each breakpoint."""
    bps = [b for b in mu.breakpoints() if b > 0.0]
    scale = max(bps) if bps else 1.0
    lo = min(bps) if bps else 1.0
    g = set(np.geomspace(1e-3 * lo, 1e4 * scale, n).tolist())
    for b in bps:
        g.update([b * (1.0 + 1e-6), b * 1.01, b * 1.1])
    return np.array(sorted(g))


def _monotone(values, grid, tol_rel):
    v = np.asarray(values, dtype=float)
    for i in range(len(v) - 1):
        tol = tol_rel * (1.0 + max(abs(v[i]), abs(v[i + 1])))
        if v[i + 1] < v[i] - tol:
            return float(grid[i])
    return None


def monotonicity_test(mu_beta, epsilon, grid=None, tol=1e-9):
    """Grid check that Phi never decreases beyond the relative tolerance ``tol``.

    Numeric (quadrature) pieces get a tolerance floor of 1e-7.
    """
    eps = _check_eps(epsilon)
    grid = default_grid(mu_beta) if grid is None else np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    if not mu_beta.exact:
        tol = max(tol, 1e-7)
    try:
        vals = [phi(mu_beta, eps, y) for y in grid]
    except (ValueError, ArithmeticError) as exc:
        return MonotonicityVerdict(INCONCLUSIVE, None, [("error", str(exc))])
    samples = list(zip(grid.tolist(), vals))
    w = _monotone(vals, grid, tol)
    if w is None:
        return MonotonicityVerdict(NON_DECREASING, None, samples)
    return MonotonicityVerdict(VIOLATION, w, samples)


def default_ladder(mu, top=1e4, n=10):
    bps = [b for b in mu.breakpoints() if b > 0.0]
    scale = max(bps) if bps else 1.0
    return np.geomspace(10.0 * scale, top * scale, n)


def ratio_limit_test(mu_beta, epsilon, y_ladder=None):
    """Phi(2y)/Phi(y) along a geometric ladder, extrapolated from its last three terms."""
    eps = _check_eps(epsilon)
    ladder = default_ladder(mu_beta) if y_ladder is None else np.asarray(y_ladder, dtype=float)
    ratios = []
    for y in ladder:
        p1 = phi(mu_beta, eps, y)
        if p1 <= 0.0:
            return RatioEstimate(tuple(ladder), tuple(ratios), None, None, INCONCLUSIVE)
        ratios.append(phi(mu_beta, eps, 2.0 * y) / p1)
    est = _aitken(*ratios[-3:]) if len(ratios) >= 3 else ratios[-1]
    spread = max(abs(ratios[-1] - ratios[-2]), abs(est - ratios[-1])) if len(ratios) >= 2 else INF
    conclusion = BETA_EXACT if est < 1.0 - 3.0 * spread else INCONCLUSIVE
    return RatioEstimate(tuple(ladder.tolist()), tuple(ratios), est, spread, conclusion)


def compact_support_shortcut(mu_beta):
    """``BETA_EXACT`` for a non-zero measure of compact support without atom at infinity."""
    if mu_beta.atom_infinity > 0.0 or mu_beta.support_sup() == INF:
        return None
    if mu_beta.atom_zero == 0.0 and not mu_beta.atoms and not mu_beta.pieces:
        return None
    if mu_beta.atom_zero == 0.0 and not mu_beta.atoms and mu_beta.total_mass() <= 0.0:
        return None
    return BETA_EXACT


def _eps_candidates(beta, epsilon):
    top = min(beta, 1.0)
    if epsilon is not None:
        return [float(epsilon)]
    out = [0.5 * top]
    for e in (0.1, 0.9 * top):
        if 0.0 < e < top and e not in out:
            out.append(e)
    return out


def order_report(f, epsilon=None, grid=None):
    """Phi-criterion evidence on whether the order of ``f`` is exact."""
    g = f.mu_form()
    mu = g.measure
    beta = g.alpha
    notes = []
    short = compact_support_shortcut(mu)
    eps_list = _eps_candidates(beta, epsilon)
    last = None
    for eps in eps_list:
        mv = monotonicity_test(mu, eps, grid)
        last = (eps, mv)
        if mv.verdict == NON_DECREASING:
            notes.append("Phi non-decreasing on grid at eps=%g" % eps)
            if short is not None:
                notes.append("conflict: compact support says beta is exact")
                return OrderReport(beta, eps, mv.samples, mv.verdict, None, None, INCONCLUSIVE, notes)
            return OrderReport(beta, eps, mv.samples, mv.verdict, None, None, BETA_NOT_EXACT, notes)
        if mv.verdict == VIOLATION:
            notes.append("Phi decreases after y=%g at eps=%g" % (mv.witness, eps))
    eps, mv = last
    ratio = None
    try:
        rt = ratio_limit_test(mu, eps)
        ratio = rt.estimate
        if rt.conclusion == BETA_EXACT:
            notes.append("ratio limit %.6g < 1" % ratio)
    except (ValueError, ArithmeticError) as exc:
        notes.append("ratio test failed: %s" % exc)
    if short is not None:
        notes.append("compact support")
        return OrderReport(beta, eps, mv.samples, mv.verdict, mv.witness, ratio, BETA_EXACT, notes)
    if mv.verdict == VIOLATION:
        return OrderReport(beta, eps, mv.samples, mv.verdict, mv.witness, ratio, BETA_EXACT, notes)
    return OrderReport(beta, eps, mv.samples, mv.verdict, mv.witness, ratio, INCONCLUSIVE, notes)


# ------------------------------------------------------------ order search

def _closed_ok(mu):
    return all(tm.core is None and tm.single_factor() is not None
               for pc in mu.pieces for tm in pc.terms)


def member_at(mu_beta, beta, gamma, grid=None, tol=1e-9):
    """Grid evidence that the order-beta function also lies in S_gamma, gamma < beta.

    Returns ``(is_member, witness)``; the witness is a y where the candidate
    distribution function decreases or turns negative.
    """
    eps = float(beta) - float(gamma)
    if eps <= 0.0:
        return True, None
    if eps >= 1.0 and (mu_beta.atoms or mu_beta.atom_zero):
        w = mu_beta.atoms[0][0] if mu_beta.atoms else 0.0
        return False, w
    grid = default_grid(mu_beta) if grid is None else np.asarray(grid, dtype=float)
    if not mu_beta.exact:
        tol = max(tol, 1e-7)
    vals = np.array([frac_value(mu_beta, y, eps) for y in grid])
    scale = 1.0 + float(np.max(np.abs(vals))) if len(vals) else 1.0
    neg = np.nonzero(vals < -tol * scale)[0]
    if len(neg):
        return False, float(grid[neg[0]])
    w = _monotone(vals, grid, tol)
    return w is None, w


def estimate_exact_order(f, alpha_lo=0.0, tol=0.05, grid=None):
    """Bracket the exact order of ``f`` by bisection over the membership evidence.

    Membership in S_gamma is monotone in gamma, so bisection on (alpha_lo, beta]
    is sound given reliable evidence.  Lowering by one unit or more needs the
    closed-form family; otherwise the search is restricted to (beta - 1, beta].
    """
    g = f.mu_form()
    mu = g.measure
    beta = g.alpha
    alpha_lo = float(alpha_lo)
    if alpha_lo < 0.0:
        raise ValueError("alpha_lo must be >= 0")
    evidence = []
    if compact_support_shortcut(mu) is not None:
        evidence.append("compact support: order %g is exact" % beta)
        return OrderInterval(beta, beta, BETA_EXACT, evidence)
    lo = alpha_lo
    if not _closed_ok(mu) and lo < beta - 1.0:
        lo = beta - 1.0
        evidence.append("search restricted to (beta-1, beta]: numeric pieces")
    hi = beta
    lo_witness = None
    # the smallest admissible order strictly above lo, probed first
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= 0.0:
            break
        ok, w = member_at(mu, beta, mid, grid)
        if ok:
            hi = mid
        else:
            lo = mid
            lo_witness = w
    if hi < beta:
        conclusion = BETA_NOT_EXACT
        evidence.append("member at order %g (grid evidence)" % hi)
    else:
        conclusion = BETA_EXACT
    if lo_witness is not None:
        evidence.append("not a member at order %g: candidate measure decreases near y=%g"
                        % (lo, lo_witness))
    if conclusion == BETA_NOT_EXACT:
        try:
            rt = ratio_limit_test(mu, 0.5 * min(beta, 1.0))
            if rt.conclusion == BETA_EXACT:
                evidence.append("conflict: ratio limit %.6g < 1 indicates beta exact" % rt.estimate)
                conclusion = INCONCLUSIVE
        except (ValueError, ArithmeticError):
            pass
    return OrderInterval(lo, hi, conclusion, evidence)


def phi_table(mu_beta, epsilon, grid):
    """(y, Phi(y)) rows for CSV output."""
    return [(float(y), phi(mu_beta, epsilon, y)) for y in grid]
