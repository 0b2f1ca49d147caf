"""Acceptance checks, shared by the test suite and ``stieltjes reproduce``.

Each check returns a :class:`CheckResult`; the checks use only the package
itself plus closed forms, so they can run wherever the package is installed.
"""

import math
import time
from collections import namedtuple

import numpy as np

from . import builtins as bi
from .criteria import PoleSum, remark7_function, sector_test, sokal_test
from .fractional import (function_transition_down, function_transition_up, kober_right,
                         kober_right_invert, lah_number, rl_left, rl_left_invert)
from .measure import (INF, DensityPiece, Measure, PowerTerm, constant_piece, distribution,
                      involution, measures_equal, membership_integral, power_piece)
from .order import (BETA_EXACT, NON_DECREASING, compact_support_shortcut, estimate_exact_order,
                    monotonicity_test, phi, ratio_limit_test)
from .quadrature import quad
from .specfun import gamma_fn, gauss_2f1
from .transform import (MU, MeasureDerivatives, StieltjesFunction, eval_real, eval_transform,
                        laplace_factorization_eval, modulus_bound)

CheckResult = namedtuple("CheckResult", ["number", "name", "passed", "detail", "seconds"])


def corpus():
    """Named test measures; each entry is (name, measure)."""
    return [
        ("delta1", Measure(atoms=[(1.0, 1.0)])),
        ("unit(0,1)", Measure(pieces=[constant_piece(0.0, 1.0)])),
        ("unit(1,inf)", Measure(pieces=[constant_piece(1.0, INF)])),
        ("delta2+unit(1,3)", Measure(atoms=[(2.0, 1.0)], pieces=[constant_piece(1.0, 3.0)])),
        ("mixed", Measure(0.5, 0.3, [(2.0, 1.0)],
                          [constant_piece(1.0, 3.0, 2.0), power_piece(3.0, INF, 1.0, -2.5)])),
        ("power(0,2)", Measure(pieces=[power_piece(0.0, 2.0, 1.0, 0.5, -0.5)])),
        ("muinf+delta1", Measure(0.0, 1.0, [(1.0, 0.5)])),
    ]


def _corpus_at(alpha):
    return [(n, m) for n, m in corpus() if membership_integral(m, alpha) < INF]


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def check_kernel_identity():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for i in range(20):
        alpha = rng.uniform(0.2, 3.0)
        beta = alpha + rng.uniform(0.1, 2.5)
        u = rng.uniform(0.0, 5.0)
        if i % 2:
            z = complex(rng.uniform(-3.0, 3.0), rng.uniform(0.2, 3.0))
        else:
            z = complex(rng.uniform(0.1, 5.0), 0.0)
        zz = z if z.imag else z.real
        k = gamma_fn(beta) / (gamma_fn(alpha) * gamma_fn(beta - alpha))
        res = quad(lambda t: np.exp(-beta * np.log(zz + u + t + 0j)) if z.imag else (zz + u + t) ** (-beta),
                   0.0, INF, la=beta - alpha - 1.0, tail_decay=alpha + 1.0, scale=max(1.0, abs(z + u)),
                   rel_tol=1e-12, complex_result=bool(z.imag))
        lhs = np.exp(-alpha * np.log(z + u)) if z.imag else (z.real + u) ** (-alpha)
        worst = max(worst, abs(k * res.value - lhs) / abs(lhs))
    return worst <= 1e-8, "max relative error %.2e over 20 draws" % worst


def check_example1():
    worst_f = 0.0
    zs = [0.1, 0.5, 1.0, 2.0, 10.0, 1 + 1j, -1 + 0.5j, 0.3 - 2j, 5j, -4 + 1j]
    for alpha in (1.5, 2.0, 3.0):
        b = bi.example1(alpha)
        for z in zs:
            worst_f = max(worst_f, abs(b.function(z) - b.closed_form(z)) / abs(b.closed_form(z)))
    b = bi.example1(2.0)
    worst_p = 0.0
    for eps in (0.25, 0.5, 0.75):
        for y in np.geomspace(0.01, 100.0, 25):
            worst_p = max(worst_p, abs(phi(b.function.measure, eps, y) - b.extra["phi_closed"](y, eps)))
    short = compact_support_shortcut(b.function.measure)
    ok = worst_f <= 1e-9 and worst_p <= 1e-8 and short == BETA_EXACT
    return ok, "eval err %.1e, Phi err %.1e, shortcut %s" % (worst_f, worst_p, short)


def check_example2():
    b = bi.example2(2.0)
    mu = b.function.measure
    worst = 0.0
    for eps in (0.25, 0.5, 0.75):
        for y in np.geomspace(0.01, 100.0, 25):
            worst = max(worst, abs(phi(mu, eps, y) - b.extra["phi_closed"](y, eps)))
    mv = monotonicity_test(mu, 0.5)
    est = estimate_exact_order(b.function, tol=0.05)
    ok = worst <= 1e-8 and mv.verdict == NON_DECREASING and 1.0 in est and est.hi - est.lo <= 0.05
    return ok, "Phi err %.1e, %s, interval [%.4f, %.4f]" % (worst, mv.verdict, est.lo, est.hi)


def check_example3():
    t0 = time.time()
    b = bi.example3(0.5, 1.0, 2.0)
    mu = b.function.measure
    rt = ratio_limit_test(mu, 0.5, np.geomspace(10.0, 1e4, 10))
    top = rt.ratios[-1]
    target = 2.0 ** -0.5
    worst = 0.0
    for z in (0.1, 0.5, 1.0, 3.0, 10.0):
        e = b.extra["euler"](z)
        worst = max(worst, _rel(e, gauss_2f1(0.5, 1.0, 2.0, -z)), _rel(eval_real(b.function, z), e))
    dt = time.time() - t0
    ok = _rel(top, target) <= 0.02 and worst <= 1e-8 and dt <= 60.0
    return ok, "ratio at 1e4 %.5f (target %.5f), Euler err %.1e, %.1fs" % (top, target, worst, dt)


def check_membership_ratio():
    alpha = 1.5
    worst = 0.0
    count = 0
    for name, mu in _corpus_at(alpha)[:6]:
        for eta in (0.3, 0.7):
            k = gamma_fn(alpha) / gamma_fn(alpha + eta)
            nu = rl_left(mu, eta)
            lhs = membership_integral(nu, alpha + eta)
            rhs = k * membership_integral(mu, alpha)
            worst = max(worst, _rel(lhs, rhs))
            tau = kober_right(mu, alpha, eta)
            inner = mu.replace(atom_zero=0.0)
            lhs = membership_integral(tau.replace(atom_zero=0.0), alpha + eta)
            rhs = k * (membership_integral(inner, alpha) + mu.atom_infinity)
            worst = max(worst, _rel(lhs, rhs))
            count += 1
    return worst <= 1e-6, "max relative error %.2e over %d measures x 2 orders x 2 operators" % (worst, count // 2)


def _grid_away(mu, n=64):
    ys = np.geomspace(0.1, 10.0, n)
    keep = np.ones(n, dtype=bool)
    for u, _ in mu.atoms:
        keep &= np.abs(ys - u) > 0.05
    return ys[keep]


def check_inversions():
    worst = 0.0
    members = [m for n, m in corpus() if n in ("delta1", "unit(0,1)", "delta2+unit(1,3)", "mixed")]
    alpha = 1.5
    for eta in (0.3, 0.5, 0.9):
        for mu in members:
            ys = _grid_away(mu)
            truth = np.array([distribution(mu, y) for y in ys])
            F = rl_left_invert(rl_left(mu, eta), eta)
            worst = max(worst, float(np.max(np.abs(F(ys) - truth))))
            G, _ = kober_right_invert(kober_right(mu, alpha, eta), alpha, eta)
            worst = max(worst, float(np.max(np.abs(G(ys) - truth))))
    src = dict(corpus())["muinf+delta1"]
    _, est = kober_right_invert(kober_right(src, 1.0, 0.5), 1.0, 0.5)
    err_inf = abs(est.value - 1.0)
    ok = worst <= 2e-4 and err_inf <= 1e-3
    return ok, "max F error %.1e, mu_inf error %.1e" % (worst, err_inf)


def check_commutation():
    worst = 0.0
    names = ("delta2+unit(1,3)", "mixed", "power(0,2)")
    grid = np.geomspace(0.02, 50.0, 80)
    ok_atoms = True
    for alpha, eta in ((1.0, 0.5), (1.5, 0.3)):
        for name in names:
            mu = dict(corpus())[name]
            if membership_integral(mu, alpha) == INF:
                continue
            left = involution(rl_left(mu, eta), alpha + eta)
            right = kober_right(involution(mu, alpha), alpha, eta)
            ok_atoms &= abs(left.atom_zero - right.atom_zero) <= 1e-14 and left.atoms == right.atoms
            d1 = left.density(grid)
            d2 = right.density(grid)
            worst = max(worst, float(np.max(np.abs(d1 - d2) / np.maximum(1.0, np.abs(d2)))))
    return worst <= 1e-6 and ok_atoms, "max density error %.1e" % worst


def check_lah():
    ok = True
    for n in range(1, 11):
        for m in range(1, n + 2):
            a_next = lah_number(n + 1, m)
            # signed numbers: overall sign flip; magnitudes: the recurrence as stated
            ok &= a_next == -((n + m) * lah_number(n, m) + lah_number(n, m - 1))
            ok &= abs(a_next) == (n + m) * abs(lah_number(n, m)) + abs(lah_number(n, m - 1))
    # (-x^2 D)^n x^k = (-1)^n k(k+1)...(k+n-1) x^(k+n), exactly
    for n in range(1, 5):
        for k in range(-3, 9):
            lhs = (-1) ** n * math.prod(k + j for j in range(n))
            rhs = sum(lah_number(n, m) * math.prod(k - j for j in range(m)) for m in range(1, n + 1))
            ok &= lhs == rhs
    return ok, "recurrence n <= 10 and monomial expansion n <= 4"


def check_transitions():
    worst = 0.0
    xs = (0.5, 1.0, 5.0)
    d1 = Measure(atoms=[(1.0, 1.0)])
    f1 = StieltjesFunction(d1, 1.0)
    f2 = StieltjesFunction(d1, 2.0)
    f15 = StieltjesFunction(d1, 1.5)
    down = function_transition_down(lambda t: eval_real(f2, t), 1.0, 2.0, 0.0)
    up = function_transition_up(MeasureDerivatives(f1), 1.0, 1.5, 0.0)
    for x in xs:
        worst = max(worst, abs(down(x) - eval_real(f1, x)), abs(up(x) - eval_real(f15, x)))
    u1 = Measure(pieces=[constant_piece(0.0, 1.0)])
    g1 = StieltjesFunction(u1, 1.0)
    g2 = StieltjesFunction(u1, 2.0)
    down = function_transition_down(lambda t: eval_real(g2, t), 1.0, 2.0, 0.0)
    up = function_transition_up(MeasureDerivatives(g1), 1.0, 2.0, 0.0)
    for x in xs:
        worst = max(worst, abs(down(x) - eval_real(g1, x)), abs(up(x) - eval_real(g2, x)))
    up = function_transition_up(MeasureDerivatives(f1), 1.0, 1.5, 0.0)
    back = function_transition_down(up, 1.0, 1.5, 0.0)
    trip = max(abs(back(x) - eval_real(f1, x)) for x in (0.5, 2.0))
    ok = worst <= 1e-5 and trip <= 1e-4
    return ok, "direct error %.1e, round trip error %.1e" % (worst, trip)


def check_remark7():
    f, prov, im = remark7_function()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        x = rng.uniform(-0.9, 5.0)
        y = rng.uniform(0.05, 5.0)
        worst = max(worst, abs(complex(f(complex(x, y))).imag - im(x, y)))
    sec = sector_test(f, 2.0)
    s2 = sokal_test(prov, 2.0)
    s3 = sokal_test(prov, 3.0)
    s3f = bi.remark7().function
    werr = max(abs(s3f(z) - f(z)) for z in (0.5, 1 + 1j))
    ok = (worst <= 1e-12 and sec.passed and not s2.passed and s3.passed and werr <= 1e-9)
    return ok, "Im err %.1e, sector %s, order-2 witness %s, order 3 %s, S3 err %.1e" % (
        worst, sec.verdict, s2.witness, s3.verdict, werr)


def check_remark8():
    alpha = 2.0
    ok = True
    for m in (2.0, 3.0, 5.0):
        b = bi.remark8(alpha, m)
        ok &= compact_support_shortcut(b.function.measure) == BETA_EXACT
        ok &= alpha in estimate_exact_order(b.function)
    lim = bi.remark8(alpha, 3.0).extra["limit"]
    est = estimate_exact_order(lim.function)
    ok &= (alpha - 1.0) in est
    return ok, "f_m exact at %g; limit interval [%.4f, %.4f]" % (alpha, est.lo, est.hi)


def check_laplace():
    worst = 0.0
    cases = [(Measure(atoms=[(1.0, 1.0)]), 1.0), (Measure(pieces=[constant_piece(0.0, 1.0)]), 2.0),
             (Measure(0.0, 0.3, [(2.0, 1.0)], [constant_piece(1.0, INF)]), 1.5)]
    for mu, alpha in cases:
        f = StieltjesFunction(mu, alpha)
        for z in (0.5, 1.0, 4.0):
            worst = max(worst, _rel(laplace_factorization_eval(f, z), eval_real(f, z)))
    return worst <= 1e-6, "max relative error %.1e" % worst


def check_modulus_bound():
    xs = -np.geomspace(1e-3, 10.0, 10)
    ys = np.concatenate((np.geomspace(0.05, 10.0, 5), -np.geomspace(0.05, 10.0, 5)))
    zs = [complex(x, y) for x in xs for y in ys]
    bad = 0
    n = 0
    for name, mu in corpus():
        for alpha in (0.5, 1.0, 1.5, 3.0):
            if membership_integral(mu, alpha) == INF:
                continue
            f = StieltjesFunction(mu, alpha)
            for z in zs:
                bound, actual = modulus_bound(f, z)
                n += 1
                if actual > bound * (1.0 + 1e-12):
                    bad += 1
    return bad == 0, "%d violations in %d evaluations" % (bad, n)


def check_involution():
    grid = np.geomspace(1e-3, 1e3, 61)
    ok = True
    for alpha in (0.5, 1.0, 1.7, 3.0):
        for name, mu in _corpus_at(alpha):
            back = involution(involution(mu, alpha), alpha)
            ok &= measures_equal(mu, back, grid, tol=1e-10)
    return ok, "N o N = id on the corpus for alpha in {0.5, 1, 1.7, 3}"


CHECKS = [
    (1, "kernel identity", check_kernel_identity),
    (2, "example1", check_example1),
    (3, "example2", check_example2),
    (4, "example3", check_example3),
    (5, "membership ratio", check_membership_ratio),
    (6, "inversion round trips", check_inversions),
    (7, "commutation", check_commutation),
    (8, "Lah numbers", check_lah),
    (9, "order transitions", check_transitions),
    (10, "remark7 suite", check_remark7),
    (11, "remark8 order collapse", check_remark8),
    (12, "Laplace factorization", check_laplace),
    (13, "modulus bound", check_modulus_bound),
    (14, "involution", check_involution),
]

BUILTIN_CHECKS = {
    "example1": (2, 9, 12, 13, 14),
    "example2": (3,),
    "example3": (4,),
    "remark7": (10,),
    "remark8": (11,),
}


def run_check(number):
    for num, name, fn in CHECKS:
        if num == number:
            t0 = time.time()
            try:
                ok, detail = fn()
            except Exception as exc:  # reported, not raised: the table must complete
                ok, detail = False, "error: %s: %s" % (type(exc).__name__, exc)
            return CheckResult(num, name, bool(ok), detail, time.time() - t0)
    raise KeyError("no check numbered %d" % number)


def run(numbers=None):
    numbers = [c[0] for c in CHECKS] if numbers is None else list(numbers)
    return [run_check(n) for n in numbers]


def format_table(results):
    lines = []
    for r in results:
        lines.append("[%s] %2d %-24s %6.2fs  %s" % ("PASS" if r.passed else "FAIL", r.number, r.name,
                                                     r.seconds, r.detail))
    return "\n".join(lines)
