import math

import numpy as np
import pytest
import scipy.integrate as si
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes.fractional import (FractionalOrder, frac_value, function_transition_down,
                                  function_transition_up, kober_right, kober_right_invert,
                                  lah_expand, lah_number, mu_infinity_limit, order_raise_mu,
                                  order_raise_rho, rho_infinity_from_raised, rl_left,
                                  rl_left_invert, rl_left_invert_closed)
from stieltjes.measure import (INF, DensityPiece, Measure, PowerTerm, constant_piece, distribution,
                               involution, membership_integral)
from stieltjes.specfun import gamma_fn
from stieltjes.transform import MU, RHO, MeasureDerivatives, StieltjesFunction, eval_transform

DELTA1 = Measure(atoms=[(1.0, 1.0)])
DELTA2 = Measure(atoms=[(2.0, 1.0)])
UNIT01 = Measure(pieces=[constant_piece(0.0, 1.0)])
MIXED = Measure(atoms=[(2.0, 1.0)], pieces=[constant_piece(1.0, 3.0)])


def _ratio_sides(out, mu, alpha, eta):
    lhs = membership_integral(out, alpha + eta)
    rhs = gamma_fn(alpha) / gamma_fn(alpha + eta) * membership_integral(mu, alpha)
    return lhs, rhs


def test_fractional_order():
    assert FractionalOrder(1.5).n == 1
    assert FractionalOrder(0.3).n == 0
    with pytest.raises(ValueError):
        FractionalOrder(0.0)


# ------------------------------------------------------------ rl_left

def test_rl_left_point_mass_density():
    nu = rl_left(Measure(atoms=[(1.5, 2.0)]), 0.4)
    ys = np.array([1.6, 2.0, 5.0, 40.0])
    assert np.allclose(nu.density(ys), 2.0 * (ys - 1.5) ** -0.6 / gamma_fn(0.4), rtol=1e-14)
    assert nu.density(1.2) == 0.0


def test_rl_left_density_against_scipy():
    mu = Measure(pieces=[constant_piece(1.0, 3.0, 2.0), DensityPiece(3.0, INF, [PowerTerm(1.0, p=-2.5)])])
    eta = 0.6
    nu = rl_left(mu, eta)
    for y in (1.5, 3.0 + 1e-3, 4.0, 50.0):
        ref = si.quad(lambda u: 2.0 * (y - u) ** (eta - 1), 1.0, min(y, 3.0))[0]
        if y > 3.0:
            ref += si.quad(lambda u: u ** -2.5, 3.0, y, weight="alg", wvar=(0, eta - 1))[0]
        assert nu.density(y) == pytest.approx(ref / gamma_fn(eta), rel=1e-9)


def test_rl_left_membership_ratio_example():
    mu = Measure(atoms=[(1.0, 1.0)], pieces=[constant_piece(0.0, 1.0)])
    lhs, rhs = _ratio_sides(rl_left(mu, 0.5), mu, 1.0, 0.5)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_rl_left_keeps_atom_infinity_and_drops_atom_zero():
    out = rl_left(Measure(atom_zero=1.0, atom_infinity=2.0), 0.5)
    assert out.atom_infinity == 2.0 and out.atom_zero == 0.0
    assert out.density(4.0) == pytest.approx(4.0 ** -0.5 / gamma_fn(0.5), rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 2.5), st.floats(0.0, 3.0), st.floats(0.1, 5.0), st.floats(0.0, 2.0))
def test_rl_left_no_atom_at_zero(eta, a0, u, m):
    out = rl_left(Measure(a0, 0.0, [(u, m)]), eta)
    assert out.atom_zero == 0.0


@pytest.mark.parametrize("eta", [0.3, 0.5, 0.9])
def test_rl_membership_ratio_on_corpus(eta, corpus_measures):
    for name in ("delta1", "unit(0,1)", "delta2+unit(1,3)", "mixed"):
        mu = corpus_measures[name]
        lhs, rhs = _ratio_sides(rl_left(mu, eta), mu, 1.5, eta)
        assert lhs == pytest.approx(rhs, rel=1e-6), name


# ----------------------------------------------------------- inversion

def test_rl_round_trip_delta():
    F = rl_left_invert(rl_left(DELTA1, 0.5), 0.5)
    ys = np.geomspace(0.1, 10.0, 64)
    ys = ys[np.abs(ys - 1.0) > 0.05]
    assert np.max(np.abs(F(ys) - (ys > 1.0))) <= 2e-4


def test_rl_round_trip_unit():
    F = rl_left_invert(rl_left(UNIT01, 0.3), 0.3)
    ys = np.geomspace(0.1, 10.0, 64)
    assert np.max(np.abs(F(ys) - np.minimum(ys, 1.0))) <= 1e-4


def test_rl_invert_zero_measure():
    F = rl_left_invert(Measure(), 0.5)
    assert F(np.array([0.5, 3.0])).tolist() == [0.0, 0.0]


def test_rl_invert_rejects_large_eta_numerically():
    with pytest.raises(ValueError, match="closed"):
        rl_left_invert(rl_left(Measure(pieces=[generic_density()]), 1.5), 1.5)


def generic_density():
    from stieltjes.measure import generic_piece
    return generic_piece(0.0, 1.0, lambda u: 1.0 + u)


def test_rl_invert_closed_integer_and_fractional():
    F = rl_left_invert_closed(rl_left(DELTA1, 1.0), 1.0)
    assert F(0.5) == 0.0 and F(2.0) == pytest.approx(1.0, rel=1e-14)
    F = rl_left_invert_closed(rl_left(DELTA1, 1.5), 1.5)
    ys = np.array([0.3, 0.9, 1.1, 3.0, 10.0])
    assert np.allclose(F(ys), (ys > 1.0).astype(float), atol=1e-8)
    F = rl_left_invert_closed(rl_left(UNIT01, 2.0), 2.0)
    ys = np.array([0.25, 0.5, 1.0, 2.0, 7.0])
    assert np.allclose(F(ys), np.minimum(ys, 1.0), rtol=1e-13, atol=1e-14)


def test_frac_value_against_quadrature():
    mu = MIXED
    for eta in (0.3, 0.7):
        for y in (1.5, 2.5, 4.0):
            ref = si.quad(lambda u: (y - u) ** -eta, 1.0, min(y, 3.0))[0]
            ref += (y - 2.0) ** -eta if y > 2.0 else 0.0
            assert frac_value(mu, y, eta) * gamma_fn(1 - eta) == pytest.approx(ref, rel=1e-10)


# ---------------------------------------------------------- kober_right

def test_kober_membership_ratio_example():
    lhs, rhs = _ratio_sides(kober_right(DELTA2, 1.2, 0.7), DELTA2, 1.2, 0.7)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_kober_atom_zero_only():
    out = kober_right(Measure(atom_zero=2.5), 1.3, 0.4)
    assert out.atom_zero == 2.5 and not out.atoms and not out.pieces and out.atom_infinity == 0.0


def test_kober_density_against_scipy():
    alpha, eta = 1.5, 0.5
    tau = kober_right(MIXED, alpha, eta)
    for y in (0.5, 1.5, 2.5, 5.0):
        # y^(alpha-1)/Gamma(eta) int_{u > y} mu(du) u^(-alpha-eta+1)(u-y)^(eta-1)... via the definition
        def dens(u):
            return u ** (1 - alpha - eta) * (u - y) ** (eta - 1)
        ref = dens(2.0) if y < 2.0 else 0.0
        lo = max(y, 1.0)
        if lo < 3.0:
            ref += si.quad(lambda u: u ** (1 - alpha - eta), lo, 3.0, weight="alg", wvar=(eta - 1, 0)
                           )[0] if lo == y else si.quad(dens, lo, 3.0)[0]
        ref *= y ** (alpha - 1) / gamma_fn(eta)
        assert tau.density(y) == pytest.approx(ref, rel=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 0.95), st.floats(0.3, 3.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_kober_no_atom_at_infinity(eta, alpha, a0, ainf):
    out = kober_right(Measure(a0, ainf, [(1.0, 1.0)]), alpha, eta)
    assert out.atom_infinity == 0.0


def test_commutation_example():
    alpha, eta = 1.0, 0.5
    left = involution(rl_left(MIXED, eta), alpha + eta)
    right = kober_right(involution(MIXED, alpha), alpha, eta)
    ys = np.geomspace(0.05, 20.0, 60)
    ys = ys[(np.abs(ys - 1.0 / 3.0) > 1e-3) & (np.abs(ys - 0.5) > 1e-3) & (np.abs(ys - 1.0) > 1e-3)]
    d1, d2 = left.density(ys), right.density(ys)
    assert np.allclose(d1, d2, rtol=1e-6, atol=1e-12)


def test_kober_round_trip_delta():
    F, est = kober_right_invert(kober_right(DELTA2, 1.0, 0.5), 1.0, 0.5)
    ys = np.geomspace(0.1, 10.0, 64)
    ys = ys[np.abs(ys - 2.0) > 0.05]
    assert np.max(np.abs(F(ys) - (ys > 2.0))) <= 2e-4
    assert abs(est.value) <= 1e-3


def test_kober_recovers_mu_infinity():
    tau = kober_right(Measure(atom_infinity=1.0), 1.0, 0.5)
    est = mu_infinity_limit(tau, 1.0, 0.5)
    assert est.converged and est.value == pytest.approx(1.0, abs=1e-3)


def test_kober_invert_atom_zero_only():
    F, est = kober_right_invert(Measure(atom_zero=0.7), 1.2, 0.4)
    assert F(0.5) == pytest.approx(0.7) and F(9.0) == pytest.approx(0.7)
    assert est.value == 0.0


def test_kober_invert_rejects_eta_ge_one():
    with pytest.raises(ValueError):
        kober_right_invert(kober_right(DELTA2, 1.0, 1.2), 1.0, 1.2)


@pytest.mark.parametrize("eta", [0.3, 0.5, 0.9])
def test_kober_membership_ratio_on_corpus(eta, corpus_measures):
    for name in ("delta1", "unit(0,1)", "delta2+unit(1,3)", "mixed", "muinf+delta1"):
        mu = corpus_measures[name]
        inner = mu.replace(atom_zero=0.0)
        lhs = membership_integral(kober_right(mu, 1.5, eta).replace(atom_zero=0.0), 1.5 + eta)
        rhs = gamma_fn(1.5) / gamma_fn(1.5 + eta) * (membership_integral(inner, 1.5) + mu.atom_infinity)
        assert lhs == pytest.approx(rhs, rel=1e-6), name


# ---------------------------------------------------------------- Lah

def test_lah_small_values():
    assert lah_expand(1)[1] == -1
    c = lah_expand(2)
    assert (c[1], c[2]) == (2, 1)
    assert lah_number(3, 1) == -6 and lah_number(3, 2) == -6 and lah_number(3, 3) == -1


def test_lah_recurrences():
    for n in range(1, 11):
        for m in range(1, n + 2):
            signed = -((n + m) * lah_number(n, m) + lah_number(n, m - 1))
            assert lah_number(n + 1, m) == signed
            mag = (n + m) * abs(lah_number(n, m)) + abs(lah_number(n, m - 1))
            assert abs(lah_number(n + 1, m)) == mag


def test_lah_operator_expansion_symbolic():
    x = sympy.symbols("x", positive=True)
    f = sympy.Function("f")
    for n in range(1, 5):
        lhs = f(x)
        for _ in range(n):
            lhs = -x ** 2 * sympy.diff(lhs, x)
        c = lah_expand(n)
        rhs = sum(c[m] * x ** (n + m) * sympy.diff(f(x), x, m) for m in range(1, n + 1))
        assert sympy.simplify(sympy.expand(lhs - rhs)) == 0
    # the n = 2 case by hand: (-x^2 D)^2 f = 2 x^3 f' + x^4 f''
    lhs = -x ** 2 * sympy.diff(-x ** 2 * sympy.diff(f(x), x), x)
    assert sympy.expand(lhs - (2 * x ** 3 * sympy.diff(f(x), x) + x ** 4 * sympy.diff(f(x), x, 2))) == 0


def test_lah_on_monomials():
    k = sympy.symbols("k")
    x = sympy.symbols("x", positive=True)
    for n in range(1, 5):
        g = x ** k
        for _ in range(n):
            g = -x ** 2 * sympy.diff(g, x)
        c = lah_expand(n)
        rhs = sum(c[m] * x ** (n + m) * sympy.diff(x ** k, x, m) for m in range(1, n + 1))
        assert sympy.simplify((g - rhs) / x ** (k + n)) == 0


# -------------------------------------------------------- order raising

def test_order_raise_example2_reversed():
    alpha = 2.0
    f = StieltjesFunction(Measure(atoms=[(1.0, 1.0 / (alpha - 1.0))]), alpha - 1.0)
    g = order_raise_mu(f, alpha)
    ys = np.array([1.01, 2.0, 10.0, 1e3])
    assert np.allclose(g.measure.density(ys), 1.0, rtol=1e-13)
    assert g.measure.density(0.5) == 0.0


def test_order_raise_mu_eval_and_atom_infinity():
    f = StieltjesFunction(UNIT01.replace(atom_infinity=0.7), 1.0)
    g = order_raise_mu(f, 2.5)
    assert g.measure.atom_infinity == 0.7
    assert eval_transform(g, 1.0) == pytest.approx(eval_transform(f, 1.0), rel=1e-7)


def test_order_raise_rho_eval():
    f = StieltjesFunction(Measure(atoms=[(0.5, 1.0)]), 1.0, RHO)
    g = order_raise_rho(f, 1.8)
    assert eval_transform(g, 2.0) == pytest.approx(eval_transform(f, 2.0), rel=1e-7)


def test_order_raise_rho_infinity_term():
    f = StieltjesFunction(Measure(atom_infinity=1.0), 1.0, RHO)
    g = order_raise_rho(f, 2.0)
    ys = np.array([0.5, 2.0, 30.0])
    assert np.allclose(g.measure.density(ys), 1.0, rtol=1e-12)
    for z in (0.5, 2.0 + 1.0j):
        assert eval_transform(g, z) == pytest.approx(eval_transform(f, z), rel=1e-9)
    est = rho_infinity_from_raised(g.measure, 1.0, 2.0)
    assert est.value == pytest.approx(1.0, abs=1e-3)


def test_order_raise_rho_consistent_with_mu_path():
    f = StieltjesFunction(MIXED, 1.0, MU)
    via_mu = order_raise_mu(f, 1.5).rho_form()
    via_rho = order_raise_rho(f.rho_form(), 1.5)
    ys = np.geomspace(0.05, 20.0, 40)
    ys = ys[(np.abs(ys - 1 / 3) > 1e-3) & (np.abs(ys - 0.5) > 1e-3) & (np.abs(ys - 1.0) > 1e-3)]
    assert np.allclose(via_mu.measure.density(ys), via_rho.measure.density(ys), rtol=1e-6, atol=1e-12)
    assert dict(via_mu.measure.atoms) == pytest.approx(dict(via_rho.measure.atoms))


def test_order_raise_semigroup():
    f = StieltjesFunction(DELTA1, 1.0)
    two_step = order_raise_mu(order_raise_mu(f, 1.4), 2.1)
    one_step = order_raise_mu(f, 2.1)
    for z in (0.5, 3.0, 1.0 + 2.0j):
        assert eval_transform(two_step, z) == pytest.approx(eval_transform(one_step, z), rel=1e-6)


def test_order_raise_preconditions():
    f = StieltjesFunction(DELTA1, 1.0)
    with pytest.raises(ValueError):
        order_raise_mu(f, 1.0)
    with pytest.raises(ValueError):
        order_raise_rho(f, 2.0)


# --------------------------------------------------------- transitions

def test_transition_down_delta():
    f2 = lambda x: (1.0 + x) ** -2.0
    f1 = function_transition_down(f2, 1.0, 2.0, 0.0)
    assert f1(1.0) == pytest.approx(0.5, rel=1e-8)


def test_transition_down_example1_pair():
    f2 = StieltjesFunction(UNIT01, 2.0)
    f1 = function_transition_down(lambda x: eval_transform(f2, x).real, 1.0, 2.0, 0.0)
    for x in (0.5, 1.0, 5.0):
        assert f1(x) == pytest.approx(math.log((1 + x) / x), rel=1e-6)


def test_transition_up_delta():
    prov = MeasureDerivatives(StieltjesFunction(DELTA1, 1.0))
    f15 = function_transition_up(prov, 1.0, 1.5, 0.0)
    assert f15(1.0) == pytest.approx(2.0 ** -1.5, rel=1e-8)


def test_transition_up_constant():
    fb = function_transition_up(lambda n, t: np.zeros_like(np.asarray(t, dtype=float)), 1.0, 1.7, 3.0)
    assert fb(0.4) == 3.0 and fb(20.0) == 3.0


def test_transition_round_trip():
    prov = MeasureDerivatives(StieltjesFunction(UNIT01, 1.5))
    up = function_transition_up(prov, 1.5, 2.2, 0.0)
    down = function_transition_down(up, 1.5, 2.2, 0.0)
    for x in (0.5, 2.0):
        assert down(x) == pytest.approx(eval_transform(StieltjesFunction(UNIT01, 1.5), x).real, rel=1e-4)


def test_transition_preconditions():
    with pytest.raises(ValueError):
        function_transition_down(lambda x: 1.0, 2.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        function_transition_up(None, 1.0, 2.0, 0.0)
