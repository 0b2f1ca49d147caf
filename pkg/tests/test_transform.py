import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes.measure import INF, Measure, constant_piece, moments
from stieltjes.reproduce import corpus
from stieltjes.transform import (MU, RHO, MeasureDerivatives, StieltjesFunction, derivative,
                                 eval_real, eval_transform, laplace_factorization_eval,
                                 modulus_bound, reciprocal_map, series_coefficients, series_eval,
                                 series_radius)

UNIT01 = Measure(pieces=[constant_piece(0.0, 1.0)])
UNIT1INF = Measure(pieces=[constant_piece(1.0, INF)])
DELTA1 = Measure(atoms=[(1.0, 1.0)])


def test_eval_examples():
    assert eval_transform(StieltjesFunction(UNIT01, 2.0), 1.0) == pytest.approx(0.5, rel=1e-14)
    for a in (0.7, 1.5, 3.0):
        f = StieltjesFunction(Measure(atom_zero=1.0), a)
        assert eval_transform(f, 2.0) == pytest.approx(2.0 ** -a, rel=1e-15)
    assert eval_transform(StieltjesFunction(UNIT1INF, 2.0), 1.0) == pytest.approx(0.5, rel=1e-14)


def test_eval_against_mpmath_quadrature():
    mu = dict(corpus())["mixed"]
    for alpha in (0.7, 1.5, 2.5):
        f = StieltjesFunction(mu, alpha)
        for z in (0.3, 2.0 + 1.0j, -1.5 + 0.2j, 10j):
            kern = lambda u: (u + z) ** (-alpha)
            ref = (0.5 * z ** (-alpha) + 0.3 + 1.0 * (2.0 + z) ** (-alpha)
                   + 2.0 * mpmath.quad(kern, [1, 3])
                   + mpmath.quad(lambda u: u ** -2.5 * kern(u), [3, 30, mpmath.inf]))
            assert eval_transform(f, z) == pytest.approx(complex(ref), rel=1e-10)


def test_eval_rho_form_matches_mu_form():
    for name, mu in corpus():
        for alpha in (0.5, 1.0, 2.2):
            if name == "unit(1,inf)" and alpha <= 1.0:
                continue
            f = StieltjesFunction(mu, alpha, MU)
            g = f.rho_form()
            for z in (0.5, 3.0 - 2.0j):
                assert eval_transform(g, z) == pytest.approx(eval_transform(f, z), rel=1e-10), name


def test_branch_cut_rejected():
    f = StieltjesFunction(DELTA1, 1.0)
    with pytest.raises(ValueError, match="branch cut"):
        eval_transform(f, -1.0)
    with pytest.raises(ValueError, match="branch cut"):
        eval_transform(f, 0.0)


def test_non_member_rejected():
    with pytest.raises(ValueError, match="not in M_alpha"):
        StieltjesFunction(UNIT1INF, 1.0)
    with pytest.raises(ValueError):
        StieltjesFunction(DELTA1, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 50.0), st.floats(-math.pi + 1e-3, math.pi - 1e-3), st.floats(0.3, 3.0))
def test_conjugate_symmetry(r, phi, alpha):
    f = StieltjesFunction(dict(corpus())["delta2+unit(1,3)"], alpha)
    z = cmath.rect(r, phi)
    assert eval_transform(f, z.conjugate()) == pytest.approx(eval_transform(f, z).conjugate(),
                                                            rel=1e-12, abs=1e-300)


def test_reciprocal_map():
    f = StieltjesFunction(DELTA1, 1.0)
    assert reciprocal_map(f).measure.atoms == ((1.0, 1.0),)
    f = StieltjesFunction(UNIT01, 1.5)
    g = reciprocal_map(f)
    assert eval_transform(g, 2.0) == pytest.approx(2.0 ** -1.5 * eval_transform(f, 0.5), rel=1e-10)
    for z in (0.2, 1.0 + 1.0j, 5.0 - 0.5j, -2.0 + 0.1j):
        assert eval_transform(g, z) == pytest.approx(z ** -1.5 * eval_transform(f, 1.0 / z), rel=1e-10)
    h = StieltjesFunction(Measure(atom_zero=2.0, atoms=[(1.0, 1.0)]), 1.2)
    assert reciprocal_map(h).measure.atom_infinity == 2.0


def test_series_coefficients():
    c = series_coefficients(StieltjesFunction(DELTA1, 1.0, RHO), 6)
    assert c == pytest.approx([(-1.0) ** k for k in range(7)], rel=1e-15)
    c = series_coefficients(StieltjesFunction(DELTA1, 2.0, RHO), 6)
    assert c == pytest.approx([(-1.0) ** k * (k + 1) for k in range(7)], rel=1e-15)
    f = StieltjesFunction(UNIT01, 1.5, RHO)
    assert series_eval(f, 0.1, 30) == pytest.approx(eval_transform(f, 0.1), rel=1e-10)
    assert series_radius(f) == 1.0


def test_series_geometric_convergence():
    f = StieltjesFunction(UNIT01, 1.5, RHO)
    exact = eval_transform(f, 0.5)
    errs = [abs(series_eval(f, 0.5, k) - exact) for k in (5, 10, 20, 40)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-10


def test_series_of_example1_moments_vs_eval():
    # the mu-form function whose rho is the unit density on (0, 1)
    for alpha in (0.8, 2.0, 3.5):
        f = StieltjesFunction(UNIT01, alpha, RHO).mu_form()
        assert moments(f.rho_form().measure, 4) == pytest.approx([1.0 / (k + 1) for k in range(5)],
                                                                  rel=1e-12)
        assert series_eval(f, 0.1, 40) == pytest.approx(eval_transform(f, 0.1), rel=1e-10)


def test_series_requires_compact_support():
    with pytest.raises(ValueError, match="compact"):
        series_coefficients(StieltjesFunction(Measure(pieces=[constant_piece(0.0, INF)]), 2.0, RHO), 3)


def test_laplace_factorization():
    f = StieltjesFunction(DELTA1, 1.0)
    assert laplace_factorization_eval(f, 1.0) == pytest.approx(0.5, rel=1e-10)
    f = StieltjesFunction(UNIT01, 2.0)
    assert laplace_factorization_eval(f, 1.0) == pytest.approx(0.5, rel=1e-6)
    f3 = StieltjesFunction(Measure(atom_infinity=3.0, atoms=[(1.0, 1.0)]), 1.0)
    assert laplace_factorization_eval(f3, 1.0) == pytest.approx(3.5, rel=1e-10)
    with pytest.raises(ValueError, match="atom at zero"):
        laplace_factorization_eval(StieltjesFunction(Measure(atom_zero=1.0), 1.0), 1.0)


def test_modulus_bound_examples():
    bound, actual = modulus_bound(StieltjesFunction(DELTA1, 1.0), -1.0 + 1.0j)
    assert bound == pytest.approx(math.sqrt(5.0) / 2.0, rel=1e-14)
    assert actual == pytest.approx(1.0, rel=1e-14)
    bound, actual = modulus_bound(StieltjesFunction(Measure(atom_infinity=2.5), 1.3), -0.5 + 2.0j)
    assert bound == actual == 2.5
    f = StieltjesFunction(UNIT01, 2.0)
    for x in np.linspace(-5.0, 0.0, 10):
        for y in (-3.0, -0.1, 0.05, 0.5, 1.0, 2.0, 4.0, 8.0, 10.0, 20.0):
            b, a = modulus_bound(f, complex(x, y))
            assert a <= b * (1 + 1e-12)
    with pytest.raises(ValueError):
        modulus_bound(f, 1.0 + 1.0j)


def test_derivatives_closed_form_vs_mpmath():
    f = StieltjesFunction(dict(corpus())["delta2+unit(1,3)"], 1.5)
    for n in range(5):
        for x in (0.3, 2.0):
            ref = mpmath.diff(lambda t: (2 + t) ** -1.5 + mpmath.quad(lambda u: (u + t) ** -1.5, [1, 3]), x, n)
            assert derivative(f, n, x) == pytest.approx(float(ref), rel=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.3])
def test_vectorized_derivatives_match_pointwise(alpha):
    top = INF if alpha > 1.0 else 5.0
    mu = Measure(atom_zero=0.4, atoms=[(1.0, 2.0)],
                 pieces=[constant_piece(0.0, 1.0), constant_piece(2.0, top, 0.5)])
    f = StieltjesFunction(mu, alpha)
    xs = np.array([0.2, 1.0, 6.0])
    prov = MeasureDerivatives(f)
    for n in range(1, 4):
        ref = [derivative(f, n, x) for x in xs]
        assert np.allclose(prov(n, xs), ref, rtol=1e-10, atol=0.0)


def test_complete_monotonicity_sampling():
    for name, mu in corpus():
        f = StieltjesFunction(mu, 2.0)
        prov = MeasureDerivatives(f)
        xs = np.geomspace(0.05, 20.0, 9)
        for n in range(5):
            assert np.all((-1.0) ** n * prov(n, xs) >= 0.0), name


def test_immutability():
    f = StieltjesFunction(DELTA1, 1.0)
    with pytest.raises(AttributeError):
        f.alpha = 2.0
