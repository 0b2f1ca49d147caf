import json
import math

import numpy as np
import pytest
import scipy.integrate as si
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes.measure import (INF, DensityPiece, Measure, PowerTerm, constant_piece, distribution,
                               dumps, from_dict, generic_piece, involution, loads, measures_equal,
                               membership_integral, moments, power_piece, to_dict)
from stieltjes.reproduce import corpus

ALPHAS = (0.5, 1.0, 1.7, 3.0)


def test_membership_examples():
    assert membership_integral(Measure(atoms=[(1.0, 1.0)]), 1.0) == pytest.approx(0.5, rel=1e-15)
    leb = Measure(pieces=[constant_piece(0.0, INF)])
    assert membership_integral(leb, 2.0) == pytest.approx(1.0, rel=1e-14)
    assert membership_integral(leb, 1.0) == INF


def test_membership_against_scipy():
    mu = Measure(pieces=[power_piece(0.0, 2.0, 1.0, p=0.5, q=-0.5)])
    ref = si.quad(lambda u: u ** 0.5 * (2 - u) ** -0.5 / (1 + u) ** 1.5, 0, 2, limit=200)[0]
    assert membership_integral(mu, 1.5) == pytest.approx(ref, rel=1e-10)
    tail = Measure(pieces=[DensityPiece(3.0, INF, [PowerTerm(1.0, p=-2.5)])])
    ref = si.quad(lambda u: u ** -2.5 / (1 + u) ** 0.5, 3, np.inf)[0]
    assert membership_integral(tail, 0.5) == pytest.approx(ref, rel=1e-10)


def test_divergence_is_reported_not_raised():
    mu = Measure(pieces=[DensityPiece(1.0, INF, [PowerTerm(1.0, p=0.2)])])
    assert membership_integral(mu, 1.0) == INF


def test_distribution_examples():
    d1 = Measure(atoms=[(1.0, 1.0)])
    assert distribution(d1, 1.0) == 0.0
    assert distribution(d1, 1.5) == 1.0
    fm = Measure(pieces=[constant_piece(1.0, 3.0)])
    assert distribution(fm, 2.0) == pytest.approx(1.0, rel=1e-15)
    assert distribution(Measure(atom_zero=2.0), 0.0) == 0.0
    assert distribution(Measure(atom_zero=2.0), 0.5) == 2.0
    assert distribution(Measure(atom_infinity=4.0), 1e300) == 0.0


@pytest.mark.parametrize("name", [n for n, _ in corpus()])
def test_distribution_monotone_and_left_continuous(name):
    mu = dict(corpus())[name]
    xs = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 60)))
    F = [distribution(mu, x) for x in xs]
    assert np.all(np.diff(F) >= -1e-12)
    for u, m in mu.atoms:
        assert distribution(mu, u) == pytest.approx(distribution(mu, u * (1 - 1e-9)), abs=1e-6)
        assert distribution(mu, u * (1 + 1e-12)) - distribution(mu, u) == pytest.approx(m, rel=1e-6)


def test_involution_examples():
    out = involution(Measure(atoms=[(2.0, 1.0)]), 1.0)
    assert out.atoms == ((0.5, 0.5),)
    out = involution(Measure(atom_zero=3.0), 1.3)
    assert out.atom_infinity == 3.0 and out.atom_zero == 0.0
    mu = Measure(atoms=[(2.0, 1.0)], pieces=[constant_piece(1.0, 2.0)])
    assert measures_equal(involution(involution(mu, 1.5), 1.5), mu)


def test_involution_density_against_quadrature_oracle():
    # N_alpha mu([0, x)) = int over (1/x, inf) of t^-alpha mu(dt)
    mu = Measure(pieces=[constant_piece(1.0, 2.0)])
    nu = involution(mu, 1.5)
    for x in (0.6, 0.8, 1.0):
        ref = si.quad(lambda t: t ** -1.5, max(1.0 / x, 1.0), 2.0)[0]
        assert distribution(nu, x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_involution_is_an_involution_on_corpus(alpha):
    grid = np.geomspace(1e-3, 1e3, 97)
    for name, mu in corpus():
        back = involution(involution(mu, alpha), alpha)
        assert measures_equal(back, mu, grid=grid, tol=1e-10), name


@pytest.mark.parametrize("alpha", ALPHAS)
def test_involution_preserves_membership(alpha):
    for name, mu in corpus():
        inner = mu.replace(atom_zero=0.0, atom_infinity=0.0)
        a = membership_integral(inner, alpha)
        b = membership_integral(involution(inner, alpha), alpha)
        if a == INF:
            assert b == INF, name
        else:
            assert b == pytest.approx(a, rel=1e-10), name


def test_moments():
    assert moments(Measure(atoms=[(1.0, 1.0)]), 5) == [1.0] * 6
    m = moments(Measure(pieces=[constant_piece(0.0, 1.0)]), 6)
    assert m == pytest.approx([1.0 / (k + 1) for k in range(7)], rel=1e-14)
    with pytest.raises(ValueError, match="compact support"):
        moments(Measure(pieces=[constant_piece(1.0, INF)]), 2)


def test_validation():
    with pytest.raises(ValueError):
        Measure(atom_zero=-1.0)
    with pytest.raises(ValueError):
        Measure(atoms=[(1.0, -0.1)])
    with pytest.raises(ValueError, match="overlap"):
        Measure(pieces=[constant_piece(0.0, 2.0), constant_piece(1.0, 3.0)])
    with pytest.raises(ValueError, match="negative"):
        Measure(pieces=[constant_piece(0.0, 1.0, -1.0)])
    with pytest.raises(AttributeError):
        Measure().atom_zero = 1.0


def test_generic_piece_flagged():
    g = generic_piece(0.0, 1.0, lambda u: np.exp(-u))
    mu = Measure(pieces=[g])
    assert not mu.closed_form and not mu.exact
    assert distribution(mu, 1.0) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-12)


def test_json_round_trip(corpus_measures):
    for name, mu in corpus_measures.items():
        back = loads(dumps(mu))
        assert measures_equal(back, mu), name


def test_json_format_and_inf():
    d = {"atom_zero": 0.5, "atoms": [[2, 1]],
         "pieces": [{"interval": [1, "inf"], "form": "power", "c": 2.0, "p": -2.0},
                    {"interval": [0, 1], "form": "power", "c": 1.0, "p": 0.5, "q": -0.5}]}
    mu = from_dict(d)
    assert mu.pieces[1].b == INF
    assert mu.density(0.25) == pytest.approx(0.25 ** 0.5 * 0.75 ** -0.5)
    assert json.loads(dumps(mu))["pieces"][1]["interval"][1] == "inf"


def test_json_errors():
    with pytest.raises(ValueError, match="line 1 column"):
        loads('{"atoms": [[1, 2],, ]}')
    with pytest.raises(ValueError, match="unknown measure fields"):
        from_dict({"atomz": 1})
    with pytest.raises(ValueError, match="interval"):
        from_dict({"pieces": [{"form": "constant"}]})
    with pytest.raises(ValueError, match="form"):
        from_dict({"pieces": [{"interval": [0, 1], "form": "spline"}]})


def test_tabulated_generic_serialization():
    mu = Measure(pieces=[generic_piece(0.0, 1.0, lambda u: 1.0 + u)])
    d = to_dict(mu)
    assert d["pieces"][0]["form"] == "tabulated"
    back = from_dict(d)
    assert distribution(back, 1.0) == pytest.approx(1.5, rel=1e-4)
    with pytest.raises(ValueError):
        to_dict(mu, tabulate=False)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0.01, 50.0), st.floats(1e-6, 5.0)), max_size=4),
       st.floats(0.0, 3.0), st.floats(0.0, 3.0), st.floats(0.3, 4.0))
def test_involution_property_random_atoms(atoms, a0, ainf, alpha):
    mu = Measure(a0, ainf, atoms, [constant_piece(0.5, 2.0, 1.5)])
    back = involution(involution(mu, alpha), alpha)
    assert back.atom_zero == mu.atom_zero and back.atom_infinity == mu.atom_infinity
    for (u1, m1), (u2, m2) in zip(back.atoms, mu.atoms):
        assert u1 == pytest.approx(u2, rel=1e-15) and m1 == pytest.approx(m2, rel=1e-14)
    assert measures_equal(back, mu, tol=1e-10, atom_tol=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(0.01, 50.0), st.floats(0.0, 5.0)), max_size=4),
       st.lists(st.floats(0.0, 60.0), min_size=2, max_size=8))
def test_distribution_monotone_random(atoms, xs):
    mu = Measure(0.3, 0.0, atoms, [constant_piece(1.0, 3.0)])
    xs = sorted(xs)
    F = [distribution(mu, x) for x in xs]
    assert all(b >= a - 1e-12 for a, b in zip(F, F[1:]))
