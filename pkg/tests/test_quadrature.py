import math

import numpy as np
import pytest
import scipy.integrate as si
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes.quadrature import SingularIntegrand, integrate, quad, quad_budget


def test_declared_sqrt_singularity():
    r = quad(lambda x: np.ones_like(x), 0.0, 1.0, la=-0.5)
    assert r.value == pytest.approx(2.0, rel=1e-13)
    assert r.converged


def test_infinite_interval():
    r = quad(lambda t: 1.0 / (1.0 + t) ** 2, 0.0, math.inf, tail_decay=2.0)
    assert r.value == pytest.approx(1.0, rel=1e-12)
    r = quad(lambda t: 1.0 / (1.0 + t) ** 2, 0.0, math.inf)
    assert r.value == pytest.approx(1.0, rel=1e-10)


def test_kernel_identity_example():
    alpha, beta, u, z = 1.0, 2.5, 0.3, 1.2
    k = math.gamma(beta) / (math.gamma(alpha) * math.gamma(beta - alpha))
    r = quad(lambda t: (z + u + t) ** -beta, 0.0, math.inf, la=beta - alpha - 1.0,
             tail_decay=alpha + 1.0)
    assert k * r.value == pytest.approx(1.0 / 1.5, rel=1e-9)


def test_polynomial_exactness():
    for deg in range(0, 30):
        r = quad(lambda x, d=deg: x ** d, -1.0, 2.0)
        exact = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
        assert r.value == pytest.approx(exact, rel=1e-13)
        if deg <= 19:
            assert r.panels == 1


def test_both_endpoints_singular():
    r = quad(lambda x: np.cos(x), 0.0, 1.0, la=-0.7, lb=-0.4)
    ref = si.quad(lambda x: np.cos(x), 0.0, 1.0, weight="alg", wvar=(-0.7, -0.4))[0]
    assert r.value == pytest.approx(ref, rel=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.9, 2.0), st.floats(0.1, 5.0))
def test_declared_vs_undeclared(la, w):
    # smooth g times x^la: declaring the weight must agree with integrating it directly
    g = lambda x: np.exp(-w * x)
    declared = quad(g, 0.0, 1.0, la=la, rel_tol=1e-12)
    ref = si.quad(lambda x: math.exp(-w * x), 0.0, 1.0, weight="alg", wvar=(la, 0.0),
                  epsabs=0, epsrel=1e-13)[0]
    assert declared.value == pytest.approx(ref, rel=1e-10)
    if la >= 0.0:
        plain = quad(lambda x: g(x) * x ** la, 0.0, 1.0)
        assert declared.value == pytest.approx(plain.value, rel=1e-9)


def test_tail_with_declared_decay_scale():
    r = quad(lambda t: np.exp(-1e-3 * t) / (1.0 + t) ** 1.5, 0.0, math.inf, tail_decay=1.5, scale=100.0)
    ref = si.quad(lambda t: math.exp(-1e-3 * t) / (1.0 + t) ** 1.5, 0.0, np.inf, epsrel=1e-12, limit=500)[0]
    assert r.value == pytest.approx(ref, rel=1e-9)


def test_complex_result():
    r = quad(lambda x: np.exp(1j * x), 0.0, math.pi, complex_result=True)
    assert r.value == pytest.approx(2j, abs=1e-13)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        SingularIntegrand(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValueError):
        SingularIntegrand(lambda x: x, 0.0, 1.0, la=-1.0)
    with pytest.raises(ValueError):
        SingularIntegrand(lambda x: x, 0.0, math.inf, tail_decay=1.0)
    with pytest.raises(ValueError):
        integrate(SingularIntegrand(lambda x: x, 0.0, 1.0), rel_tol=1e-15)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("STIELTJES_QUAD_BUDGET", "3")
    assert quad_budget() == 3
    r = quad(lambda x: np.sin(1.0 / (x + 1e-3)), 0.0, 1.0)
    assert not r.converged
    monkeypatch.setenv("STIELTJES_QUAD_BUDGET", "many")
    with pytest.raises(ValueError):
        quad_budget()


def test_deterministic():
    f = lambda x: np.abs(np.sin(30 * x)) / (1 + x)
    a = quad(f, 0.0, 3.0)
    b = quad(f, 0.0, 3.0)
    assert a.value == b.value and a.panels == b.panels
