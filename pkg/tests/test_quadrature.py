import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from lagfrac.quadrature import (
    QuadratureError, adaptive_gk, composite_legendre, gauss_jacobi, gauss_laguerre, gauss_legendre,
)


@given(a=st.floats(-0.95, 8), b=st.floats(-0.95, 8), deg=st.integers(0, 19))
@settings(max_examples=100, deadline=None)
def test_jacobi_exact_for_polynomials(a, b, deg):
    g = gauss_jacobi(10, a, b)
    approx = math.exp(g.log_mass) * np.sum(g.weights * g.nodes ** deg)
    # QUADPACK's algebraic-weight rule: (x + 1)^b (1 - x)^a
    exact = integrate.quad(lambda x: x ** deg, -1, 1, weight="alg", wvar=(b, a), epsabs=1e-14, epsrel=1e-12)[0]
    assert approx == pytest.approx(exact, rel=1e-10, abs=1e-13 * 2 ** (a + b + 1))


def test_laguerre_moments():
    g = gauss_laguerre(20, 1.5)
    for m in range(0, 30, 5):
        approx = math.exp(g.log_mass) * np.sum(g.weights * g.nodes ** m)
        assert approx == pytest.approx(math.gamma(m + 2.5), rel=1e-12)


def test_laguerre_large_order_no_overflow():
    g = gauss_laguerre(64, 300.0)
    assert np.all(np.isfinite(g.log_weights)) and abs(g.weights.sum() - 1) < 1e-12


def test_bad_parameters():
    with pytest.raises(ValueError):
        gauss_jacobi(5, -1.0, 0.0)
    with pytest.raises(ValueError):
        gauss_laguerre(5, -1.5)


def test_legendre_and_composite():
    x, w = gauss_legendre(12)
    assert np.sum(w * x ** 22) == pytest.approx(2 / 23, rel=1e-13)
    nodes, weights = composite_legendre(np.linspace(0, math.pi, 9), 10)
    assert np.sum(weights * np.sin(nodes)) == pytest.approx(2.0, rel=1e-14)


def test_adaptive_gk():
    val, err = adaptive_gk(lambda x: np.sqrt(x), 0.0, 1.0, rtol=1e-12)
    assert val == pytest.approx(2 / 3, rel=1e-11)
    val, _ = adaptive_gk(lambda x: np.abs(x - 0.3), 0.0, 1.0, breakpoints=[0.3])
    assert val == pytest.approx(0.5 * (0.09 + 0.49), rel=1e-13)
    with pytest.raises(QuadratureError):
        adaptive_gk(lambda x: 1.0 / np.abs(x - 0.5), 0.0, 1.0, rtol=1e-14, max_panels=50)
