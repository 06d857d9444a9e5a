import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from lagfrac.specfun import (
    DomainError, FracParams, LaguerreIndex, bessel_i, dim_spherical_harmonics, ell_convolution_type,
    hermite_function, hermite_functions, laguerre_poly, log_gamma, log_ive, phi_hermite_type,
)


@pytest.mark.parametrize("k,alpha,x,expected", [(0, 0.7, 3.1, 1.0), (1, 0.5, 2.0, -0.5), (2, 0.0, 1.0, -0.5)])
def test_laguerre_poly_low_degree(k, alpha, x, expected):
    assert laguerre_poly(k, alpha, x) == pytest.approx(expected, abs=1e-15)


@given(k=st.integers(0, 40), alpha=st.floats(-0.99, 20), x=st.floats(0, 60))
@settings(max_examples=200, deadline=None)
def test_laguerre_poly_matches_scipy(k, alpha, x):
    ref = special.eval_genlaguerre(k, alpha, x)
    assert laguerre_poly(k, alpha, x) == pytest.approx(ref, rel=1e-9, abs=1e-9 * (1 + abs(ref)))


def test_laguerre_index_rejects_alpha():
    with pytest.raises(DomainError):
        LaguerreIndex(2, -1.0)
    with pytest.raises(DomainError):
        LaguerreIndex(-1, 0.5)


def test_log_gamma_values():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)
    assert log_gamma(101.0) == pytest.approx(math.fsum(math.log(m) for m in range(1, 101)), rel=1e-14)
    with pytest.raises(DomainError):
        log_gamma(0.0)


def test_phi_examples():
    assert phi_hermite_type(0, 0.0, 1.0) == pytest.approx(math.sqrt(2) * math.exp(-0.5), rel=1e-14)
    v = phi_hermite_type(0, 100.0, 1.0)
    assert math.isfinite(v)
    assert v == pytest.approx(math.exp(0.5 * (math.log(2) - special.gammaln(101)) - 0.5), rel=1e-12)


def test_phi_orthonormal():
    f = lambda x: phi_hermite_type(2, 0.5, x) * phi_hermite_type(3, 0.5, x)
    g = lambda x: phi_hermite_type(3, 0.5, x) ** 2
    assert abs(integrate.quad(f, 0, np.inf, epsabs=1e-13)[0]) < 1e-10
    assert integrate.quad(g, 0, np.inf, epsabs=1e-13)[0] == pytest.approx(1.0, abs=1e-10)


def test_ell_examples():
    assert ell_convolution_type(0, 0.0, 1e-12) == pytest.approx(math.sqrt(2), rel=1e-12)
    assert ell_convolution_type(1, 0.5, 1.0) == pytest.approx(phi_hermite_type(1, 0.5, 1.0), rel=1e-14)
    x = 1.7
    assert ell_convolution_type(3, 0.5, x) == pytest.approx(phi_hermite_type(3, 0.5, x) * x ** -1.0, rel=1e-13)
    norm = integrate.quad(lambda y: ell_convolution_type(2, 0.5, y) ** 2 * y ** 2, 0, np.inf, epsabs=1e-13)[0]
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_hermite_functions():
    assert hermite_function(0, 0.0) == pytest.approx(np.pi ** -0.25, rel=1e-15)
    assert hermite_function(1, 0.0) == 0.0
    assert integrate.quad(lambda x: hermite_function(2, x) ** 2, -np.inf, np.inf)[0] == pytest.approx(1, abs=1e-10)
    t, w = np.polynomial.hermite.hermgauss(40)
    H = hermite_functions(10, t) * np.sqrt(w * np.exp(t * t))
    assert np.allclose(H @ H.T, np.eye(11), atol=1e-12)


def test_bessel_closed_forms():
    assert bessel_i(0.5, 1.0).value == pytest.approx(math.sqrt(2 / math.pi) * math.sinh(1.0), rel=1e-13)
    assert bessel_i(-0.5, 2.0).value == pytest.approx(math.sqrt(1 / math.pi) * math.cosh(2.0), rel=1e-13)
    z = 0.5
    series = math.fsum((z / 2) ** (2 * m + 3) / (math.factorial(m) * math.gamma(m + 4)) for m in range(40))
    assert bessel_i(3.0, z).value == pytest.approx(series, rel=1e-12)


@given(nu=st.floats(-0.5, 200), z=st.floats(1e-6, 1e5))
@settings(max_examples=300, deadline=None)
def test_log_ive_matches_scipy(nu, z):
    ref = special.ive(nu, z)
    if not (np.isfinite(ref) and ref > 1e-280):
        return
    assert log_ive(nu, z) == pytest.approx(math.log(ref), abs=1e-11 * max(1.0, abs(math.log(ref))))


@pytest.mark.parametrize("eps", [0.0, 5e-17, 1e-13, 1e-9, 1e-6, 1e-3])
def test_log_ive_orders_near_minus_half(eps):
    # nu - 1/2 rounds to -1 or loses the digits of nu + 1/2 here
    nu = -0.5 + eps
    z = np.geomspace(1e-3, 1e6, 40)
    ref = np.log(special.ive(nu, z))
    assert np.allclose(log_ive(nu, z), ref, rtol=0, atol=1e-12 * np.max(np.maximum(1.0, np.abs(ref))))


def test_log_ive_no_overflow_large_order():
    v = log_ive(1000.0, np.array([1e-3, 1.0, 1e3, 1e6]))
    assert np.all(np.isfinite(v))


@pytest.mark.parametrize("n,j,d", [(2, 0, 1), (2, 5, 2), (3, 2, 5), (3, 0, 1), (4, 2, 9)])
def test_dim_spherical_harmonics(n, j, d):
    assert dim_spherical_harmonics(n, j) == d


def test_frac_params_validation():
    p = FracParams(1, 0.5, 0.3, 1.0, 2)
    assert p.shifted_alpha[0] == 2.5
    assert p.eigenvalue(0) == pytest.approx(2 * 2.5 + 2)
    assert FracParams(3, 0.5).alpha == (0.5, 0.5, 0.5)
    for bad in (dict(alpha=-0.6), dict(sigma=0.0), dict(a=0.5), dict(j=-1)):
        with pytest.raises(DomainError):
            FracParams(1, **{"alpha": 0.0, **bad})
    with pytest.raises(DomainError):
        FracParams(2, (0.5,))
    with pytest.raises(DomainError):
        FracParams(1, 0.0, 1.0).require_convolution_range()
