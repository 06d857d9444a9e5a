import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lagfrac import kernels as K
from lagfrac.quadrature import composite_legendre
from lagfrac.specfun import DomainError, FracParams, phi_hermite_type


def test_meda_pairs():
    assert K.meda_forward(0.5).t == pytest.approx(0.5 * math.log(3), rel=1e-15)
    assert K.meda_forward(0.6).t == pytest.approx(math.log(2), rel=1e-15)
    assert K.meda_inverse(1.0).xi == pytest.approx(math.tanh(1.0), rel=1e-15)
    with pytest.raises(DomainError):
        K.meda_forward(1.0)
    with pytest.raises(DomainError):
        K.meda_inverse(0.0)


@given(xi=st.floats(1e-6, 1 - 1e-9))
def test_meda_round_trip(xi):
    p = K.meda_forward(xi)
    assert p.t == pytest.approx(0.5 * math.log((1 + xi) / (1 - xi)), rel=1e-14)
    assert K.meda_inverse(p.t).xi == pytest.approx(xi, rel=1e-14)


@given(st.lists(st.floats(0, 5), min_size=6, max_size=6), st.lists(st.floats(0, 1), min_size=3, max_size=3))
def test_quad_forms(v, s):
    x, y = np.array(v[:3]), np.array(v[3:])
    q = K.quad_forms(x, y, s)
    assert q.qplus >= q.qminus >= -1e-12
    assert q.qplus + q.qminus == pytest.approx(2 * (x @ x + y @ y), rel=1e-12, abs=1e-12)


def test_heat_kernel_vs_series():
    p = FracParams(1, 0.5)
    closed = K.heat_kernel_hermite(p, 0.3, 1.0, 2.0)
    series = K.heat_kernel_series("hermite", p, 0.3, 1.0, 2.0, M=60)
    assert closed == pytest.approx(series.value, rel=1e-10)


def test_heat_kernel_symmetric_and_tensor():
    p = FracParams(1, 1.3)
    assert K.heat_kernel_hermite(p, 0.7, 0.4, 2.2) == K.heat_kernel_hermite(p, 0.7, 2.2, 0.4)
    p2 = FracParams(2, (0.5, 1.5))
    prod = K.heat_kernel_hermite(FracParams(1, 0.5), 0.3, 1.0, 2.0) * K.heat_kernel_hermite(
        FracParams(1, 1.5), 0.3, 2.0, 0.5)
    assert K.heat_kernel_hermite(p2, 0.3, [1.0, 2.0], [2.0, 0.5]) == pytest.approx(prod, rel=1e-13)


def test_meda_form_consistency():
    p = FracParams(1, 0.5)
    assert K.heat_kernel_hermite_meda(p, 0.3, 1.0, 1.0) == pytest.approx(
        K.heat_kernel_hermite(p, 0.5 * math.log(13 / 7), 1.0, 1.0), rel=1e-12)
    q = FracParams(1, -0.5)
    assert K.heat_kernel_hermite_meda(q, 0.3, 1.0, 2.0) == pytest.approx(
        K.heat_kernel_hermite(q, math.atanh(0.3), 1.0, 2.0), rel=1e-12)
    near_one = [K.heat_kernel_hermite_meda(p, xi, 1.0, 2.0) for xi in (0.9, 0.999, 0.99999)]
    assert near_one[0] > near_one[1] > near_one[2] >= 0


def test_convolution_relation():
    p = FracParams(1, 0.5)
    assert K.heat_kernel_convolution(p, 0.3, 1.0, 2.0) == pytest.approx(
        K.heat_kernel_hermite(p, 0.3, 1.0, 2.0) / 2.0, rel=1e-14)
    series = K.heat_kernel_series("convolution", p, 0.3, 1.0, 2.0, M=60)
    assert K.heat_kernel_convolution(p, 0.3, 1.0, 2.0) == pytest.approx(series.value, rel=1e-10)


def test_series_single_term_and_convergence():
    p = FracParams(1, 0.7)
    s0 = K.heat_kernel_series("hermite", p, 0.5, 1.2, 0.8, M=0)
    expected = math.exp(-0.5 * (2 * 0.7 + 2)) * phi_hermite_type(0, 0.7, 1.2) * phi_hermite_type(0, 0.7, 0.8)
    assert s0.value == pytest.approx(expected, rel=1e-14)
    a = K.heat_kernel_series("hermite", p, 0.2, 1.0, 1.5, M=60).value
    b = K.heat_kernel_series("hermite", p, 0.2, 1.0, 1.5, M=120).value
    assert abs(a - b) <= 1e-12


def test_semigroup_property():
    y, w = composite_legendre(np.linspace(0, 14, 57), 16)
    p = FracParams(1, 0.5)
    lhs = np.sum(w * y ** 2 * K.heat_kernel_convolution(p, 0.3, 1.0, y) * K.heat_kernel_convolution(p, 0.4, y, 2.0))
    assert lhs == pytest.approx(K.heat_kernel_convolution(p, 0.7, 1.0, 2.0), rel=1e-8)


def test_large_order_is_finite():
    p = FracParams(1, 200.0)
    v = K.log_heat_kernel_hermite(p, 0.01, 3.0, 3.1)
    assert np.isfinite(v)


def test_function_table_matches_pointwise():
    x = np.linspace(0.1, 4, 9)
    T = K.laguerre_function_table(6, 1.5, x, "hermite")
    for k in range(7):
        assert np.allclose(T[k], phi_hermite_type(k, 1.5, x), rtol=1e-12, atol=1e-15)
