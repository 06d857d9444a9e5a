import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lagfrac import operators as ops
from lagfrac.grids import GridSpec
from lagfrac.specfun import DomainError, FracParams, ell_convolution_type, phi_hermite_type


# -- spectral route ----------------------------------------------------------

def test_expand_unit_vector():
    p = FracParams(1, 0.5)
    e = ops.expand("hermite", p, ops.eigenfunction("hermite", 0.5, 3), M=12)
    c = np.asarray(e.coeffs)
    assert c[3] == pytest.approx(1.0, abs=1e-9)
    assert np.max(np.abs(np.delete(c, 3))) <= 1e-9
    assert c.size == 13


def test_expand_linear():
    p = FracParams(1, 0.5)
    f1, f4 = ops.eigenfunction("convolution", 0.5, 1), ops.eigenfunction("convolution", 0.5, 4)
    e = ops.expand("convolution", p, lambda y: f1(y) + 2 * f4(y), M=10)
    assert e.coeffs[1] == pytest.approx(1.0, abs=1e-9)
    assert e.coeffs[4] == pytest.approx(2.0, abs=1e-9)


def test_expand_matches_fixed_quadrature():
    # f = x^(alpha+1/2) e^(-x^2/2): coefficients against an independent high-order rule
    alpha = 0.5
    f = ops.power_bump(alpha + 0.5, 0.0, math.sqrt(2.0))
    e = ops.expand("hermite", FracParams(1, alpha), f, M=20)
    x, w = np.polynomial.legendre.leggauss(400)
    y = 6.0 * (x + 1.0)
    ref = [np.sum(6.0 * w * f(y) * phi_hermite_type(k, alpha, y)) for k in range(21)]
    assert np.allclose(e.coeffs, ref, atol=1e-8)
    assert e.tail_energy >= -1e-10


def test_spectral_multiplier():
    p = FracParams(1, 0.5)
    e = ops.expand("hermite", p, ops.eigenfunction("hermite", 0.5, 2), M=8)
    out = ops.apply_frac_spectral(e, 1.0)
    assert out.coeffs[2] == pytest.approx(1.0 / 11.0, rel=1e-9)
    assert np.allclose(ops.apply_frac_spectral(e, 0.0).coeffs, e.coeffs)
    twice = ops.apply_frac_spectral(ops.apply_frac_spectral(e, 1.0), 1.0)
    assert np.allclose(twice.coeffs, ops.apply_frac_spectral(e, 2.0).coeffs, rtol=1e-13)


def test_spectral_two_dimensional():
    p = FracParams(2, (0.5, 1.0))

    def f(y):
        return phi_hermite_type(1, 0.5, y[..., 0]) * phi_hermite_type(2, 1.0, y[..., 1])

    e = ops.expand("hermite", p, f, M=5)
    k = [tuple(i) for i in e.indices].index((1, 2))
    assert e.coeffs[k] == pytest.approx(1.0, abs=1e-9)
    y = np.array([[0.7, 1.2], [2.0, 0.4]])
    lam = 4 * 3 + 2 * 1.5 + 4
    assert np.allclose(ops.synthesize(ops.apply_frac_spectral(e, 0.5), y), lam ** -0.5 * f(y), atol=1e-9)


# -- kernel route ------------------------------------------------------------

def test_kernel_examples():
    p = FracParams(1, 0.0, 1.0)
    out = ops.apply_frac_kernel("hermite", p, ops.eigenfunction("hermite", 0.0, 0), np.array([1.0]))
    assert out[0] == pytest.approx(phi_hermite_type(0, 0.0, 1.0) / 2, rel=1e-8)
    q = FracParams(1, 0.5, 0.5)
    out = ops.apply_frac_kernel("convolution", q, ops.eigenfunction("convolution", 0.5, 1), np.array([1.0]))
    assert out[0] == pytest.approx(7 ** -0.5 * ell_convolution_type(1, 0.5, 1.0), rel=1e-8)


def test_kernel_vs_spectral_bump():
    p = FracParams(1, 1.0, 0.6)
    f = ops.gaussian_bump(1.5, 0.4)
    x = np.linspace(0.2, 4.0, 15)
    a = ops.apply_frac_kernel("hermite", p, f, x)
    b = ops.synthesize(ops.apply_frac_spectral(ops.expand("hermite", p, f, M=90), 0.6), x)
    assert np.max(np.abs(a - b)) <= 1e-7 * np.max(np.abs(b))


@pytest.mark.parametrize("system", ["hermite", "convolution"])
@pytest.mark.parametrize("c,w", [(1.0, 0.5), (2.0, 0.4), (0.5, 0.2)])
def test_potential_method_agrees(system, c, w):
    # narrow bumps far from x probe the off-diagonal resolution of the direct route
    p = FracParams(1, 0.5, 0.7)
    f = ops.gaussian_bump(c, w)
    x = np.array([0.2, 0.4, 1.0, 2.0, 3.0])
    a = ops.apply_frac_kernel(system, p, f, x, method="semigroup")
    b = ops.apply_frac_kernel(system, p, f, x, method="potential")
    assert np.allclose(a, b, rtol=1e-9)


@given(c=st.floats(0.3, 3.0), w=st.floats(0.2, 1.0), s=st.floats(0.1, 2.0))
@settings(max_examples=15, deadline=None)
def test_positivity(c, w, s):
    p = FracParams(1, 0.5, s)
    out = ops.apply_frac_kernel("hermite", p, ops.gaussian_bump(c, w), np.geomspace(0.05, 8, 12))
    assert np.all(out >= 0)


def test_weighted_family():
    alpha, a, j, sigma = 0.5, 1.0, 2, 1.0
    p = FracParams(1, alpha, sigma, a, j)
    f = ops.eigenfunction("convolution", alpha + a * j, 0, power=a * j)
    x = np.array([0.5, 1.0, 2.0])
    out = ops.apply_weighted_family(p, f, x)
    expected = x ** (a * j) * ell_convolution_type(0, alpha + a * j, x) / (2 * (alpha + a * j) + 2)
    assert np.allclose(out, expected, rtol=1e-8)
    g = ops.gaussian_bump(1.0, 0.5)
    plain = ops.apply_frac_kernel("convolution", FracParams(1, alpha, 0.5), g, x)
    assert np.allclose(ops.apply_weighted_family(FracParams(1, alpha, 0.5), g, x), plain, rtol=1e-12)
    assert np.all(ops.apply_weighted_family(FracParams(1, alpha, 0.5, 1.0, 3), g, x) > 0)


def test_refinement_check():
    p = FracParams(1, 0.5, 0.5)
    out = ops.apply_frac_kernel("hermite", p, ops.gaussian_bump(1.0, 0.5), np.array([1.0]), check=True)
    assert np.isfinite(out[0])


# -- admissibility -----------------------------------------------------------

def test_admissible_hermite_examples():
    assert ops.admissible_hermite(ops.NormSpec(2, 2, 2), 0.5, 1)
    assert not ops.admissible_hermite(ops.NormSpec(2, 4, 2), 0.05, 1)
    assert not ops.admissible_hermite(ops.NormSpec(1, 2, 2), 0.5, 1)


def test_admissible_convolution_examples():
    alpha, sigma = 0.5, 0.5
    assert ops.admissible_convolution(2, 2, sigma, alpha)
    assert not ops.admissible_convolution(1, (alpha + 1) / (alpha + 1 - sigma), sigma, alpha)
    assert not ops.admissible_convolution((alpha + 1) / sigma, math.inf, sigma, alpha)
    with pytest.raises(DomainError):
        ops.admissible_convolution(2, 2, 1.6, alpha)


# -- norms -------------------------------------------------------------------

def test_vv_norm_single_eigenfunction():
    alpha, sigma = 0.5, 0.5
    f = ops.eigenfunction("convolution", alpha, 0)
    spec = ops.NormSpec(2, 2, 2, measure="mu_alpha", alpha=alpha)
    res = ops.vector_valued_norms("convolution", FracParams(1, alpha, sigma), sigma, [f], spec,
                                  GridSpec(1e-3, 40, 512))
    assert res.ratio == pytest.approx((2 * alpha + 2) ** -sigma, rel=1e-6)


def test_vv_norm_zero_and_bound():
    alpha, sigma, a = 0.5, 0.5, 1.0
    spec = ops.NormSpec(2, 2, 2, measure="mu_alpha", alpha=alpha)
    base = FracParams(1, alpha, sigma, a)
    grid = GridSpec(1e-3, 40, 256)
    zero = ops.vector_valued_norms("convolution", base, sigma, [ops.zero_function()] * 3, spec, grid)
    assert (zero.lhs, zero.rhs) == (0.0, 0.0)
    fam = [ops.eigenfunction("convolution", alpha + a * j, 0, power=a * j) for j in range(6)]
    res = ops.vector_valued_norms("convolution", base, sigma, fam, spec, grid)
    assert res.ratio <= (2 * alpha + 2) ** -sigma * (1 + 1e-6)


def test_vv_norm_rejects_inadmissible():
    spec = ops.NormSpec(1, 1.5, 2, measure="mu_alpha", alpha=0.5)
    with pytest.raises(ops.AdmissibilityError):
        ops.vector_valued_norms("convolution", FracParams(1, 0.5, 0.5), 0.5, [ops.gaussian_bump()], spec)


def test_mixed_family_shape():
    fam = ops.mixed_family("convolution", 0.5, 1.0, 8)
    assert len(fam) == 9 and fam[2].origin_power == 2.0


# -- auxiliary operators -----------------------------------------------------

def test_hardy_flett_indicator():
    lhs, rhs = ops.hardy_flett(ops.indicator_bump(0.0, 1.0), 2, 2, -0.5, breakpoints=[1.0])
    assert lhs == pytest.approx(math.sqrt(2), rel=1e-9)
    assert rhs == pytest.approx(1.0, rel=1e-9)
    assert ops.hardy_flett(ops.zero_function(), 2, 2, -0.5) == (0.0, 0.0)
    f = ops.gaussian_bump(1.0, 0.5)
    l1, r1 = ops.hardy_flett(f, 2, 3, -0.5)
    l3, r3 = ops.hardy_flett(f.scaled(3.0), 2, 3, -0.5)
    assert (l3, r3) == pytest.approx((3 * l1, 3 * r1), rel=1e-12)
    with pytest.raises(DomainError):
        ops.hardy_flett(f, 2, 2, -0.5, direction="from_infinity")


def test_local_fractional():
    one = lambda y: np.ones_like(y)
    for beta in (0.3, 0.5, 0.9):
        assert ops.local_fractional(one, beta, 2.0) == pytest.approx(2 ** (1 - beta) * 2.0 ** beta / beta, rel=1e-12)
    assert ops.local_fractional(ops.zero_function(), 0.5, 1.0) == 0.0
    assert ops.local_fractional(ops.indicator_bump(0.0, 2.0), 0.5, 1.0) == pytest.approx(2 * math.sqrt(2), rel=1e-12)
