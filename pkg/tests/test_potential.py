import io
import math

import numpy as np
import pytest

from lagfrac import operators as ops
from lagfrac import potential as pot
from lagfrac.grids import GridSpec
from lagfrac.specfun import DomainError, FracParams, phi_hermite_type


def test_k_sigma_branches():
    assert pot.k_sigma(0.25, 1, 0.5) == pytest.approx(0.5 ** -0.5, rel=1e-15)
    assert pot.k_sigma(2.0, 1, 0.5) == 1.0
    for s in (0.1, 0.5, 3.0):
        assert pot.k_sigma(s, 1, 2.0, c_exp=1 / 16) == pytest.approx(math.exp(-0.25), rel=1e-15)
    with pytest.raises(DomainError):
        pot.k_sigma(0.3, 1, 0.0)


def test_cal_k_branches():
    assert pot.cal_k(0.5, 0.25, 1.0, 1.5) == pytest.approx(2.5 ** -2 * 0.5 ** -0.5, rel=1e-14)
    assert pot.cal_k(0.0, 0.5, 1.0, 1.5) == pytest.approx(math.log(5) / 2.5, rel=1e-14)
    assert pot.cal_k(0.0, 1.0, 3.0, 5.0, c_exp=1 / 16) == pytest.approx(math.exp(-0.25) / 8, rel=1e-14)


def test_potential_kernel_symmetric():
    p = FracParams(1, 0.5, 0.3)
    a = pot.potential_kernel_hermite(p, np.array([0.7, 1.0, 2.5]), np.array([1.9, 1.001, 0.3]))
    b = pot.potential_kernel_hermite(p, np.array([1.9, 1.001, 0.3]), np.array([0.7, 1.0, 2.5]))
    assert np.allclose(a, b, rtol=1e-12)
    assert np.all(np.isfinite(a)) and a[1] > a[0]


def test_potential_eigen_identity():
    # int H(x, y) phi_0^0(y) dy = phi_0^0(x) / 2 through the direct-kernel route
    p = FracParams(1, 0.0, 1.0)
    f = ops.eigenfunction("hermite", 0.0, 0)
    out = ops.apply_frac_kernel("hermite", p, f, np.array([1.0]), method="potential")
    assert out[0] == pytest.approx(phi_hermite_type(0, 0.0, 1.0) / 2, rel=1e-8)


def test_convolution_relation():
    p = FracParams(1, 0.5, 0.3)
    h = pot.potential_kernel_hermite(p, 1.0, 2.0)
    assert pot.potential_kernel_convolution(p, 1.0, 2.0) == pytest.approx(h / 2.0, rel=1e-12)
    q = FracParams(1, 0.5, 0.3, 1.0, 3)
    v = pot.potential_kernel_convolution(q, np.array([0.05, 1.0, 5.0]), np.array([5.0, 0.3, 4.9]))
    assert np.all(np.isfinite(v)) and np.all(v > 0)


def test_convolution_precondition():
    with pytest.raises(pot.PreconditionError):
        pot.potential_kernel_convolution(FracParams(1, 0.0, 1.5), 1.0, 2.0)


def test_overline_symmetry_and_domination():
    a = pot.overline_k(0.5, 0.7, np.array([1.0, 3.0]), np.array([2.0, 0.5]))
    b = pot.overline_k(0.5, 0.7, np.array([2.0, 0.5]), np.array([1.0, 3.0]))
    assert np.allclose(a, b, rtol=1e-12)
    x = np.array([0.5, 1.0, 2.0, 4.0])
    y = np.array([1.5, 3.0, 2.5, 1.0])
    p = FracParams(1, 0.5, 0.7)
    H = pot.potential_kernel_hermite(p, x, y) * math.gamma(0.7) * (x * y) ** (-1.0)
    assert np.all(pot.overline_k(0.5, 0.7, x, y) >= H)


def test_certificate_examples():
    cert = pot.certify_prop_estimacion([-0.5, 0, 1, 5, 20], 0.3, GridSpec(0.2, 6, 10, near_diagonal=(1e-3,)))
    assert cert.passed and cert.sup_ratio > 0
    single = pot.certify_prop_estimacion([0.5], 0.3, GridSpec.explicit([1.0, 2.0]))
    lk = np.log(pot.k_sigma(0.3, 1, -1.0))
    r = math.exp(pot.log_potential_kernel_hermite(FracParams(1, 0.5, 0.3), 1.0, 2.0) - lk)
    assert single.sup_ratio == pytest.approx(r, rel=1e-12)
    wide = pot.certify_prop_estimacion([0, 1], 0.75, GridSpec(0.5, 3, 6, near_diagonal=(1e-5,)))
    assert math.isfinite(wide.sup_ratio)


def test_mathk_certificate_and_csv():
    cert = pot.certify_prop_mathK(0.5, 0.3, 1.0, 6, GridSpec(0.2, 5, 8))
    assert cert.passed and len(cert.rows) == 7
    buf = io.StringIO()
    pot.write_certificate_csv(cert, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 8 and lines[0].startswith("certificate,")
    again = pot.certify_prop_mathK(0.5, 0.3, 1.0, 6, GridSpec(0.2, 5, 8))
    assert again.to_csv() == cert.to_csv()
    degenerate = pot.certify_prop_mathK(0.5, 0.3, 1.0, 0, GridSpec.explicit([1.0], near_diagonal=(1e-6,)))
    assert math.isfinite(degenerate.sup_ratio)
    with pytest.raises(pot.PreconditionError):
        pot.certify_prop_mathK(0.5, 1.6, 1.0, 3, GridSpec(0.2, 5, 8))


def test_kernelexp_lemmas():
    xs = np.array([0.5, 1.0, 3.0, 6.0])
    ys = np.array([2.0, 3.5, 0.5, 1.0])
    xi = np.linspace(0.05, 0.95, 12)
    c1 = pot.certify_lemma_kernelexp(0.5, 1.0, [1, 2, 3, 10], xi, xs, ys)
    assert c1.passed
    sups = [r[2] for r in c1.rows]
    assert sups[-1] <= 1.1 * max(sups[:3])
    with pytest.raises(pot.PreconditionError):
        pot.certify_lemma_kernelexp(0.5, 1.0, [1], xi, np.array([1.0]), np.array([1.5]))
    c2 = pot.certify_lemma_kernelexp2(0.5, 1.0, [1, 2, 5], xi, np.array([1.5, 3.0]), np.array([2.0, 3.4]))
    assert math.isfinite(c2.sup_ratio)


def test_heat_bound_small():
    cert = pot.certify_heat_bound([-0.5, 0.5, 20.0], [0.1, 0.5, 0.9], GridSpec(0.2, 5, 6))
    assert cert.passed
    with pytest.raises(DomainError):
        pot.certify_heat_bound([0.5], [0.0, 0.5], GridSpec(0.2, 5, 6))


def test_overline_moment_small():
    cert = pot.certify_overline_moment([(0.5, 0.7)], np.array([2.0, 10.0]), 10.0)
    assert cert.passed and 0 < cert.sup_ratio < 10
