import io
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from lagfrac import ineqlab as lab
from lagfrac.potential import PreconditionError
from lagfrac.specfun import DomainError


# -- small-T / large-T integral -------------------------------------------------

def test_ns_integral_closed_forms():
    T = 0.1
    # a = 2: substitution u = 1/zeta gives e^-T / T
    assert lab.ns_integral(2.0, T) == pytest.approx(math.exp(-T) / T, rel=1e-10)
    # a = 1: exponential integral E1(T)
    assert lab.ns_integral(1.0, T) == pytest.approx(special.exp1(T), rel=1e-10)
    ref = integrate.quad(lambda z: math.exp(-2.0 / z), 0, 1, epsabs=0, epsrel=1e-13)[0]
    assert lab.ns_integral(0.0, 2.0) == pytest.approx(ref, rel=1e-10)
    with pytest.raises(DomainError):
        lab.ns_integral(1.0, 0.0)


def test_ns_certificate_examples():
    sw = lab.certify_lemma_NS([0.0], [2.0])
    assert sw.verdict and math.isfinite(sw.ratios[0])
    sw = lab.certify_lemma_NS([2.0], [0.1])
    assert sw.rhs[0] == pytest.approx(10.0, rel=1e-14)
    assert sw.verdict
    sw = lab.certify_lemma_NS([1.0], [0.1])
    assert sw.rhs[0] == pytest.approx(math.log(20.0), rel=1e-14)
    full = lab.certify_lemma_NS([0.0, 0.5, 1.0, 2.0, 4.0], [0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 40.0])
    assert full.verdict and full.notes["max_inverse_ratio_T_lt_1"] < 10


# -- the xi-integral ------------------------------------------------------------

@pytest.mark.parametrize("c,ell,sigma,a", [(0.5, 1.0, 0.3, 1.0), (-0.5, 1.0, 0.7, 2.0), (3.0, 0.5, 1.2, 0.5)])
def test_intxi_against_direct_quadrature(c, ell, sigma, a):
    # tanh-sinh copes with the endpoint singularities at 0 and 1
    g = lambda x: mp.log((1 + x) / (1 - x)) ** (sigma - 1) * (1 - x * x) ** c * x ** (-c - ell) * mp.exp(-a / (4 * x))
    with mp.workdps(30):
        ref = float(mp.quad(g, [0, 0.01, 0.1, 0.5, 1]))
    assert lab.intxi_integral(c, ell, sigma, a) == pytest.approx(ref, rel=1e-8)


def test_intxi_certificate():
    assert lab.certify_lemma_intxi([0.5], 1.0, 0.3, 1.0).verdict
    cs = [-0.5, 0, 1, 5, 20, 100]
    sw = lab.certify_lemma_intxi(cs, 1.0, 0.3, 1.0)
    assert sw.verdict and sw.notes["uniformity"] <= 1.1
    big = lab.certify_lemma_intxi(cs, 1.0, 0.3, 50.0)
    assert big.verdict and np.all(big.ratios > 0)
    with pytest.raises(PreconditionError):
        lab.certify_lemma_intxi([0.0], 0.2, 0.5, 1.0)


# -- Beta-type integral ---------------------------------------------------------

def test_intlambda_example():
    lhs = lab.intlambda_integral(0.5, 1.0, 1.0, 2.0, 1.0)
    assert lhs == pytest.approx(1.0 / 8.0, rel=1e-12)
    assert lab.intlambda_rhs(0.5, 1.0, 1.0, 2.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    with pytest.raises(DomainError):
        lab.intlambda_integral(0.5, 1.0, 1.0, 1.0, 2.0)


@given(alpha=st.floats(-0.5, 4), lam=st.floats(-1.0, 3), b=st.floats(1, 5), A=st.floats(0.1, 10),
       frac=st.floats(0.01, 0.99))
@settings(max_examples=40, deadline=None)
def test_intlambda_matches_scipy(alpha, lam, b, A, frac):
    B = A * frac
    p, q = alpha + b - 0.5, alpha + b + lam + 0.5
    ref = integrate.quad(lambda s: (1 - s) ** p / (A - B * s) ** q, 0, 1, epsabs=0, epsrel=1e-12, limit=200)[0]
    assert lab.intlambda_integral(alpha, lam, b, A, B) == pytest.approx(ref, rel=1e-8)


def test_intlambda_regimes():
    zero = lab.certify_lemma_intlambda([(0.5, 0.0, 1.0, 2.0, 1.0)])
    assert zero.ceiling == 1 + lab.EXACT_SLACK and zero.verdict
    # B -> 0 with b = 1: lhs and rhs both tend to multiples of A^-(alpha+3/2), ratio -> 1/(alpha+3/2)
    for B in (1e-4, 1e-7):
        r = lab.certify_lemma_intlambda([(0.5, 0.0, 1.0, 2.0, B)]).ratios[0]
        assert r == pytest.approx(0.5, rel=10 * B)
    neg = lab.certify_lemma_intlambda([(0.0, -0.3, 2.0, 3.0, 1.0)])
    assert neg.ceiling == lab.DEFAULT_CEILING and neg.verdict
    for regime in ("positive", "zero", "negative"):
        assert lab.certify_lemma_intlambda(lab.random_intlambda_tuples(30, regime, seed=4)).verdict
    with pytest.raises(DomainError):
        lab.random_intlambda_tuples(1, "sideways")


# -- log equivalence and Gamma ratio ----------------------------------------------

def test_log_equivalence():
    sw = lab.certify_log_equivalence([0.5])
    assert sw.ratios[0] == pytest.approx(math.log(3) / 0.5, rel=1e-14)
    sw = lab.certify_log_equivalence([1e-8])
    assert sw.ratios[0] == pytest.approx(2.0, rel=1e-12)
    sw = lab.certify_log_equivalence([0.9])
    assert sw.rhs[0] == pytest.approx(-math.log(0.19), rel=1e-14)
    full = lab.certify_log_equivalence(np.linspace(0.001, 0.999, 200))
    assert full.verdict and full.notes["small_min"] >= 2.0 - 1e-12
    with pytest.raises(DomainError):
        lab.certify_log_equivalence([0.0, 0.5])


def test_gamma_ratio():
    assert lab.gamma_ratio(0.5, 0.25, 1.0, 1) == pytest.approx(1.25, rel=1e-13)
    sw = lab.certify_gamma_ratio(0.5, 0.25, 1.0, range(1, 51))
    assert sw.verdict and 0.9 <= sw.notes["R_last"] <= 1.1
    small = lab.gamma_ratio(0.5, 1e-12, 1.0, np.arange(1, 200))
    assert np.all(np.isfinite(small)) and small.max() < 2
    with pytest.raises(DomainError):
        lab.gamma_ratio(0.5, 0.9, 0.2, 1)
    with pytest.raises(PreconditionError):
        lab.certify_gamma_ratio(0.0, 1.5, 1.0, [1, 2])


def test_sweep_csv_deterministic():
    a, b = io.StringIO(), io.StringIO()
    lab.write_sweep_csv(lab.certify_lemma_NS([0.5, 2.0], [0.1, 3.0]), a)
    lab.write_sweep_csv(lab.certify_lemma_NS([0.5, 2.0], [0.1, 3.0]), b)
    assert a.getvalue() == b.getvalue()
    lines = a.getvalue().splitlines()
    assert lines[0] == "lemma_id,a,T,lhs,rhs,ratio,verdict" and len(lines) == 5
