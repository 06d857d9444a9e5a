import os
import subprocess
import sys

import numpy as np
import pytest

from lagfrac import _core
from lagfrac._core import _fallback
from lagfrac.quadrature import gauss_jacobi, gauss_laguerre

compiled = pytest.importorskip("lagfrac._core._kernels", reason="compiled backend not built")

rng = np.random.default_rng(11)


def _close(a, b, rtol=1e-12, floor=1e-300):
    a, b = np.asarray(a), np.asarray(b)
    return np.all(np.abs(a - b) <= rtol * np.maximum(np.abs(b), floor) + floor)


@pytest.mark.parametrize("k,a", [(0, 0.5), (1, -0.5), (7, 2.0), (60, 0.3), (300, 10.0)])
def test_laguerre_scaled_parity(k, a):
    x = np.concatenate([[0.0], rng.uniform(0, 4 * k + 20, 200)])
    m1, s1 = compiled.laguerre_scaled(k, a, x)
    m0, s0 = _fallback.laguerre_scaled(k, a, x)
    v1 = np.log(np.abs(m1)) + s1
    v0 = np.log(np.abs(m0)) + s0
    # compare in log space away from roots, where relative error in L blows up
    away = np.abs(m0) * np.exp(s0 - np.max(s0)) > 1e-6 * np.max(np.abs(m0))
    assert np.allclose(v1[away], v0[away], rtol=0, atol=1e-9)
    assert np.array_equal(np.sign(m1[away]), np.sign(m0[away]))


def test_tables_parity_and_shapes():
    x = rng.uniform(0, 30, (5, 7))
    for a in (-0.5, 0.0, 3.5):
        t1, t0 = compiled.laguerre_table(25, a, x), _fallback.laguerre_table(25, a, x)
        assert t1.shape == t0.shape == (26, 5, 7)
        assert np.allclose(t1, t0, rtol=1e-12, atol=1e-12 * np.max(np.abs(t0)))
    h1, h0 = compiled.hermite_table(40, x - 15), _fallback.hermite_table(40, x - 15)
    assert h1.shape == (41, 5, 7) and np.allclose(h1, h0, rtol=0, atol=1e-14)
    assert compiled.laguerre_table(3, 0.5, 1.0).shape == (4,)
    assert compiled.hermite_table(3, 0.0).shape == (4,)


def test_log_sums_parity():
    g = gauss_jacobi(64, 1.5, 1.5)
    z = np.geomspace(1e-4, 1e3, 300)
    lw = g.log_weights
    assert _close(compiled.log_gegenbauer_sum(z, g.nodes, lw), _fallback.log_gegenbauer_sum(z, g.nodes, lw),
                  rtol=1e-12, floor=1e-14)
    lg = gauss_laguerre(48, 2.0)
    zl = np.geomspace(0.5, 1e5, 200)
    for power in (0.0, 1.5, 20.0):
        a = compiled.log_laguerre_sum(zl, lg.nodes, lg.log_weights, power)
        b = _fallback.log_laguerre_sum(zl, lg.nodes, lg.log_weights, power)
        assert _close(a, b, rtol=1e-12, floor=1e-14)


def test_log_schlafli_parity():
    g = gauss_jacobi(64, 0.7, 0.7)
    lg = gauss_laguerre(48, 0.7)
    z = np.geomspace(1e-3, 1e4, 400)
    args = (g.nodes, g.log_weights, lg.nodes, lg.log_weights, 0.7, 1.7, -0.3, 30.0)
    assert _close(compiled.log_schlafli(z, *args), _fallback.log_schlafli(z, *args), rtol=1e-12, floor=1e-14)


def test_selected_backend_reported():
    assert _core.BACKEND in ("cython", "python")
    env = dict(os.environ, LAGFRAC_PURE_PYTHON="1")
    code = "import lagfrac; print(lagfrac.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_end_to_end_parity():
    # the same operator value under either backend
    code = ("import numpy as np; from lagfrac import operators as o; from lagfrac.specfun import FracParams;"
            "v = o.apply_frac_kernel('hermite', FracParams(1, 0.5, 0.6), o.gaussian_bump(1.5, 0.4),"
            " np.array([0.5, 1.5, 3.0])); print(' '.join('%.17e' % t for t in v))")
    vals = []
    for flag in ("0", "1"):
        env = dict(os.environ, LAGFRAC_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        vals.append(np.array(out.stdout.split(), dtype=float))
    assert np.allclose(vals[0], vals[1], rtol=1e-12)
