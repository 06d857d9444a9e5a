"""Quadrature rules shared by the special-function, kernel and operator layers.

Gauss rules are built from the three-term recurrence of the orthonormal
polynomials (Golub--Welsch for the nodes, Christoffel numbers for the
weights).  Weights are normalized to a probability measure and the log of
the total mass is returned separately, so that rules for very large Jacobi
or Laguerre parameters never underflow.

The adaptive integrator is a vectorized Gauss--Kronrod (7, 15) scheme: the
integrand is always called with a 1-D array of abscissae and may return an
array of shape ``(n,)`` or ``(n, k)`` (k simultaneous integrands).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class GaussRule:
    """Gauss rule with probability-normalized weights.

    ``sum(weights * f(nodes))`` approximates ``int f dw / int dw``;
    multiply by ``exp(log_mass)`` to recover the unnormalized integral.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray
    log_mass: float


def _jacobi_recurrence(n: int, a: float, b: float):
    k = np.arange(n, dtype=float)
    ab = a + b
    diag = np.empty(n)
    diag[0] = (b - a) / (ab + 2.0)
    kk = k[1:]
    denom = (2 * kk + ab) * (2 * kk + ab + 2)
    diag[1:] = (b * b - a * a) / denom
    off2 = np.empty(max(n - 1, 0))
    if n > 1:
        off2[0] = 4.0 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        kk = np.arange(2, n, dtype=float)
        num = 4 * kk * (kk + a) * (kk + b) * (kk + ab)
        den = (2 * kk + ab) ** 2 * (2 * kk + ab + 1) * (2 * kk + ab - 1)
        off2[1:] = num / den
    return diag, off2


def _laguerre_recurrence(n: int, a: float):
    k = np.arange(n, dtype=float)
    diag = 2 * k + a + 1
    kk = np.arange(1, n, dtype=float)
    off2 = kk * (kk + a)
    return diag, off2


def _christoffel(nodes, diag, off2):
    # log of 1 / sum_k p_k(x)^2 with orthonormal p_k; p_0 = 1 (probability measure)
    n = diag.size
    off = np.sqrt(off2)
    p_prev = np.zeros_like(nodes)
    p = np.ones_like(nodes)
    acc = np.ones_like(nodes)
    log_scale = np.zeros_like(nodes)
    for k in range(n - 1):
        p_next = ((nodes - diag[k]) * p - (off[k - 1] if k > 0 else 0.0) * p_prev) / off[k]
        p_prev, p = p, p_next
        acc = acc + p * p
        big = acc > 1e200
        if np.any(big):
            s = np.where(big, 1e-100, 1.0)
            p *= s
            p_prev *= s
            acc *= s * s
            log_scale += np.where(big, 200.0 * math.log(10.0), 0.0)
    return -(np.log(acc) + log_scale)


def _refine_nodes(nodes, diag, off2, steps=2):
    # Newton on the orthonormal p_n via the recurrence (value and derivative)
    n = diag.size
    off = np.sqrt(off2)
    x = nodes.copy()
    for _ in range(steps):
        p_prev = np.zeros_like(x)
        p = np.ones_like(x)
        dp_prev = np.zeros_like(x)
        dp = np.zeros_like(x)
        for k in range(n):
            b_next = off[k] if k < n - 1 else 1.0
            b_prev = off[k - 1] if k > 0 else 0.0
            p_next = ((x - diag[k]) * p - b_prev * p_prev) / b_next
            dp_next = (p + (x - diag[k]) * dp - b_prev * dp_prev) / b_next
            p_prev, p = p, p_next
            dp_prev, dp = dp, dp_next
            m = np.maximum(np.abs(p), np.abs(dp))
            m = np.where(m > 1e100, m, 1.0)
            p, p_prev, dp, dp_prev = p / m, p_prev / m, dp / m, dp_prev / m
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dp != 0, p / dp, 0.0)
        x = x - step
    return x


@lru_cache(maxsize=512)
def _gauss_jacobi_cached(n: int, a: float, b: float) -> GaussRule:
    diag, off2 = _jacobi_recurrence(n, a, b)
    nodes = eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)
    nodes = np.clip(_refine_nodes(nodes, diag, off2), -1.0, 1.0)
    logw = _christoffel(nodes, diag, off2)
    logw -= np.logaddexp.reduce(logw)
    log_mass = (a + b + 1) * math.log(2.0) + gammaln(a + 1) + gammaln(b + 1) - gammaln(a + b + 2)
    for arr in (nodes, logw):
        arr.setflags(write=False)
    w = np.exp(logw)
    w.setflags(write=False)
    return GaussRule(nodes, w, logw, float(log_mass))


def gauss_jacobi(n: int, a: float, b: float) -> GaussRule:
    """Gauss rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1."""
    if a <= -1 or b <= -1:
        raise ValueError("Jacobi parameters must exceed -1")
    return _gauss_jacobi_cached(int(n), float(a), float(b))


@lru_cache(maxsize=512)
def _gauss_laguerre_cached(n: int, a: float) -> GaussRule:
    diag, off2 = _laguerre_recurrence(n, a)
    nodes = eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)
    nodes = np.maximum(_refine_nodes(nodes, diag, off2), 0.0)
    logw = _christoffel(nodes, diag, off2)
    logw -= np.logaddexp.reduce(logw)
    w = np.exp(logw)
    for arr in (nodes, logw, w):
        arr.setflags(write=False)
    return GaussRule(nodes, w, logw, float(gammaln(a + 1)))


def gauss_laguerre(n: int, a: float) -> GaussRule:
    """Generalized Gauss--Laguerre rule for the weight x^a e^{-x} on (0, inf)."""
    if a <= -1:
        raise ValueError("Laguerre parameter must exceed -1")
    return _gauss_laguerre_cached(int(n), float(a))


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss--Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_legendre(edges, n: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Gauss--Legendre with ``n`` nodes on every panel between consecutive edges."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


# Gauss--Kronrod (7, 15) abscissae and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
_G_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk_panels(f, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = (mid[:, None] + half[:, None] * GK_NODES[None, :]).ravel()
    fx = np.asarray(f(x), dtype=float)
    extra = fx.shape[1:]
    fx = fx.reshape((a.size, GK_NODES.size) + extra)
    wk = GK_WEIGHTS.reshape((1, -1) + (1,) * len(extra))
    wg = _G_WEIGHTS.reshape((1, -1) + (1,) * len(extra))
    h = half.reshape((-1,) + (1,) * len(extra))
    kron = h * np.sum(wk * fx, axis=1)
    gauss = h * np.sum(wg * fx[:, _G_IDX], axis=1)
    err = np.abs(kron - gauss)
    if err.ndim > 1:
        err = err.reshape(a.size, -1).max(axis=1)
    return kron, err


def adaptive_gk(f, a: float, b: float, rtol: float = 1e-10, atol: float = 0.0,
                breakpoints=None, initial: int = 4, max_panels: int = 20000):
    """Vectorized adaptive Gauss--Kronrod quadrature of ``f`` over [a, b].

    Returns ``(value, error_estimate)``.  ``value`` has the trailing shape of
    ``f``'s output.  Raises :class:`QuadratureError` when ``max_panels`` is
    exhausted before the tolerance is met.
    """
    edges = [a]
    if breakpoints is not None:
        edges += sorted(p for p in breakpoints if a < p < b)
    edges.append(b)
    lo_list, hi_list = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        cuts = np.linspace(lo, hi, initial + 1)
        lo_list.append(cuts[:-1])
        hi_list.append(cuts[1:])
    lo = np.concatenate(lo_list)
    hi = np.concatenate(hi_list)
    vals, errs = _gk_panels(f, lo, hi)
    while True:
        total = vals.sum(axis=0)
        scale = float(np.max(np.abs(total))) if np.ndim(total) else abs(float(total))
        tol = max(atol, rtol * scale)
        err_total = float(errs.sum())
        if err_total <= tol:
            return total, err_total
        if lo.size >= max_panels:
            raise QuadratureError(
                f"adaptive_gk: {lo.size} panels, error {err_total:.3e} > tolerance {tol:.3e}"
            )
        # split every panel that carries more than its fair share of the budget
        share = tol / lo.size
        bad = errs > share
        if not np.any(bad):
            bad = errs >= errs.max()
        mid = 0.5 * (lo[bad] + hi[bad])
        nlo = np.concatenate([lo[bad], mid])
        nhi = np.concatenate([mid, hi[bad]])
        nv, ne = _gk_panels(f, nlo, nhi)
        keep = ~bad
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])


def _log_panel_sums(logf, pair, lo, hi, region):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    u = mid[:, None] + half[:, None] * GK_NODES[None, :]
    lf = logf(np.repeat(pair, GK_NODES.size), np.repeat(region, GK_NODES.size), u.ravel())
    lf = np.asarray(lf, dtype=float).reshape(u.shape)
    with np.errstate(divide="ignore"):
        lh = np.log(half)[:, None]
        lk = _logsumexp_rows(lf + np.log(GK_WEIGHTS)[None, :] + lh)
        lg = _logsumexp_rows(lf[:, _G_IDX] + np.log(_G_WEIGHTS)[None, :] + lh)
        diff = np.where(np.isfinite(lk), np.abs(np.expm1(lg - lk)), 0.0)
        lerr = np.where(np.isfinite(lk), lk + np.log(diff), -np.inf)
    return lk, lerr


def _logsumexp_rows(a):
    m = np.max(a, axis=1)
    safe = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(divide="ignore"):
        return np.where(np.isfinite(m), safe + np.log(np.sum(np.exp(a - safe[:, None]), axis=1)), -np.inf)


def batched_log_gk(logf, pair, lo, hi, region, npairs: int, rtol: float = 1e-10,
                   max_rounds: int = 60):
    """Adaptive Gauss--Kronrod for many positive integrands given as logs.

    ``logf(pair, region, u)`` returns log f at abscissae ``u`` for integrand
    number ``pair`` (``region`` is an opaque tag passed through, e.g. which
    substitution applies).  The initial partition is the list of panels
    ``(pair[i], region[i], lo[i], hi[i])``; panels are bisected until every
    integrand's estimated relative error is below ``rtol``.

    Returns ``(log_integral, rel_error)`` arrays of length ``npairs``.
    """
    pair = np.asarray(pair, dtype=np.intp)
    region = np.asarray(region, dtype=np.intp)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    keep = hi > lo
    pair, region, lo, hi = pair[keep], region[keep], lo[keep], hi[keep]
    lk, lerr = _log_panel_sums(logf, pair, lo, hi, region)
    for _ in range(max_rounds):
        ref = np.full(npairs, -np.inf)
        np.maximum.at(ref, pair, lk)
        ref_safe = np.where(np.isfinite(ref), ref, 0.0)
        tot = np.zeros(npairs)
        err = np.zeros(npairs)
        np.add.at(tot, pair, np.exp(lk - ref_safe[pair]))
        np.add.at(err, pair, np.exp(lerr - ref_safe[pair]))
        count = np.bincount(pair, minlength=npairs)
        ok = (err <= rtol * tot) | ~np.isfinite(ref)
        if ok.all():
            break
        share = rtol * tot[pair] / np.maximum(count[pair], 1)
        bad = ~ok[pair] & (np.exp(lerr - ref_safe[pair]) > share)
        mid = 0.5 * (lo[bad] + hi[bad])
        npair = np.concatenate([pair[bad], pair[bad]])
        nreg = np.concatenate([region[bad], region[bad]])
        nlo = np.concatenate([lo[bad], mid])
        nhi = np.concatenate([mid, hi[bad]])
        nk, ne = _log_panel_sums(logf, npair, nlo, nhi, nreg)
        good = ~bad
        pair = np.concatenate([pair[good], npair])
        region = np.concatenate([region[good], nreg])
        lo = np.concatenate([lo[good], nlo])
        hi = np.concatenate([hi[good], nhi])
        lk = np.concatenate([lk[good], nk])
        lerr = np.concatenate([lerr[good], ne])
    else:
        raise QuadratureError(f"batched_log_gk: {int((~ok).sum())} integrands above rtol={rtol}")
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(tot > 0, err / tot, 0.0)
        return np.where(np.isfinite(ref), ref_safe + np.log(tot), -np.inf), rel
