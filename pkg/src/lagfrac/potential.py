"""Potential kernels, the comparison kernels K_sigma, cal-K and overline-K, and
bound certificates for the kernel estimates.

Every xi-integral over (0, 1) is split at xi = 1/2.  On (0, 1/2) we put
xi = e^(-v); on (1/2, 1) we put 1 - xi^2 = e^(-w), so that xi, 1 - xi^2 and
t = atanh(xi) are all available without cancellation.  Integrands are
positive and are integrated as logs by :func:`quadrature.batched_log_gk`,
many (x, y) pairs at a time.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import gammaln

from .grids import GridSpec, DIAGONAL_FLOOR
from .kernels import log_heat_kernel_xi
from .quadrature import batched_log_gk, gauss_jacobi, gauss_legendre
from .specfun import DomainError, FracParams

__all__ = [
    "PreconditionError",
    "DivergenceError",
    "BoundCertificate",
    "log_potential_kernel_hermite",
    "potential_kernel_hermite",
    "log_potential_kernel_convolution",
    "potential_kernel_convolution",
    "k_sigma",
    "cal_k",
    "log_overline_k",
    "overline_k",
    "overline_moment",
    "heat_bound_ratio",
    "certify_heat_bound",
    "certify_prop_estimacion",
    "certify_prop_mathK",
    "certify_lemma_kernelexp",
    "certify_lemma_kernelexp2",
    "certify_overline_moment",
]

C_EXP_DEFAULT = 1.0 / 16.0
LOG_BRANCH_CONSTANT = math.e
MAGNITUDE_CAP = 1e300

_LOG2 = math.log(2.0)
_W0 = math.log(4.0 / 3.0)  # w at xi = 1/2


class PreconditionError(DomainError):
    """Operation called outside the parameter range where it is defined."""


class DivergenceError(ArithmeticError):
    """The defining integral does not converge for the given input."""


# -- the Meda variable on the two halves of (0, 1) ---------------------------

def _meda_nodes(region, u):
    """(xi, 1 - xi^2, t, log dxi/du) for region 0 (v) or 1 (w)."""
    u = np.asarray(u, dtype=float)
    region = np.asarray(region)
    a = region == 0
    xi = np.empty_like(u)
    omx2 = np.empty_like(u)
    t = np.empty_like(u)
    ljac = np.empty_like(u)
    v = u[a]
    xi[a] = np.exp(-v)
    omx2[a] = -np.expm1(-2.0 * v)
    t[a] = np.arctanh(xi[a])
    ljac[a] = -v
    b = ~a
    w = u[b]
    omx2[b] = np.exp(-w)
    xi[b] = np.sqrt(-np.expm1(-w))
    t[b] = np.log1p(xi[b]) + 0.5 * w
    ljac[b] = -w - np.log(2.0 * xi[b])
    return xi, omx2, t, ljac


def _initial_panels(npairs, vmax, wmax, xi_star=None, width=None, pieces=6):
    """Initial partition of the v and w ranges for every pair, with extra
    breakpoints around the location ``xi_star`` of the Gaussian peak."""
    vmax = np.broadcast_to(np.asarray(vmax, dtype=float), (npairs,))
    wmax = np.broadcast_to(np.asarray(wmax, dtype=float), (npairs,))
    frac = np.linspace(0.0, 1.0, pieces + 1)
    ev = _LOG2 + (vmax - _LOG2)[:, None] * frac[None, :]
    ew = _W0 + (wmax - _W0)[:, None] * frac[None, :]
    if xi_star is not None:
        xs = np.clip(np.asarray(xi_star, dtype=float), 1e-300, 1.0 - 1e-16)
        h = np.asarray(width, dtype=float)
        offs = np.array([-6.0, -2.0, 0.0, 2.0, 6.0])
        vstar = -np.log(xs)
        extra_v = np.clip(vstar[:, None] + h[:, None] * offs[None, :], _LOG2, vmax[:, None])
        wstar = -np.log1p(-xs * xs)
        extra_w = np.clip(wstar[:, None] + np.array([-2.0, -0.5, 0.0, 0.5, 2.0])[None, :],
                          _W0, wmax[:, None])
        ev = np.sort(np.concatenate([ev, extra_v], axis=1), axis=1)
        ew = np.sort(np.concatenate([ew, extra_w], axis=1), axis=1)
    k_v = ev.shape[1] - 1
    k_w = ew.shape[1] - 1
    idx = np.arange(npairs)
    pair = np.concatenate([np.repeat(idx, k_v), np.repeat(idx, k_w)])
    region = np.concatenate([np.zeros(npairs * k_v, dtype=np.intp), np.ones(npairs * k_w, dtype=np.intp)])
    lo = np.concatenate([ev[:, :-1].ravel(), ew[:, :-1].ravel()])
    hi = np.concatenate([ev[:, 1:].ravel(), ew[:, 1:].ravel()])
    return pair, region, lo, hi


def _xi_integral(log_integrand, npairs, vmax, wmax, xi_star=None, width=None, rtol=1e-10):
    """log of int_0^1 exp(log_integrand(pair, xi, 1-xi^2, t)) dxi for each pair."""
    pair, region, lo, hi = _initial_panels(npairs, vmax, wmax, xi_star, width)

    def logf(p, r, u):
        xi, omx2, t, ljac = _meda_nodes(r, u)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = log_integrand(p, xi, omx2, t) + ljac
        return np.where(np.isnan(out), -np.inf, out)

    return batched_log_gk(logf, pair, lo, hi, region, npairs, rtol=rtol)


# -- potential kernels -------------------------------------------------------

def _as_points(params: FracParams, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0 if params.n == 1 else (x.ndim == 1 and y.ndim == 1)
    if params.n == 1:
        x = x.reshape(-1, 1) if x.ndim <= 1 else x
        y = y.reshape(-1, 1) if y.ndim <= 1 else y
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    x, y = np.broadcast_arrays(x, y)
    if x.shape[-1] != params.n:
        raise DomainError(f"points must have {params.n} coordinates")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("kernel arguments must have positive coordinates")
    return x.reshape(-1, params.n), y.reshape(-1, params.n), scalar


def _peak(d, s):
    with np.errstate(divide="ignore", invalid="ignore"):
        xi_star = np.where(s > 0, d / s, 0.5)
    width = 1.0 / np.sqrt(0.5 * d * s + 1.0)
    return np.clip(xi_star, 1e-300, 1.0 - 1e-16), width


def log_potential_kernel_hermite(params: FracParams, x, y, rtol: float = 1e-10,
                                 return_error: bool = False):
    """log H^H_{alpha,sigma}(x, y) for arrays of point pairs.

    On the diagonal x = y the integral converges only for sigma > n/2; there
    the small-xi end is truncated where xi^(sigma - n/2) drops below 1e-30
    and the neglected piece is added from the leading small-t behaviour.
    """
    x, y, scalar = _as_points(params, x, y)
    sigma = params.sigma
    n = params.n
    alpha = params.shifted_alpha
    npairs = x.shape[0]
    d2 = np.sum((x - y) ** 2, axis=1)
    s2 = np.sum((x + y) ** 2, axis=1)
    d, s = np.sqrt(d2), np.sqrt(s2)
    on_diag = d2 == 0
    if np.any(on_diag) and sigma <= n / 2:
        raise DivergenceError(
            f"potential kernel diverges on the diagonal for sigma = {sigma} <= n/2 = {n / 2}")
    excess = sigma - n / 2
    with np.errstate(divide="ignore"):
        vmax = np.where(on_diag, min(600.0, 70.0 / excess if excess > 0 else 600.0),
                        np.log(4.0 * (80.0 + 2 * n) / np.where(on_diag, 1.0, d2)))
    vmax = np.clip(vmax, _LOG2 + 1.0, 600.0)
    rate = n + float(alpha.sum())
    xy_max = np.max(x * y, axis=1)
    wmax = np.log1p(xy_max) + 75.0 / rate + 5.0
    xi_star, width = _peak(d, s)
    lg_sigma = math.lgamma(sigma)

    def log_integrand(p, xi, omx2, t):
        lg = 0.0
        for i, nu in enumerate(alpha):
            lg = lg + log_heat_kernel_xi(float(nu), xi, omx2, x[p, i], y[p, i])
        return (sigma - 1.0) * np.log(t) - lg_sigma + lg - np.log(omx2)

    out, err = _xi_integral(log_integrand, npairs, vmax, wmax, xi_star, width, rtol)
    if np.any(on_diag):
        # beyond vmax the integrand is C xi^(sigma - n/2) in dxi/xi = dv
        idx = np.nonzero(on_diag)[0]
        v_end = vmax[idx]
        xi_e, omx2_e, t_e, lj = _meda_nodes(np.zeros(idx.size, dtype=np.intp), v_end)
        tail = log_integrand(idx, xi_e, omx2_e, t_e) + lj - math.log(excess)
        out[idx] = np.logaddexp(out[idx], tail)
    if np.any(out > math.log(MAGNITUDE_CAP)):
        raise DivergenceError("potential kernel exceeds the magnitude cap; input is not integrable")
    if scalar:
        out, err = float(out[0]), float(err[0])
    return (out, err) if return_error else out


def potential_kernel_hermite(params: FracParams, x, y, rtol: float = 1e-10):
    """H^H_{alpha,sigma}(x, y) = (1/Gamma(sigma)) int_0^inf G^H_t(x, y) t^(sigma-1) dt."""
    return np.exp(log_potential_kernel_hermite(params, x, y, rtol))


def _require_convolution(params: FracParams):
    if params.n != 1:
        raise PreconditionError("convolution-type potential kernels are one-dimensional")
    nu = float(params.shifted_alpha[0])
    if not params.sigma < nu + 1.0:
        raise PreconditionError(
            f"need sigma < alpha + a j + 1 = {nu + 1.0:g}, got sigma = {params.sigma:g}")
    return nu


def log_potential_kernel_convolution(params: FracParams, x, y, rtol: float = 1e-10):
    nu = _require_convolution(params)
    lh = log_potential_kernel_hermite(params, x, y, rtol)
    return lh - (nu + 0.5) * np.log(np.asarray(x, dtype=float) * np.asarray(y, dtype=float))


def potential_kernel_convolution(params: FracParams, x, y, rtol: float = 1e-10):
    """H_{alpha,sigma}(x, y) = H^H_{alpha,sigma}(x, y) (xy)^(-alpha-1/2), n = 1."""
    return np.exp(log_potential_kernel_convolution(params, x, y, rtol))


# -- comparison kernels ------------------------------------------------------

def k_sigma(sigma: float, n: int, x, c_exp: float = C_EXP_DEFAULT):
    """K_sigma(x): Gaussian tail for |x| >= 1, local branch for |x| < 1.

    ``x`` is a point (trailing axis of length n) or, for n = 1, a scalar or
    array of signed reals.
    """
    x = np.asarray(x, dtype=float)
    r = np.abs(x) if (n == 1 and (x.ndim == 0 or x.shape[-1] != 1)) else np.sqrt(np.sum(x * x, axis=-1))
    if np.any(r == 0):
        raise DomainError("K_sigma is singular at the origin")
    with np.errstate(divide="ignore"):
        if sigma < n / 2:
            near = r ** (2.0 * sigma - n)
        elif sigma == n / 2:
            near = np.log(LOG_BRANCH_CONSTANT / r)
        else:
            near = np.ones_like(r)
    out = np.where(r >= 1.0, np.exp(-c_exp * r * r), near)
    return float(out) if np.ndim(out) == 0 else out


def log_cal_k(alpha: float, sigma: float, x, y, c_exp: float = C_EXP_DEFAULT):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = np.abs(x - y)
    s = x + y
    near = d < 1.0
    if sigma <= 0.5 and np.any(near & (d == 0)):
        raise DomainError("cal-K is singular on the diagonal for sigma <= 1/2")
    with np.errstate(divide="ignore", invalid="ignore"):
        if sigma < 0.5:
            lw = (2.0 * sigma - 1.0) * np.log(d)
        elif sigma == 0.5:
            lw = np.log(np.log(s / d))
        else:
            lw = np.minimum((2.0 * sigma - 1.0) * np.log(s), 0.0)
    out = -(2.0 * alpha + 1.0) * np.log(s) + np.where(near, lw, -c_exp * d * d)
    return float(out) if np.ndim(out) == 0 else out


def cal_k(alpha: float, sigma: float, x, y, c_exp: float = C_EXP_DEFAULT):
    """The comparison kernel (x+y)^(-2 alpha - 1) W_{alpha,sigma}(x, y) or Gaussian tail."""
    return np.exp(log_cal_k(alpha, sigma, x, y, c_exp))


# -- overline-K and its moment ----------------------------------------------

def log_overline_k(alpha: float, sigma: float, x, y, rtol: float = 1e-10):
    """log of the majorant kernel overline-K_{alpha,sigma}(x, y)."""
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    xa, ya = np.broadcast_arrays(xa, ya)
    xa, ya = xa.ravel(), ya.ravel()
    if np.any(xa <= 0) or np.any(ya <= 0):
        raise DomainError("overline-K needs x, y > 0")
    d = np.abs(xa - ya)
    s = xa + ya
    if np.any(d == 0) and sigma <= 0.5:
        raise DivergenceError("overline-K diverges on the diagonal for sigma <= 1/2")
    npairs = xa.size
    with np.errstate(divide="ignore"):
        vmax = np.where(d > 0, np.log(4.0 * 90.0 / np.where(d > 0, d * d, 1.0)),
                        min(600.0, 70.0 / (sigma - 0.5)) if sigma > 0.5 else 600.0)
    vmax = np.clip(vmax, _LOG2 + 1.0, 600.0)
    # (1 - xi^2)^(-1/2) (-log(1 - xi^2))^(sigma - 1) decays like e^(-w/2) in w
    wmax = np.full(npairs, 160.0)
    xi_star, width = _peak(d, s)

    def log_integrand(p, xi, omx2, t):
        return ((sigma - 1.0) * np.log(2.0 * t) - 0.5 * np.log(xi) - 0.5 * np.log(omx2)
                - d[p] ** 2 / (4.0 * xi) - xi * s[p] ** 2 / 4.0)

    out, _ = _xi_integral(log_integrand, npairs, vmax, wmax, xi_star, width, rtol)
    if np.any(d == 0):
        idx = np.nonzero(d == 0)[0]
        xi_e, omx2_e, t_e, lj = _meda_nodes(np.zeros(idx.size, dtype=np.intp), vmax[idx])
        tail = log_integrand(idx, xi_e, omx2_e, t_e) + lj - math.log(sigma - 0.5)
        out[idx] = np.logaddexp(out[idx], tail)
    out = out - (alpha + 0.5) * np.log(xa * ya)
    return float(out[0]) if np.ndim(x) == 0 and np.ndim(y) == 0 else out


def overline_k(alpha: float, sigma: float, x, y, rtol: float = 1e-10):
    return np.exp(log_overline_k(alpha, sigma, x, y, rtol))


def _log_gauss_power_moment(beta, A, y0):
    """log int_0^inf y^beta exp(-A (y - y0)^2) dy for arrays A > 0, y0 >= 0."""
    A = np.asarray(A, dtype=float)
    y0 = np.asarray(y0, dtype=float)
    out = np.empty(np.broadcast(A, y0).shape)
    A, y0 = np.broadcast_arrays(A, y0)
    half = 9.0 / np.sqrt(A)
    inner = y0 * np.sqrt(A) >= 18.0
    if np.any(inner):
        # window away from the origin: Gauss-Legendre on y0 +- 9/sqrt(A)
        g, w = gauss_legendre(64)
        c = y0[inner][:, None] + half[inner][:, None] * g[None, :]
        lf = beta * np.log(c) - A[inner][:, None] * (c - y0[inner][:, None]) ** 2
        m = lf.max(axis=1)
        out[inner] = m + np.log(np.sum(w[None, :] * np.exp(lf - m[:, None]), axis=1)) + np.log(half[inner])
    edge = ~inner
    if np.any(edge):
        # window reaching the origin: Gauss-Jacobi with the weight y^beta on [0, Y]
        Y = y0[edge] + half[edge]
        rule = gauss_jacobi(80, 0.0, beta)
        yv = 0.5 * Y[:, None] * (1.0 + rule.nodes[None, :])
        lf = -A[edge][:, None] * (yv - y0[edge][:, None]) ** 2 + rule.log_weights[None, :]
        m = lf.max(axis=1)
        out[edge] = (m + np.log(np.sum(np.exp(lf - m[:, None]), axis=1))
                     + rule.log_mass + (beta + 1.0) * np.log(0.5 * Y))
    return out


def overline_moment(alpha: float, sigma: float, x, rtol: float = 1e-10):
    """x^(2 sigma) int_0^inf overline-K_{alpha,sigma}(x, y) d mu_alpha(y).

    The y-integral is done first: for fixed xi the Gaussian factor is
    exp(-A (y - y0)^2 - B) with A = (1+xi^2)/(4 xi), y0 = x (1-xi^2)/(1+xi^2)
    and B = x^2 xi / (1 + xi^2), against y^(alpha + 1/2) dy.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(xa <= 0):
        raise DomainError("x must be positive")
    beta = alpha + 0.5
    npairs = xa.size

    def log_integrand(p, xi, omx2, t):
        A = (1.0 + xi * xi) / (4.0 * xi)
        y0 = xa[p] * omx2 / (1.0 + xi * xi)
        B = xa[p] ** 2 * xi / (1.0 + xi * xi)
        return ((sigma - 1.0) * np.log(2.0 * t) - 0.5 * np.log(xi) - 0.5 * np.log(omx2)
                - B + _log_gauss_power_moment(beta, A, y0))

    vmax = np.full(npairs, 70.0 / sigma + 2.0)
    wmax = np.full(npairs, 160.0)
    out, _ = _xi_integral(log_integrand, npairs, vmax, wmax, rtol=rtol)
    out = out + (2.0 * sigma - alpha - 0.5) * np.log(xa)
    res = np.exp(out)
    return float(res[0]) if np.ndim(x) == 0 else res


# -- certificates ------------------------------------------------------------

@dataclass
class BoundCertificate:
    """Sup of LHS/RHS ratios over a recorded sweep, with a pass verdict.

    ``rows`` holds one entry per sweep member: (sweep id, parameters dict,
    sup ratio, argmax x, argmax y).  ``sup_ratio`` and ``argmax_location``
    summarize the whole sweep.
    """

    name: str
    sup_ratio: float
    argmax_location: tuple
    sweep_descriptor: str
    passed: bool
    rows: list = field(default_factory=list)
    criterion: str = ""
    skipped: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_certificate_csv(self, buf)
        return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17e" % float(v)
    return str(v)


def write_certificate_csv(cert: BoundCertificate, fh) -> None:
    """Rows: sweep id, parameter tuple, sup_ratio, argmax x, argmax y, passed."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["certificate", "sweep_id", "parameters", "sup_ratio", "argmax_x", "argmax_y", "passed"])
    for sweep_id, params, ratio, ax, ay in cert.rows:
        ptxt = ";".join(f"{k}={_fmt(v)}" for k, v in params.items())
        w.writerow([cert.name, sweep_id, ptxt, _fmt(ratio), _fmt(ax), _fmt(ay), _fmt(cert.passed)])


def _argmax(log_ratio, xs, ys):
    k = int(np.argmax(log_ratio))
    return float(np.exp(log_ratio[k])), float(xs[k]), float(ys[k])


def _uniformity(values, base_count, band):
    values = np.asarray(values, dtype=float)
    top = float(values.max())
    base = float(values[:base_count].max())
    return top, base, bool(np.isfinite(top) and top <= band * base)


def heat_bound_ratio(alpha: Sequence[float] | float, xi, x, y):
    """G^H_{alpha,t(xi)}(x, y) / [((1-xi^2)/xi)^(n/2) exp(-|x-y|^2/(4xi) - xi|x+y|^2/4)].

    One-dimensional arguments broadcast; ``alpha`` may be a vector for the
    product kernel, with matching trailing axis on x and y.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    xi = np.asarray(xi, dtype=float)
    omx2 = (1.0 - xi) * (1.0 + xi)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if alpha.size == 1:
        x, y = x[..., None], y[..., None]
    lg = 0.0
    for i, nu in enumerate(alpha):
        lg = lg + log_heat_kernel_xi(float(nu), xi, omx2, x[..., i], y[..., i])
    n = alpha.size
    lb = (0.5 * n * np.log(omx2 / xi) - np.sum((x - y) ** 2, axis=-1) / (4.0 * xi)
          - xi * np.sum((x + y) ** 2, axis=-1) / 4.0)
    return np.exp(lg - lb)


def certify_heat_bound(alpha_sweep: Sequence[float], xi_grid: Sequence[float], grid: GridSpec,
                       base_max: float = 10.0, band: float = 1.05) -> BoundCertificate:
    """Kernel bound with an alpha-independent constant (n = 1).

    Passes when the sup over the whole alpha sweep is below ``band`` times
    the sup over the members with alpha <= ``base_max``.
    """
    alphas = np.asarray(sorted(alpha_sweep), dtype=float)
    if alphas.size == 0:
        raise DomainError("alpha sweep is empty")
    if np.any(alphas < -0.5):
        raise DomainError("alpha must be >= -1/2")
    xi = np.asarray(xi_grid, dtype=float)
    if np.any((xi <= 0) | (xi >= 1)):
        raise DomainError("xi grid must lie in (0, 1)")
    g = grid.nodes()
    X, Y, Xi = np.meshgrid(g, g, xi, indexing="ij")
    rows, sups = [], []
    best = (-1.0, None)
    for i, a in enumerate(alphas):
        r = heat_bound_ratio(a, Xi, X, Y).ravel()
        k = int(np.argmax(r))
        loc = (float(X.ravel()[k]), float(Y.ravel()[k]), float(Xi.ravel()[k]))
        rows.append((i, {"alpha": a}, float(r[k]), loc[0], loc[1]))
        sups.append(float(r[k]))
        if r[k] > best[0]:
            best = (float(r[k]), (a,) + loc)
    base_count = int(np.sum(alphas <= base_max)) or 1
    top, base, ok = _uniformity(sups, base_count, band)
    desc = f"heat-bound alpha={list(alphas)} xi={xi.size}pts grid={grid.describe()}"
    return BoundCertificate("heat_bound", top, best[1], desc, ok, rows,
                            f"sup(all) <= {band} * sup(alpha <= {base_max}) = {band * base:.6g}")


def certify_prop_estimacion(alpha_sweep: Sequence[float], sigma: float, grid: GridSpec,
                            c_exp: float = C_EXP_DEFAULT, n: int = 1, band: float = 1.05,
                            rtol: float = 1e-10) -> BoundCertificate:
    """sup H^H_{alpha,sigma}(x,y) / K_sigma(x-y) over an alpha sweep (n = 1).

    Passes when the sup over all alphas is below ``band`` times the sup over
    the first quartile of the (sorted) sweep.
    """
    if n != 1:
        raise DomainError("only n = 1 grids are supported by this certificate")
    alphas = np.asarray(sorted(alpha_sweep), dtype=float)
    if alphas.size == 0:
        raise DomainError("alpha sweep is empty")
    xs, ys = grid.pairs()
    skipped = []
    rows, sups = [], []
    best = (-np.inf, None)
    lk = np.log(k_sigma(sigma, 1, xs - ys, c_exp))
    for i, a in enumerate(alphas):
        p = FracParams(1, a, sigma)
        lh = log_potential_kernel_hermite(p, xs, ys, rtol)
        lr = lh - lk
        ratio, ax, ay = _argmax(lr, xs, ys)
        rows.append((i, {"alpha": a, "sigma": sigma, "c_exp": c_exp}, ratio, ax, ay))
        sups.append(ratio)
        if ratio > best[0]:
            best = (ratio, (a, ax, ay))
    base_count = max(1, math.ceil(alphas.size / 4))
    top, base, ok = _uniformity(sups, base_count, band)
    desc = f"prop-estimacion alpha={list(alphas)} sigma={sigma} c_exp={c_exp} grid={grid.describe()}"
    return BoundCertificate("prop_estimacion", top, best[1], desc, ok, rows,
                            f"sup(all) <= {band} * sup(first quartile) = {band * base:.6g}", skipped)


def mathk_log_ratio(alpha: float, sigma: float, a: float, j: int, xs, ys,
                    c_exp: float = C_EXP_DEFAULT, rtol: float = 1e-10):
    """log of H_{alpha+aj,sigma}(x,y) (xy)^(aj) / cal-K_{alpha,sigma}(x,y)."""
    p = FracParams(1, alpha, sigma, a, j)
    _require_convolution(p)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    lh = log_potential_kernel_hermite(p, xs, ys, rtol)
    # H_{nu} (xy)^{aj} = H^H_{nu} (xy)^{-alpha-1/2}
    return lh - (alpha + 0.5) * np.log(xs * ys) - log_cal_k(alpha, sigma, xs, ys, c_exp)


def certify_prop_mathK(alpha: float, sigma: float, a: float, j_max: int, grid: GridSpec,
                       c_exp: float = C_EXP_DEFAULT, band: float = 1.1, base_j: int = 3,
                       j_min: int = 0, rtol: float = 1e-10) -> BoundCertificate:
    """Per-j sup of H_{alpha+aj,sigma}(x,y) (xy)^(aj) / cal-K_{alpha,sigma}(x,y).

    Passes when max over j_min <= j <= j_max is at most ``band`` times the
    max over j_min <= j <= base_j.
    """
    if not 0 < sigma < alpha + 1:
        raise PreconditionError(f"need 0 < sigma < alpha + 1 = {alpha + 1:g}")
    if a < 1:
        raise PreconditionError("need a >= 1")
    xs, ys = grid.pairs()
    rows, sups = [], []
    best = (-np.inf, None)
    for j in range(j_min, j_max + 1):
        lr = mathk_log_ratio(alpha, sigma, a, j, xs, ys, c_exp, rtol)
        ratio, ax, ay = _argmax(lr, xs, ys)
        rows.append((j, {"alpha": alpha, "sigma": sigma, "a": a, "j": j, "c_exp": c_exp}, ratio, ax, ay))
        sups.append(ratio)
        if ratio > best[0]:
            best = (ratio, (j, ax, ay))
    top, base, ok = _uniformity(sups, base_j - j_min + 1, band)
    desc = (f"prop-mathK alpha={alpha} sigma={sigma} a={a} j={j_min}..{j_max} "
            f"c_exp={c_exp} grid={grid.describe()}")
    return BoundCertificate("prop_mathK", top, best[1], desc, ok, rows,
                            f"max_j<={j_max} <= {band} * max_j<={base_j} = {band * base:.6g}")


def _log_kernelexp_rhs(alpha, a, j, xi, x, y):
    aj = a * j
    omx2 = (1.0 - xi) * (1.0 + xi)
    return (gammaln(aj) - gammaln(alpha + aj + 0.5) - (x - y) ** 2 / (8.0 * xi)
            + (alpha + 1.0) * (np.log(omx2) - np.log(xi))
            - (2.0 * alpha + 1.0) * np.log(np.abs(x * x - y * y)) - aj * np.log(x * y))


def _log_conv_heat(nu, xi, x, y):
    omx2 = (1.0 - xi) * (1.0 + xi)
    return log_heat_kernel_xi(nu, xi, omx2, x, y) - (nu + 0.5) * np.log(x * y)


def _lemma_cert(name, alpha, a, js, xi_grid, xs, ys, log_rhs, region_ok, band, base_j):
    js = [int(j) for j in np.atleast_1d(js)]
    if any(j < 1 for j in js):
        raise PreconditionError("the lemma needs j >= 1")
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if not np.all(region_ok(xs, ys)):
        raise PreconditionError(f"grid leaves the region of {name}")
    xi = np.asarray(xi_grid, dtype=float)
    X = np.repeat(xs, xi.size)
    Y = np.repeat(ys, xi.size)
    XI = np.tile(xi, xs.size)
    rows, sups = [], []
    best = (-np.inf, None)
    for j in js:
        nu = alpha + a * j
        lr = _log_conv_heat(nu, XI, X, Y) - log_rhs(alpha, a, j, XI, X, Y)
        k = int(np.argmax(lr))
        ratio = float(np.exp(lr[k]))
        rows.append((j, {"alpha": alpha, "a": a, "j": j}, ratio, float(X[k]), float(Y[k])))
        sups.append(ratio)
        if ratio > best[0]:
            best = (ratio, (j, float(X[k]), float(Y[k]), float(XI[k])))
    nbase = sum(1 for j in js if j <= base_j) or 1
    top, base, ok = _uniformity(sups, nbase, band)
    desc = f"{name} alpha={alpha} a={a} j={js} xi={xi.size}pts pairs={xs.size}"
    return BoundCertificate(name, top, best[1], desc, ok, rows,
                            f"max_j <= {band} * max_(j<={base_j}) = {band * base:.6g}")


def certify_lemma_kernelexp(alpha: float, a: float, j, xi_grid, xs, ys,
                            band: float = 1.1, base_j: int = 3) -> BoundCertificate:
    """Gaussian-tail heat kernel bound on the region |x - y| >= 1."""
    return _lemma_cert("lemma_kernelexp", alpha, a, j, xi_grid, xs, ys, _log_kernelexp_rhs,
                       lambda x, y: np.abs(x - y) >= 1.0, band, base_j)


def _log_kernelexp2_rhs(alpha, a, j, xi, x, y):
    omx2 = (1.0 - xi) * (1.0 + xi)
    return 0.5 * (np.log(omx2) - np.log(xi)) - (a * j + alpha + 0.5) * np.log(x * y)


def certify_lemma_kernelexp2(alpha: float, a: float, j, xi_grid, xs, ys,
                             band: float = 1.1, base_j: int = 3) -> BoundCertificate:
    """Heat kernel bound on the region |x - y| < 1, x + y > 2."""
    return _lemma_cert("lemma_kernelexp2", alpha, a, j, xi_grid, xs, ys, _log_kernelexp2_rhs,
                       lambda x, y: (np.abs(x - y) < 1.0) & (x + y > 2.0), band, base_j)


def certify_overline_moment(cases: Iterable[tuple[float, float]], x_grid, ceiling: float,
                            rtol: float = 1e-10) -> BoundCertificate:
    """x^(2 sigma) int overline-K dmu_alpha <= ceiling on the x grid, per (alpha, sigma)."""
    cases = [tuple(c) for c in cases]
    x = np.asarray(x_grid, dtype=float)
    rows = []
    best = (-np.inf, None)
    for i, (alpha, sigma) in enumerate(cases):
        m = np.atleast_1d(overline_moment(alpha, sigma, x, rtol))
        k = int(np.argmax(m))
        rows.append((i, {"alpha": alpha, "sigma": sigma}, float(m[k]), float(x[k]), float("nan")))
        if m[k] > best[0]:
            best = (float(m[k]), (alpha, sigma, float(x[k])))
    ok = bool(np.isfinite(best[0]) and best[0] <= ceiling)
    desc = f"overline-moment cases={list(cases)} x={x.size}pts [{x.min():g},{x.max():g}]"
    return BoundCertificate("overline_moment", best[0], best[1], desc, ok, rows, f"sup <= {ceiling:g}")
