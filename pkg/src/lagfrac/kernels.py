"""Heat kernels of the two Laguerre systems.

The Hermite-type kernel has the closed form

    G_t(x, y) = (sinh 2t)^-1 exp(-coth(2t) (x^2 + y^2) / 2) (xy)^(1/2) I_alpha(xy / sinh 2t)

per coordinate.  Writing xi = tanh t (Meda's variable) the hyperbolic
functions become rational in xi and the exponent separates into
-(x-y)^2/(4 xi) - xi (x+y)^2/4 plus the exponentially scaled Bessel
function, which is how everything below is evaluated: as a log, with
1 - xi^2 supplied by the caller so that it never suffers cancellation.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .specfun import (
    DomainError,
    FracParams,
    _atomic, _plan,
    log_ive,
)
from . import _core

__all__ = [
    "MedaPoint",
    "QuadForms",
    "meda_forward",
    "meda_inverse",
    "quad_forms",
    "log_heat_kernel_xi",
    "heat_kernel_hermite",
    "log_heat_kernel_hermite",
    "heat_kernel_hermite_meda",
    "heat_kernel_convolution",
    "log_heat_kernel_convolution",
    "SeriesValue",
    "heat_kernel_series",
    "laguerre_function_table",
]

XI_CLAMP = 1e-12


@dataclass(frozen=True)
class MedaPoint:
    """A consistent pair (xi, t) with xi = tanh(t)."""

    xi: float
    t: float


@dataclass(frozen=True)
class QuadForms:
    qplus: float
    qminus: float


def meda_forward(xi: float) -> MedaPoint:
    if not 0.0 < xi < 1.0:
        raise DomainError(f"xi must lie in (0, 1), got {xi}")
    return MedaPoint(float(xi), float(math.atanh(xi)))


def meda_inverse(t: float) -> MedaPoint:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    return MedaPoint(float(math.tanh(t)), float(t))


def quad_forms(x, y, s) -> QuadForms:
    """q_plus and q_minus of points x, y and a vector s in [-1, 1]^n."""
    x, y, s = (np.atleast_1d(np.asarray(v, dtype=float)) for v in (x, y, s))
    base = float(x @ x + y @ y)
    cross = 2.0 * float(np.sum(x * y * s))
    return QuadForms(base + cross, base - cross)


def _xi_terms(t):
    """xi = tanh t and 1 - xi^2 = sech^2 t, both without cancellation."""
    t = np.asarray(t, dtype=float)
    e = np.exp(-2.0 * t)
    xi = np.tanh(t)
    omx2 = 4.0 * e / (1.0 + e) ** 2
    return xi, omx2


def log_heat_kernel_xi(nu: float, xi, omx2, x, y, diff=None):
    """log G^H for one coordinate of order ``nu`` at Meda variable ``xi``.

    ``omx2`` must equal 1 - xi^2 (passed separately for accuracy near xi = 1).
    All arguments broadcast; ``x`` and ``y`` must be positive.  ``diff``, when
    given, is x - y computed by the caller without cancellation; it matters
    when xi is tiny and the Gaussian factor is steep.
    """
    xi = np.asarray(xi, dtype=float)
    omx2 = np.asarray(omx2, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xy = x * y
    ratio = omx2 / (2.0 * xi)
    z = xy * ratio
    shape = np.broadcast(xi, omx2, x, y).shape
    zb = np.broadcast_to(z, shape)
    d = x - y if diff is None else np.asarray(diff, dtype=float)
    out = (np.log(ratio) - d ** 2 / (4.0 * xi) - xi * (x + y) ** 2 / 4.0
           + 0.5 * np.log(xy) + log_ive(nu, np.array(zb)))
    return out


def _split_points(params: FracParams, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if params.n == 1:
        if x.ndim == 0 or x.shape[-1:] != (1,):
            x = x[..., None]
        if y.ndim == 0 or y.shape[-1:] != (1,):
            y = y[..., None]
    if x.shape[-1] != params.n or y.shape[-1] != params.n:
        raise DomainError(f"points must have {params.n} coordinates")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("kernel arguments must have positive coordinates")
    return x, y


def _scalarize(v):
    return float(v) if np.ndim(v) == 0 else v


def log_heat_kernel_hermite(params: FracParams, t, x, y):
    """log G^H_{alpha,t}(x, y); ``x``, ``y`` have trailing axis of length n (or scalars if n = 1)."""
    if np.any(np.asarray(t) <= 0):
        raise DomainError("t must be positive")
    x, y = _split_points(params, x, y)
    xi, omx2 = _xi_terms(t)
    total = 0.0
    for i, nu in enumerate(params.shifted_alpha):
        total = total + log_heat_kernel_xi(float(nu), xi, omx2, x[..., i], y[..., i])
    return _scalarize(total)


def heat_kernel_hermite(params: FracParams, t, x, y):
    """G^H_{alpha,t}(x, y), assembled as a single log then exponentiated."""
    return _scalarize(np.exp(log_heat_kernel_hermite(params, t, x, y)))


def log_heat_kernel_convolution(params: FracParams, t, x, y):
    x, y = _split_points(params, x, y)
    lg = log_heat_kernel_hermite(params, t, x, y)
    shift = params.shifted_alpha + 0.5
    return _scalarize(lg - np.sum(shift * np.log(x * y), axis=-1))


def heat_kernel_convolution(params: FracParams, t, x, y):
    """G_{alpha,t}(x, y) = G^H_{alpha,t}(x, y) (xy)^(-alpha-1/2)."""
    return _scalarize(np.exp(log_heat_kernel_convolution(params, t, x, y)))


def _log_schlafli_gj(nu: float, z: float, rtol: float = 1e-13, max_nodes: int = 8192) -> float:
    """log of int exp(-z s) dPi_nu(s) by pure Gauss-Jacobi, doubled to convergence."""
    mass = -nu * math.log(2.0) - math.lgamma(nu + 1.0)
    if _atomic(nu):
        return mass + z + math.log(0.5) + math.log1p(math.exp(-2.0 * z))
    n = 64
    zz = np.array([z])
    prev = None
    while n <= max_nodes:
        p = _plan(nu, n)
        cur = float(_core.log_gegenbauer_sum(zz, p.g_nodes, p.g_logw)[0])
        if prev is not None and abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return mass + z + cur
        prev = cur
        n *= 2
    raise RuntimeError(f"Gauss-Jacobi Schlafli quadrature did not converge for z = {z}")


def heat_kernel_hermite_meda(params: FracParams, xi: float, x, y) -> float:
    """G^H at t(xi) from the Schlafli form of the kernel.

    The integral over [-1, 1]^n against dPi_alpha is a tensor-product
    Gauss-Jacobi rule; the integrand exp(-q_+/(4xi) - xi q_-/4) is a product
    of one-dimensional factors, so the tensor rule equals the product of the
    one-dimensional rules and is evaluated that way.
    """
    if not 0.0 < xi < 1.0:
        raise DomainError(f"xi must lie in (0, 1), got {xi}")
    xi = min(max(xi, XI_CLAMP), 1.0 - XI_CLAMP)
    x, y = _split_points(params, x, y)
    x = x.reshape(-1)
    y = y.reshape(-1)
    omx2 = (1.0 - xi) * (1.0 + xi)
    alpha = params.shifted_alpha
    log_val = float(np.sum((alpha + 0.5) * np.log(x * y)))
    log_val += (params.n + float(alpha.sum())) * math.log(omx2 / (2.0 * xi))
    for xi_, yi_, nu in zip(x, y, alpha):
        # exp(-q_+/(4xi) - xi q_-/4) = exp(-(x^2+y^2)(1+xi^2)/(4xi)) exp(-z s)
        z = xi_ * yi_ * omx2 / (2.0 * xi)
        log_val += -(xi_ ** 2 + yi_ ** 2) * (1.0 + xi * xi) / (4.0 * xi)
        log_val += _log_schlafli_gj(float(nu), z)
    return math.exp(log_val)


# -- spectral oracle --------------------------------------------------------

def laguerre_function_table(kmax: int, alpha: float, x, system: str = "hermite") -> np.ndarray:
    """Rows k = 0..kmax of phi_k^alpha(x) (``system='hermite'``) or ell_k^alpha(x).

    Uses the recurrence of the normalized functions, which stays O(1) in
    magnitude, seeded in log form.
    """
    x = np.asarray(x, dtype=float)
    X = x * x
    out = np.empty((kmax + 1,) + x.shape)
    with np.errstate(divide="ignore"):
        power = (alpha + 0.5) * np.log(x) if system == "hermite" else 0.0
    log0 = 0.5 * (math.log(2.0) - math.lgamma(alpha + 1.0)) - 0.5 * X + power
    if system == "hermite" and alpha == -0.5:
        log0 = 0.5 * (math.log(2.0) - math.lgamma(alpha + 1.0)) - 0.5 * X
    out[0] = np.exp(log0)
    if kmax >= 1:
        out[1] = (1.0 + alpha - X) / math.sqrt(1.0 + alpha) * out[0]
    for m in range(1, kmax):
        out[m + 1] = ((2 * m + 1 + alpha - X) * out[m]
                      - math.sqrt(m * (m + alpha)) * out[m - 1]) / math.sqrt((m + 1) * (m + 1 + alpha))
    return out


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail: float
    terms: int


def _level_sums(tables_x, tables_y, M):
    # S_m = sum_{|k| = m} prod_i f_{k_i}(x_i) f_{k_i}(y_i)
    level = None
    for tx, ty in zip(tables_x, tables_y):
        prod = tx * ty
        level = prod if level is None else np.convolve(level, prod)[: M + 1]
    return level


def _mp_function_table(kmax, alpha, x, system):
    import mpmath as mp

    a = mp.mpf(alpha)
    x = mp.mpf(x)
    X = x * x
    seed = mp.sqrt(2 / mp.gamma(a + 1)) * mp.exp(-X / 2)
    if system == "hermite":
        seed *= x ** (a + mp.mpf(1) / 2)
    out = [seed]
    if kmax >= 1:
        out.append((1 + a - X) / mp.sqrt(1 + a) * seed)
    for m in range(1, kmax):
        out.append(((2 * m + 1 + a - X) * out[m] - mp.sqrt(m * (m + a)) * out[m - 1])
                   / mp.sqrt((m + 1) * (m + 1 + a)))
    return out


def _series_extended(system, params, t, xs, ys, M, digits):
    import mpmath as mp

    with mp.workdps(digits):
        level = None
        for a, xv, yv in zip(params.shifted_alpha, xs, ys):
            fx = _mp_function_table(M, float(a), float(xv), system)
            fy = _mp_function_table(M, float(a), float(yv), system)
            prod = [u * v for u, v in zip(fx, fy)]
            if level is None:
                level = prod
            else:
                level = [mp.fsum(level[i] * prod[m - i] for i in range(m + 1)) for m in range(M + 1)]
        shift = 2 * mp.mpf(float(params.shifted_alpha.sum())) + 2 * params.n
        terms = [mp.exp(-mp.mpf(t) * (4 * m + shift)) * level[m] for m in range(M + 1)]
        return float(mp.fsum(terms)), [float(v) for v in terms]


def heat_kernel_series(system: str, params: FracParams, t: float, x, y, M: int = 60,
                       precision: str = "double") -> SeriesValue:
    """Truncated eigenfunction expansion of the heat kernel, |k| <= M.

    The reported ``tail`` is a geometric estimate of the neglected levels,
    (largest of the last two level terms) * r / (1 - r) with r = e^(-4t).

    Where the kernel is small against its individual terms (points far
    apart) the double-precision sum loses digits to cancellation;
    ``precision="extended"`` evaluates the same truncated sum with 40-digit
    arithmetic (mpmath) and rounds once at the end.
    """
    if system not in ("hermite", "convolution"):
        raise DomainError(f"unknown system {system!r}")
    if M < 0 or t <= 0:
        raise DomainError("need M >= 0 and t > 0")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    if len(xs) != params.n or len(ys) != params.n:
        raise DomainError(f"points must have {params.n} coordinates")
    alpha = params.shifted_alpha
    if precision == "extended":
        value, terms = _series_extended(system, params, t, xs, ys, M, 40)
        terms = np.asarray(terms)
    elif precision == "double":
        tx = [laguerre_function_table(M, float(a), xv, system) for a, xv in zip(alpha, xs)]
        ty = [laguerre_function_table(M, float(a), yv, system) for a, yv in zip(alpha, ys)]
        level = _level_sums(tx, ty, M)
        m = np.arange(M + 1)
        lam = 4.0 * m + 2.0 * float(alpha.sum()) + 2.0 * params.n
        terms = np.exp(-t * lam) * level
        value = math.fsum(terms)
    else:
        raise DomainError(f"precision must be 'double' or 'extended', got {precision!r}")
    r = math.exp(-4.0 * t)
    last = float(np.max(np.abs(terms[-2:])))
    return SeriesValue(value, last * r / (1.0 - r), M + 1)
