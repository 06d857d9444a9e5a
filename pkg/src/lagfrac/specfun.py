"""Special functions: Laguerre polynomials and functions, Hermite functions,
modified Bessel functions of the first kind, log-Gamma, and spherical
harmonic dimensions.

Everything that can overflow is assembled in the log domain.  Eigenfunction
normalizations ``sqrt(2 k! / Gamma(k + alpha + 1))`` are combined with the
polynomial's own scale exponent before a single exponentiation, so orders
in the thousands stay finite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from . import _core
from .quadrature import gauss_jacobi, gauss_laguerre

__all__ = [
    "LaguerreIndex",
    "FracParams",
    "DomainError",
    "laguerre_poly",
    "log_gamma",
    "log_norm",
    "phi_hermite_type",
    "ell_convolution_type",
    "hermite_function",
    "hermite_functions",
    "BesselI",
    "bessel_i",
    "log_ive",
    "dim_spherical_harmonics",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function."""


@dataclass(frozen=True)
class LaguerreIndex:
    """Degree ``k`` and order ``alpha`` of a one-dimensional Laguerre function."""

    k: int
    alpha: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.k}")
        if not self.alpha > -1:
            raise DomainError(f"order must exceed -1, got {self.alpha}")


@dataclass(frozen=True)
class FracParams:
    """Parameter bundle (n, alpha, sigma, a, j) for the weighted operator family.

    ``alpha`` is stored as a tuple of length ``n``; a scalar is broadcast.
    The shifted order ``alpha + a*j`` and the weight ``u_j(x) = x**(a*j)``
    are derived on demand.
    """

    n: int = 1
    alpha: Sequence[float] | float = 0.0
    sigma: float = 1.0
    a: float = 1.0
    j: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.n}")
        alpha = self.alpha
        if np.isscalar(alpha):
            alpha = (float(alpha),) * int(self.n)
        alpha = tuple(float(v) for v in alpha)
        if len(alpha) != self.n:
            raise DomainError(f"alpha has {len(alpha)} entries for dimension {self.n}")
        object.__setattr__(self, "alpha", alpha)
        if any(v < -0.5 for v in alpha):
            raise DomainError(f"every alpha_i must be >= -1/2, got {alpha}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not self.a >= 1:
            raise DomainError(f"a must be >= 1, got {self.a}")
        if int(self.j) != self.j or self.j < 0:
            raise DomainError(f"j must be a nonnegative integer, got {self.j}")

    @property
    def shifted_alpha(self) -> np.ndarray:
        return np.asarray(self.alpha) + self.a * self.j

    @property
    def abs_alpha(self) -> float:
        """|alpha + a j| = sum of the shifted orders (may be negative)."""
        return float(self.shifted_alpha.sum())

    def eigenvalue(self, m) -> np.ndarray:
        """4m + 2|alpha + a j| + 2n for the level-m eigenspace."""
        return 4.0 * np.asarray(m) + 2.0 * self.abs_alpha + 2.0 * self.n

    def weight(self, x):
        """u_j(x) = x^(a j)."""
        return np.asarray(x, dtype=float) ** (self.a * self.j)

    def require_convolution_range(self):
        nu = float(self.shifted_alpha[0])
        if self.n != 1:
            raise DomainError("convolution-type operators are one-dimensional")
        if not self.sigma < nu + 1:
            raise DomainError(f"need sigma < alpha + a j + 1 = {nu + 1}, got sigma = {self.sigma}")

    def with_j(self, j: int) -> "FracParams":
        return FracParams(self.n, self.alpha, self.sigma, self.a, j)


def _check_order(k, alpha):
    if int(k) != k or k < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {k}")
    if not alpha > -1:
        raise DomainError(f"order must exceed -1, got {alpha}")


def laguerre_poly(k: int, alpha: float, x):
    """L_k^alpha(x) by the three-term recurrence.

    Returns a float for scalar ``x`` and an array otherwise.  Values beyond
    the double range come back as +-inf; use :func:`laguerre_scaled` for the
    mantissa/exponent pair.
    """
    _check_order(k, alpha)
    mant, scale = _core.laguerre_scaled(int(k), float(alpha), np.asarray(x, dtype=float))
    with np.errstate(over="ignore"):
        out = mant * np.exp(scale)
    return float(out) if np.ndim(x) == 0 else out


def laguerre_scaled(k: int, alpha: float, x):
    """(mantissa, log_scale) with L_k^alpha(x) = mantissa * exp(log_scale)."""
    _check_order(k, alpha)
    return _core.laguerre_scaled(int(k), float(alpha), np.asarray(x, dtype=float))


def log_gamma(x):
    """log Gamma(x) for x > 0 (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError("log_gamma needs x > 0")
    out = gammaln(xa)
    return float(out) if np.ndim(x) == 0 else out


def log_norm(k: int, alpha: float) -> float:
    """log of sqrt(2 Gamma(k+1) / Gamma(k+alpha+1))."""
    return 0.5 * (math.log(2.0) + math.lgamma(k + 1) - math.lgamma(k + alpha + 1))


def _laguerre_function(k, alpha, x, power):
    _check_order(k, alpha)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError("Laguerre functions live on x >= 0")
    mant, scale = _core.laguerre_scaled(int(k), float(alpha), xa * xa)
    with np.errstate(divide="ignore", invalid="ignore"):
        if power == 0:
            pw = np.zeros_like(xa)
        else:
            pw = np.where(xa > 0, power * np.log(np.where(xa > 0, xa, 1.0)), -np.inf if power > 0 else np.inf)
        log_mag = scale + log_norm(k, alpha) + pw - 0.5 * xa * xa
        out = mant * np.exp(log_mag)
    return float(out) if np.ndim(x) == 0 else out


def phi_hermite_type(k: int, alpha: float, x):
    """Laguerre function of Hermite type, orthonormal in L^2((0, inf), dx).

    At ``x = 0`` the value is the limit from the right (nonzero only when
    ``alpha == -1/2``).
    """
    return _laguerre_function(k, alpha, x, alpha + 0.5)


def ell_convolution_type(k: int, alpha: float, x):
    """Laguerre function of convolution type, orthonormal in L^2(x^(2 alpha + 1) dx)."""
    return _laguerre_function(k, alpha, x, 0.0)


def hermite_functions(kmax: int, x) -> np.ndarray:
    """Rows h_0(x) .. h_kmax(x) of normalized Hermite functions."""
    if kmax < 0:
        raise DomainError("kmax must be >= 0")
    return _core.hermite_table(int(kmax), np.asarray(x, dtype=float))


def hermite_function(k: int, x):
    """Normalized Hermite function h_k(x) = (sqrt(pi) 2^k k!)^(-1/2) H_k(x) e^(-x^2/2)."""
    out = hermite_functions(k, x)[k]
    return float(out) if np.ndim(x) == 0 else out


# -- modified Bessel functions via the Schlafli integral --------------------

_GEGEN_START = 64
_LAG_NODES = 64


def _switch_point(nu: float) -> float:
    # above this z the endpoint-scaled (Laguerre) form of the integral converges
    if nu <= 200:
        return 30.0 + 0.75 * max(nu, 0.0)
    return 1.5 * nu


def _lag_nodes_for(nu: float) -> int:
    return _LAG_NODES if nu <= 200 else 2 * _LAG_NODES


def _gegen_nodes_for(z_max: float) -> int:
    n = _GEGEN_START
    capacity = 120.0
    while capacity < z_max:
        n *= 2
        capacity *= 2.5
    return n


@dataclass(frozen=True)
class _SchlafliPlan:
    nu: float
    g_nodes: np.ndarray
    g_logw: np.ndarray
    l_nodes: np.ndarray
    l_logw: np.ndarray
    power: float
    lag_exponent: float
    lag_offset: float
    z_switch: float


# Orders within this distance of -1/2 use the two-point measure: a Jacobi rule
# with parameter -1 + eps is meaningless, and the orders agree to O(eps log z).
_ATOMIC_EPS = 1e-12


def _atomic(nu: float) -> bool:
    return nu + 0.5 < _ATOMIC_EPS


@lru_cache(maxsize=4096)
def _plan(nu: float, n_gegen: int = 0, n_lag: int = 0) -> _SchlafliPlan:
    z_switch = _switch_point(nu)
    if n_gegen == 0:
        n_gegen = _gegen_nodes_for(z_switch)
    if n_lag == 0:
        n_lag = _lag_nodes_for(nu)
    g = gauss_jacobi(n_gegen, nu - 0.5, nu - 0.5)
    lag = gauss_laguerre(n_lag, nu - 0.5)
    # E[exp(-z(1+s))] = z^-(nu+1/2) 2^(nu-1/2) Gamma(nu+1/2) E_lag[(1 - v/2z)^(nu-1/2)] / mass
    # with mass = 2^(2 nu) Gamma(nu+1/2)^2 / Gamma(2 nu + 1).  Written in nu + 1/2 directly:
    # the rule's own mass goes through nu - 1/2 + 1 and loses the digits of nu + 1/2 near -1/2.
    lag_offset = -(nu + 0.5) * math.log(2.0) - math.lgamma(nu + 0.5) + math.lgamma(2.0 * nu + 1.0)
    return _SchlafliPlan(nu, g.nodes, g.log_weights, lag.nodes, lag.log_weights,
                         nu - 0.5, nu + 0.5, lag_offset, z_switch)


def _log_average(nu: float, z: np.ndarray, plan: _SchlafliPlan | None = None) -> np.ndarray:
    """log of the probability-normalized Schlafli average E[exp(-z (1+s))]."""
    if _atomic(nu):
        return np.log(0.5) + np.log1p(np.exp(-2.0 * z))
    p = plan or _plan(float(nu))
    return _core.log_schlafli(z, p.g_nodes, p.g_logw, p.l_nodes, p.l_logw,
                              p.power, p.lag_exponent, p.lag_offset, p.z_switch).reshape(z.shape)


_TIER_SIZES = (8, 12, 16, 24, 32)
_TIER_TOL = 4e-15


@dataclass(frozen=True)
class _Tier:
    z_lo: float
    z_hi: float
    laguerre: bool
    nodes: np.ndarray
    logw: np.ndarray


@lru_cache(maxsize=1024)
def _tiers(nu: float) -> tuple:
    """Cheaper rules for sub-ranges of z, calibrated once against the full plan.

    Far below the switch point a short Gegenbauer rule already resolves the
    integrand, and far above it a short Laguerre rule does.  Each candidate is
    accepted on the z-range where it matches the full rule to ``_TIER_TOL``
    on a dense geometric grid, shrunk by a safety factor.
    """
    full = _plan(nu)
    zs = np.geomspace(1e-4, max(1e9, 1e3 * full.z_switch), 1200)
    ref = _log_average(nu, zs, full)
    scale = np.maximum(1.0, np.abs(ref))
    tiers = []
    lo = 0.0
    for n in _TIER_SIZES:
        if n >= full.g_nodes.size:
            break
        g = gauss_jacobi(n, nu - 0.5, nu - 0.5)
        # the short rule is compared in the same normalization as the full one
        v = _core.log_gegenbauer_sum(zs, g.nodes, g.log_weights)
        bad = np.abs(v - ref) > _TIER_TOL * scale
        hi = zs[np.argmax(bad)] / 1.5 if bad.any() else full.z_switch
        hi = min(hi, full.z_switch)
        if hi > lo:
            tiers.append(_Tier(lo, hi, False, g.nodes, g.log_weights))
            lo = hi
    upper = []
    hi = np.inf
    for n in _TIER_SIZES:
        if n >= full.l_nodes.size:
            break
        lag = gauss_laguerre(n, nu - 0.5)
        sel = zs > full.z_switch
        z = zs[sel]
        v = full.lag_offset - full.lag_exponent * np.log(z) + _core.log_laguerre_sum(
            z, lag.nodes, lag.log_weights, full.power)
        bad = np.abs(v - ref[sel]) > _TIER_TOL * scale[sel]
        if bad.all():
            continue
        z_lo = 1.5 * z[np.nonzero(bad)[0].max() + 1] if bad.any() else full.z_switch
        if z_lo < hi:
            upper.append(_Tier(z_lo, hi, True, lag.nodes, lag.log_weights))
            hi = z_lo
    return tuple(tiers), tuple(upper[::-1])


def _log_average_fast(nu: float, z: np.ndarray) -> np.ndarray:
    if _atomic(nu):
        return _log_average(nu, z)
    full = _plan(nu)
    lower, upper = _tiers(nu)
    flat = z.ravel()
    out = np.empty_like(flat)
    done = np.zeros(flat.size, dtype=bool)
    for t in lower + upper:
        m = (flat > t.z_lo) & (flat <= t.z_hi) & ~done
        if not m.any():
            continue
        zt = flat[m]
        if t.laguerre:
            out[m] = full.lag_offset - full.lag_exponent * np.log(zt) + _core.log_laguerre_sum(
                zt, t.nodes, t.logw, full.power)
        else:
            out[m] = _core.log_gegenbauer_sum(zt, t.nodes, t.logw)
        done |= m
    if not done.all():
        out[~done] = _log_average(nu, flat[~done], full)
    return out.reshape(z.shape)


def _log_prefactor(nu, z):
    # z^nu times the total mass 1 / (2^nu Gamma(nu+1)) of dPi_nu
    with np.errstate(divide="ignore"):
        return nu * np.log(z) - nu * math.log(2.0) - math.lgamma(nu + 1.0)


def log_ive(nu: float, z):
    """log(exp(-z) I_nu(z)) for z >= 0, nu >= -1/2 (fixed node plan; hot path)."""
    if nu < -0.5:
        raise DomainError(f"order must be >= -1/2, got {nu}")
    za = np.asarray(z, dtype=float)
    if np.any(za < 0):
        raise DomainError("bessel_i needs z >= 0")
    zpos = np.where(za > 0, za, 1.0)
    out = _log_prefactor(nu, zpos) + _log_average_fast(float(nu), zpos)
    if np.any(za == 0):
        out = np.where(za == 0, 0.0 if nu == 0 else -np.inf, out)
    return float(out) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class BesselI:
    """I_nu(z) carried as a log: ``value = exp(log)``, ``ive = exp(log - z)``."""

    nu: float
    z: np.ndarray | float
    log: np.ndarray | float
    nodes_used: int

    @property
    def value(self):
        with np.errstate(over="ignore"):
            return np.exp(self.log)

    @property
    def ive(self):
        return np.exp(np.asarray(self.log) - np.asarray(self.z))


def bessel_i(nu: float, z, rtol: float = 1e-12, max_nodes: int = 4096) -> BesselI:
    """Modified Bessel function I_nu(z) from the Schlafli integral.

    For nu > -1/2 the integral against dPi_nu is computed by Gauss--Jacobi
    quadrature, starting at 64 nodes and doubling until two successive
    results agree to ``rtol``; large arguments switch to the endpoint-scaled
    generalized Laguerre form of the same integral.  nu = -1/2 uses the
    atomic two-point measure.
    """
    if nu < -0.5:
        raise DomainError(f"order must be >= -1/2, got {nu}")
    za = np.asarray(z, dtype=float)
    if np.any(za < 0):
        raise DomainError("bessel_i needs z >= 0")
    zpos = np.where(za > 0, za, 1.0)
    nu = float(nu)
    if _atomic(nu):
        avg, used = _log_average(nu, zpos), 2
    else:
        base = _plan(nu)
        n_g, n_l = base.g_nodes.size, base.l_nodes.size
        prev = _log_average(nu, zpos, base)
        while True:
            n_g, n_l = 2 * n_g, 2 * n_l
            if n_g > max_nodes:
                raise RuntimeError(f"Schlafli quadrature did not converge with {max_nodes} nodes")
            cur = _log_average(nu, zpos, _plan(nu, n_g, n_l))
            if np.all(np.abs(cur - prev) <= rtol * np.maximum(1.0, np.abs(cur))):
                break
            prev = cur
        avg, used = cur, n_g
    log_i = _log_prefactor(nu, zpos) + avg + zpos
    if np.any(za == 0):
        log_i = np.where(za == 0, 0.0 if nu == 0 else -np.inf, log_i)
    if np.ndim(z) == 0:
        return BesselI(nu, float(za), float(log_i), used)
    return BesselI(nu, za, log_i, used)


def dim_spherical_harmonics(n: int, j: int) -> int:
    """Dimension of the space of degree-j spherical harmonics in n variables."""
    if n < 2:
        raise DomainError("spherical harmonics need n >= 2")
    if j < 0:
        raise DomainError("degree must be >= 0")
    second = math.comb(n + j - 3, j - 2) if j >= 2 else 0
    return math.comb(n + j - 1, j) - second
