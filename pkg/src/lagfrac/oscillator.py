"""The harmonic oscillator -Delta + |x|^2 on R^n (n = 2, 3) in spherical form.

A function is carried as radial profiles per spherical harmonic,
f(x) = sum_{d, l} f_{d,l}(r) Y_{d,l}(x/r).  The negative power acts degree by
degree as r^d (L_{n/2-1+d})^(-sigma)(r^-d f_{d,l}), which is exactly the
weighted family of :mod:`lagfrac.operators` with alpha = n/2 - 1, a = 1.
A cartesian Hermite expansion gives an independent route for n = 2.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import lpmv

from . import operators as ops
from .kernels import laguerre_function_table
from .operators import AdmissibilityError, TestFunction
from .quadrature import gauss_jacobi, gauss_legendre
from .specfun import DomainError, FracParams, dim_spherical_harmonics, hermite_functions

__all__ = [
    "SphericalIndex", "RadialProfileSet", "spherical_harmonic", "spherical_eigenfunction",
    "project_Jm", "frac_oscillator_spherical", "frac_oscillator_cartesian", "mixed_norm",
    "mixed_norm_angular", "admissible_oscillator", "theorem31_sweep", "Theorem31Row",
    "cartesian_hermite_profiles", "to_polar", "from_polar", "cross_basis_check",
]

R_MAX = 12.0


def _check_n(n: int):
    if n not in (2, 3):
        raise DomainError(f"only n = 2 and n = 3 are supported, got n = {n}")


@dataclass(frozen=True)
class SphericalIndex:
    """(m, j, l): energy level m, Laguerre degree j, harmonic l of degree m - 2j."""

    m: int
    j: int
    ell: int
    n: int = 2

    def __post_init__(self):
        _check_n(self.n)
        if self.m < 0 or not 0 <= self.j <= self.m // 2:
            raise DomainError(f"need m >= 0 and 0 <= j <= m//2, got m={self.m}, j={self.j}")
        dim = dim_spherical_harmonics(self.n, self.degree)
        if not 1 <= self.ell <= dim:
            raise DomainError(f"ell must be in [1, {dim}] for degree {self.degree}")

    @property
    def degree(self) -> int:
        return self.m - 2 * self.j

    @property
    def energy(self) -> int:
        return self.n + 2 * self.m

    @property
    def order(self) -> float:
        """Laguerre order n/2 - 1 + (m - 2j) of the radial factor."""
        return self.n / 2 - 1 + self.degree


# -- coordinates and real spherical harmonics -------------------------------

def to_polar(x) -> tuple[np.ndarray, np.ndarray]:
    """(r, angles) with angles theta (n = 2) or (polar, azimuth) stacked (n = 3)."""
    x = np.asarray(x, dtype=float)
    r = np.sqrt(np.sum(x * x, axis=-1))
    if x.shape[-1] == 2:
        return r, np.arctan2(x[..., 1], x[..., 0])
    safe = np.where(r > 0, r, 1.0)
    pol = np.arccos(np.clip(x[..., 2] / safe, -1.0, 1.0))
    az = np.arctan2(x[..., 1], x[..., 0])
    return r, np.stack([pol, az], axis=-1)


def from_polar(r, angles, n: int = 2) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    a = np.asarray(angles, dtype=float)
    if n == 2:
        return np.stack([r * np.cos(a), r * np.sin(a)], axis=-1)
    pol, az = a[..., 0], a[..., 1]
    return np.stack([r * np.sin(pol) * np.cos(az), r * np.sin(pol) * np.sin(az), r * np.cos(pol)], axis=-1)


def spherical_harmonic(n: int, d: int, ell: int, angles) -> np.ndarray:
    """Real orthonormal harmonic Y_{d,ell} on S^(n-1).

    n = 2: ell = 1 is cos(d theta), ell = 2 is sin(d theta) (only ell = 1 at
    d = 0).  n = 3: ell = 1..2d+1 runs over orders mu = ell - d - 1 in
    [-d, d], cosines for mu > 0 and sines for mu < 0.
    """
    _check_n(n)
    dim = dim_spherical_harmonics(n, d)
    if not 1 <= ell <= dim:
        raise DomainError(f"ell must be in [1, {dim}] for degree {d}")
    a = np.asarray(angles, dtype=float)
    if n == 2:
        if d == 0:
            return np.full(a.shape, 1.0 / math.sqrt(2 * math.pi))
        trig = np.cos if ell == 1 else np.sin
        return trig(d * a) / math.sqrt(math.pi)
    pol, az = a[..., 0], a[..., 1]
    mu = ell - d - 1
    k = abs(mu)
    norm = math.sqrt((2 * d + 1) / (4 * math.pi) * math.exp(math.lgamma(d - k + 1) - math.lgamma(d + k + 1)))
    leg = lpmv(k, d, np.cos(pol))
    if mu == 0:
        return norm * leg
    trig = np.cos(k * az) if mu > 0 else np.sin(k * az)
    return math.sqrt(2.0) * norm * leg * trig


def spherical_eigenfunction(idx: SphericalIndex, x) -> np.ndarray | float:
    """tilde-phi_{m,j,l}(x) = r^d ell_j^(n/2-1+d)(r) Y_{d,l}(x/r), d = m - 2j.

    The solid-harmonic reading r^d Y(x/r) of the harmonic factor is
    used, and sqrt(2 Gamma(j+1) / Gamma(m-j+n/2)) is then exactly the norm of
    ell_j at order n/2 - 1 + d.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != idx.n:
        raise DomainError(f"points need a trailing axis of length {idx.n}")
    r, ang = to_polar(x)
    radial = laguerre_function_table(idx.j, idx.order, r, "convolution")[idx.j] * r ** idx.degree
    out = radial * spherical_harmonic(idx.n, idx.degree, idx.ell, ang)
    return float(out) if out.ndim == 0 else out


# -- radial profile sets ----------------------------------------------------

@dataclass
class RadialProfileSet:
    """Radial profiles f_{d,l} keyed by (degree d, harmonic l).

    Each profile is a :class:`lagfrac.operators.TestFunction`; declaring its
    origin power (typically d) lets the radial rules absorb r^d exactly.
    """

    n: int
    profiles: dict = field(default_factory=dict)
    name: str = "f"

    def __post_init__(self):
        _check_n(self.n)
        for (d, ell), prof in self.profiles.items():
            if d < 0 or not 1 <= ell <= dim_spherical_harmonics(self.n, d):
                raise DomainError(f"bad harmonic key {(d, ell)} for n = {self.n}")
            if not isinstance(prof, TestFunction):
                self.profiles[(d, ell)] = ops._as_test_function(prof)

    @property
    def degrees(self) -> list[int]:
        return sorted({d for d, _ in self.profiles})

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r, ang = to_polar(x)
        out = np.zeros(r.shape)
        for (d, ell), prof in self.profiles.items():
            out = out + prof(r) * spherical_harmonic(self.n, d, ell, ang)
        return out

    def only_degree(self, d: int) -> "RadialProfileSet":
        return RadialProfileSet(self.n, {k: v for k, v in self.profiles.items() if k[0] == d},
                                f"{self.name}[deg {d}]")

    @classmethod
    def eigenfunction(cls, idx: SphericalIndex) -> "RadialProfileSet":
        prof = ops.eigenfunction("convolution", idx.order, idx.j, power=idx.degree)
        return cls(idx.n, {(idx.degree, idx.ell): prof}, f"phi~{idx.m},{idx.j},{idx.ell}")

    @classmethod
    def gaussian(cls, n: int = 2) -> "RadialProfileSet":
        """e^(-r^2/2) as a degree-0 profile."""
        c = math.sqrt(2 * math.pi) if n == 2 else math.sqrt(4 * math.pi)
        prof = TestFunction("gauss", lambda r, c=c: c * np.exp(-0.5 * np.asarray(r) ** 2), 0.0, True)
        return cls(n, {(0, 1): prof}, "gauss")

    @classmethod
    def from_csv(cls, path, n: int, order: int = 3) -> "RadialProfileSet":
        """Read columns (degree, ell, r, value); each profile becomes a spline of ``order``."""
        rows: dict = {}
        with open(path, newline="") as fh:
            for rec in csv.DictReader(fh):
                key = (int(rec["degree"]), int(rec["ell"]))
                rows.setdefault(key, []).append((float(rec["r"]), float(rec["value"])))
        profiles = {}
        for key, pts in rows.items():
            pts.sort()
            r = np.array([p[0] for p in pts])
            v = np.array([p[1] for p in pts])
            profiles[key] = ops.tabulated(r, v, order)
        return cls(n, profiles, str(path))

    def to_csv(self, path, r) -> None:
        r = np.asarray(r, dtype=float)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["degree", "ell", "r", "value"])
            for (d, ell), prof in sorted(self.profiles.items()):
                for rv, v in zip(r, prof(r)):
                    w.writerow([d, ell, f"{rv:.17e}", f"{v:.17e}"])


def cartesian_hermite_profiles(coeffs: Mapping[tuple[int, int], float]) -> RadialProfileSet:
    """Radial profiles of sum c_k h_k1(x1) h_k2(x2) on R^2, exactly.

    The function is a polynomial P times e^(-r^2/2).  Its degree-d angular
    component is r^d q_d(r^2) e^(-r^2/2) with q_d a polynomial; q_d is
    recovered by exact trapezoid projection at a few radii >= 1 and
    interpolation in r^2, so the reduced profile is stable at the origin.
    """
    K = max(k1 + k2 for k1, k2 in coeffs) if coeffs else 0
    ntheta = 4 * K + 8
    theta = 2 * math.pi * np.arange(ntheta) / ntheta

    def poly(x1, x2):
        kmax = K
        h1 = hermite_functions(kmax, x1) * np.exp(0.5 * x1 ** 2)
        h2 = hermite_functions(kmax, x2) * np.exp(0.5 * x2 ** 2)
        return sum(c * h1[k1] * h2[k2] for (k1, k2), c in coeffs.items())

    profiles = {}
    for d in range(K + 1):
        deg_q = (K - d) // 2
        radii = 1.0 + 0.5 * np.arange(deg_q + 1)
        for ell in ((1,) if d == 0 else (1, 2)):
            Y = spherical_harmonic(2, d, ell, theta)
            vals = np.array([np.sum(poly(rv * np.cos(theta), rv * np.sin(theta)) * Y) * 2 * math.pi / ntheta
                             for rv in radii])
            q = np.polynomial.polynomial.polyfit(radii ** 2, vals / radii ** d, deg_q)
            if np.max(np.abs(q)) < 1e-13 * max(1.0, max(abs(c) for c in coeffs.values())):
                continue
            profiles[(d, ell)] = TestFunction(
                f"cart[d={d},l={ell}]",
                lambda r, q=q: np.polynomial.polynomial.polyval(np.asarray(r) ** 2, q) * np.exp(-0.5 * np.asarray(r) ** 2),
                float(d))
    return RadialProfileSet(2, profiles, "cartesian")


# -- projections and the operator -------------------------------------------

def _radial_rule(power: float, R: float = R_MAX, n_nodes: int = 80):
    """int_0^R r^power g(r) dr: Jacobi on [0, 1], composite Legendre on [1, R]."""
    g = gauss_jacobi(n_nodes, 0.0, power)
    r0 = 0.5 * (1.0 + g.nodes)
    w0 = np.exp(g.log_weights + g.log_mass - (power + 1.0) * math.log(2.0))
    s, w = gauss_legendre(24)
    edges = np.linspace(1.0, R, 12)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * np.diff(edges)
    r1 = (mid[:, None] + half[:, None] * s).ravel()
    w1 = (half[:, None] * w).ravel() * r1 ** power
    return np.concatenate([r0, r1]), np.concatenate([w0, w1])


def project_Jm(f: RadialProfileSet, m: int, n: int | None = None) -> dict:
    """Coefficients c_{m,j,l}(f) keyed by (j, l), j = 0..m//2.

    The angular integral picks the profile of degree d = m - 2j, leaving
    c = int f_{d,l}(r) r^d ell_j^(n/2-1+d)(r) r^(n-1) dr.
    """
    n = n or f.n
    if n != f.n:
        raise DomainError("dimension mismatch")
    out = {}
    for j in range(m // 2 + 1):
        d = m - 2 * j
        for ell in range(1, dim_spherical_harmonics(n, d) + 1):
            prof = f.profiles.get((d, ell))
            if prof is None:
                out[(j, ell)] = 0.0
                continue
            power = prof.origin_power + d + n - 1
            r, w = _radial_rule(power)
            order = n / 2 - 1 + d
            ell_j = laguerre_function_table(j, order, r, "convolution")[j]
            val = float(np.sum(w * prof.reduced_values(r) * ell_j))
            if not np.isfinite(val):
                raise ArithmeticError(f"radial quadrature failed for (m, j, l) = {(m, j, ell)}")
            out[(j, ell)] = val
    return out


def _spectral_total(f: RadialProfileSet, sigma: float, x, m_max: int):
    """Diagnostic energy sum of (n+2m)^(-sigma) proj_{J_m} f, split by parity of m."""
    n = f.n
    x = np.asarray(x, dtype=float)
    even = np.zeros(x.shape[:-1])
    odd = np.zeros(x.shape[:-1])
    for m in range(m_max + 1):
        coeffs = project_Jm(f, m, n)
        part = np.zeros(x.shape[:-1])
        for (j, ell), c in coeffs.items():
            if c != 0.0:
                part = part + c * spherical_eigenfunction(SphericalIndex(m, j, ell, n), x)
        part = part * (n + 2 * m) ** (-sigma)
        if m % 2 == 0:
            even = even + part
        else:
            odd = odd + part
    return even, odd


@dataclass(frozen=True)
class OscillatorOutput:
    total: np.ndarray
    O1: np.ndarray
    O2: np.ndarray


def frac_oscillator_spherical(f: RadialProfileSet, sigma: float, n: int | None, x, method: str = "kernel",
                              split: bool = False, m_max: int = 40):
    """(-Delta + |x|^2)^(-sigma) f at points x (trailing axis n).

    ``method="kernel"`` runs one weighted-family operator per profile
    (alpha = n/2 - 1, a = 1, j = degree) and resynthesizes the angles.
    ``method="spectral"`` sums the energy projections up to ``m_max``.
    With ``split=True`` the O1 (even m) and O2 (odd m) parts are returned as
    well.  Since m and the degree d have the same parity, on the kernel path
    O1 collects the even degrees and O2 the odd ones.
    """
    n = n or f.n
    if n != f.n:
        raise DomainError("dimension mismatch")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    x = np.asarray(x, dtype=float)
    if method == "spectral":
        even, odd = _spectral_total(f, sigma, x, m_max)
    elif method == "kernel":
        r, ang = to_polar(x)
        flat_r = np.atleast_1d(r).ravel()
        even = np.zeros(flat_r.size)
        odd = np.zeros(flat_r.size)
        angs = ang.reshape((flat_r.size,) + ang.shape[r.ndim:])
        alpha = n / 2 - 1
        # radial operators only need the distinct radii
        radii, inverse = np.unique(flat_r, return_inverse=True)
        pos = radii > 0
        for (d, ell), prof in f.profiles.items():
            params = FracParams(1, alpha, sigma, 1.0, d)
            vals = np.zeros(radii.size)
            vals[pos] = ops.apply_weighted_family(params, prof, radii[pos], strict=False)
            if not pos.all() and d == 0:
                # the radial function is continuous at 0; evaluate just off it
                vals[~pos] = ops.apply_weighted_family(params, prof, np.array([1e-9]), strict=False)[0]
            vals = vals[inverse]
            contrib = vals * spherical_harmonic(n, d, ell, angs)
            if d % 2 == 0:
                even += contrib
            else:
                odd += contrib
        even = even.reshape(r.shape)
        odd = odd.reshape(r.shape)
    else:
        raise DomainError(f"unknown method {method!r}")
    total = even + odd
    if split:
        return OscillatorOutput(total, even, odd)
    return total


def frac_oscillator_cartesian(f, sigma: float, n: int = 2, x=None, M: int = 24, n_nodes: int | None = None):
    """Cartesian oracle: expand in h_k1 h_k2, scale by (2|k|+2)^(-sigma), resynthesize."""
    if n != 2:
        raise DomainError("the cartesian oracle is implemented for n = 2")
    N = n_nodes or (M + 24)
    t, w = np.polynomial.hermite.hermgauss(N)
    # weights for int g dx with g ~ poly * e^(-x^2): divide out e^(-x^2)
    wx = w * np.exp(t * t)
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    F = np.asarray(f(np.stack([T1, T2], axis=-1)), dtype=float)
    H = hermite_functions(M, t)  # (M+1, N)
    C = (H * wx) @ F @ (H * wx).T  # C[k1, k2]
    k = np.arange(M + 1)
    K1, K2 = np.meshgrid(k, k, indexing="ij")
    mask = K1 + K2 <= M
    C = np.where(mask, C * (2.0 * (K1 + K2) + 2.0) ** (-sigma), 0.0)
    x = np.asarray(x, dtype=float)
    h1 = hermite_functions(M, x[..., 0])
    h2 = hermite_functions(M, x[..., 1])
    return np.einsum("ab,a...,b...->...", C, h1, h2)


def cross_basis_check(coeffs: Mapping[tuple[int, int], float], sigma: float, r, theta) -> float:
    """Sup-relative gap between the spherical reduction and the cartesian oracle (n = 2).

    ``coeffs`` maps (k1, k2) to the coefficient of h_k1(x1) h_k2(x2); the two
    routes are compared on the polar tensor grid r x theta.
    """
    kmax = max(k1 + k2 for k1, k2 in coeffs)
    prof = cartesian_hermite_profiles(coeffs)

    def fc(p):
        h1 = hermite_functions(kmax, p[..., 0])
        h2 = hermite_functions(kmax, p[..., 1])
        return sum(c * h1[k1] * h2[k2] for (k1, k2), c in coeffs.items())

    P = from_polar(np.asarray(r, float)[:, None], np.asarray(theta, float)[None, :], 2)
    a = frac_oscillator_spherical(prof, sigma, 2, P)
    b = frac_oscillator_cartesian(fc, sigma, 2, P)
    scale = float(np.max(np.abs(b)))
    return float(np.max(np.abs(a - b)) / scale) if scale > 0 else float(np.max(np.abs(a)))


# -- mixed norms and the mixed-norm theorem sweep -------------------------

def mixed_norm(f: RadialProfileSet, p: float, n: int | None = None, R: float = R_MAX,
               r_grid: np.ndarray | None = None) -> float:
    """||f||_{L^{p,2}} via the profile identity: L^p(r^(n-1) dr) of the l^2 norm of the profiles."""
    n = n or f.n
    if not p >= 1:
        raise DomainError("p must be >= 1")
    if not f.profiles:
        return 0.0
    if math.isinf(p):
        r = r_grid if r_grid is not None else np.linspace(1e-6, R, 4001)
        agg = np.sqrt(sum(prof(r) ** 2 for prof in f.profiles.values()))
        return float(np.max(agg))
    # the aggregate behaves like r^(min origin power) near 0
    lead = min(prof.origin_power for prof in f.profiles.values())
    power = p * lead + n - 1
    r, w = _radial_rule(power, R)
    with np.errstate(divide="ignore", invalid="ignore"):
        agg = np.sqrt(sum((prof.reduced_values(r) * r ** (prof.origin_power - lead)) ** 2
                          for prof in f.profiles.values()))
    return float(np.sum(w * agg ** p)) ** (1.0 / p)


def mixed_norm_angular(func, p: float, n: int = 2, R: float = R_MAX, n_angle: int = 64) -> float:
    """Cross-check: the angular L^2 integral by quadrature on the sphere, then L^p in r."""
    _check_n(n)
    s, w = gauss_legendre(24)
    edges = np.concatenate([[0.0], np.geomspace(1e-3, 1.0, 8), np.linspace(1.0, R, 23)[1:]])
    edges = np.unique(edges)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * np.diff(edges)
    r = (mid[:, None] + half[:, None] * s).ravel()
    wr = (half[:, None] * w).ravel()
    if n == 2:
        th = 2 * math.pi * np.arange(n_angle) / n_angle
        pts = from_polar(r[:, None], th[None, :], 2)
        ang_l2 = np.sum(np.asarray(func(pts)) ** 2, axis=1) * 2 * math.pi / n_angle
    else:
        c, wc = gauss_legendre(n_angle)
        az = 2 * math.pi * np.arange(2 * n_angle) / (2 * n_angle)
        P, A = np.meshgrid(np.arccos(c), az, indexing="ij")
        ang = np.stack([P, A], axis=-1)
        pts = from_polar(r[:, None, None], ang[None], 3)
        vals = np.asarray(func(pts)) ** 2
        ang_l2 = np.einsum("rpa,p->r", vals, wc) * (2 * math.pi / (2 * n_angle))
    agg = np.sqrt(ang_l2)
    if math.isinf(p):
        return float(np.max(agg))
    return float(np.sum(wr * agg ** p * r ** (n - 1))) ** (1.0 / p)


def admissible_oscillator(p: float, q: float, sigma: float, n: int) -> list[str]:
    """Violated (p, q) conditions of the mixed-norm theorem (empty list when admissible).

    1/p - 2 sigma/n <= 1/q < 1/p + 2 sigma/n, excluding (p = 1, q = n/(n - 2 sigma))
    and (p = n/(2 sigma), q = inf).  The theorem's own range 0 < sigma < n/2 is
    reported separately by :func:`theorem31_sweep`.
    """
    ip = 0.0 if math.isinf(p) else 1.0 / p
    iq = 0.0 if math.isinf(q) else 1.0 / q
    c = 2.0 * sigma / n
    bad = []
    if not (p >= 1 and q >= 1):
        bad.append("1 <= p, q <= inf")
        return bad
    if not ip - c <= iq:
        bad.append("1/p - 2 sigma/n <= 1/q")
    if not iq < ip + c:
        bad.append("1/q < 1/p + 2 sigma/n")
    q_end = 1.0 - c  # 1/q at the first excluded endpoint
    if p == 1 and math.isclose(iq, q_end, rel_tol=0, abs_tol=1e-14):
        bad.append("excluded endpoint p = 1, q = n/(n - 2 sigma)")
    if math.isinf(q) and math.isclose(ip, c, rel_tol=0, abs_tol=1e-14):
        bad.append("excluded endpoint p = n/(2 sigma), q = inf")
    return bad


@dataclass(frozen=True)
class Theorem31Row:
    name: str
    lhs: float
    rhs: float
    sigma_in_range: bool

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else float("nan")


def theorem31_sweep(family: Iterable[RadialProfileSet], sigma: float, p: float, q: float, n: int,
                    r_grid: np.ndarray | None = None, method: str = "kernel") -> list[Theorem31Row]:
    """(||(-Delta+|x|^2)^(-sigma) f||_{L^{q,2}}, ||f||_{L^{p,2}}) per family member.

    The output profiles are sampled on ``r_grid`` (default: 96 points on a
    composite radial rule) and the L^{q,2} norm is taken from them.
    """
    _check_n(n)
    bad = admissible_oscillator(p, q, sigma, n)
    if bad:
        raise AdmissibilityError("exponents not admissible: " + "; ".join(bad))
    in_range = 0 < sigma < n / 2
    rows = []
    alpha = n / 2 - 1
    for f in family:
        out_profiles = {}
        lead = min((prof.origin_power for prof in f.profiles.values()), default=0.0)
        power = (q * lead + n - 1) if not math.isinf(q) else 0.0
        r, w = _radial_rule(power, R_MAX, 48) if r_grid is None else (np.asarray(r_grid), None)
        for (d, ell), prof in f.profiles.items():
            params = FracParams(1, alpha, sigma, 1.0, d)
            out_profiles[(d, ell)] = ops.apply_weighted_family(params, prof, r, strict=False)
        if not out_profiles:
            rows.append(Theorem31Row(f.name, 0.0, 0.0, in_range))
            continue
        agg = np.sqrt(sum(v ** 2 for v in out_profiles.values()))
        if math.isinf(q):
            lhs = float(np.max(agg))
        elif w is not None:
            lhs = float(np.sum(w * (agg * r ** (-lead)) ** q)) ** (1.0 / q)
        else:
            lhs = float(np.trapz(agg ** q * r ** (n - 1), r)) ** (1.0 / q)
        rhs = mixed_norm(f, p, n)
        rows.append(Theorem31Row(f.name, lhs, rhs, in_range))
    return rows
