"""Numerical certificates for the one-dimensional lemmas behind the kernel bounds.

Each certificate evaluates the left-hand side by quadrature, the quoted
right-hand side in closed form (Gamma values through log_gamma), and records
the ratio.  Inequalities with constant one are checked against
1 + ``EXACT_SLACK``.  Inequalities that hold up to a constant are checked
against a configurable ceiling.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import quad

from .quadrature import QuadratureError
from .specfun import DomainError, log_gamma
from .potential import PreconditionError

__all__ = [
    "LemmaSweep", "EXACT_SLACK", "DEFAULT_CEILING", "ns_integral", "certify_lemma_NS",
    "intxi_integral", "certify_lemma_intxi", "intlambda_integral", "intlambda_rhs",
    "certify_lemma_intlambda", "random_intlambda_tuples", "certify_log_equivalence",
    "gamma_ratio", "certify_gamma_ratio", "write_sweep_csv",
]

EXACT_SLACK = 1e-8
DEFAULT_CEILING = 10.0


@dataclass
class LemmaSweep:
    """Rows of (parameters, lhs, rhs, ratio) with the ceiling used for the verdict."""

    lemma_id: str
    parameter_names: tuple
    parameter_grid: list = field(default_factory=list)
    lhs: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    ceiling: float = DEFAULT_CEILING
    notes: dict = field(default_factory=dict)
    verdict_override: bool | None = None

    @property
    def ratios(self) -> np.ndarray:
        l = np.asarray(self.lhs, dtype=float)
        r = np.asarray(self.rhs, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(r > 0, l / r, np.where(l == 0, 0.0, np.inf))

    @property
    def max_ratio(self) -> float:
        r = self.ratios
        return float(np.max(r)) if r.size else float("nan")

    @property
    def verdict(self) -> bool:
        r = self.ratios
        ok = bool(r.size and np.all(np.isfinite(r)) and np.all(r >= 0) and np.max(r) <= self.ceiling)
        if self.verdict_override is not None:
            ok = ok and self.verdict_override
        return ok

    def add(self, params: Sequence[float], lhs: float, rhs: float):
        self.parameter_grid.append(tuple(float(p) for p in params))
        self.lhs.append(float(lhs))
        self.rhs.append(float(rhs))

    def extend(self, other: "LemmaSweep"):
        for p, l, r in zip(other.parameter_grid, other.lhs, other.rhs):
            self.add(p, l, r)


def _f(v: float) -> str:
    return f"{v:.17e}"


def write_sweep_csv(sweep: LemmaSweep, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["lemma_id", *sweep.parameter_names, "lhs", "rhs", "ratio", "verdict"])
    verdict = "pass" if sweep.verdict else "fail"
    for p, l, r, q in zip(sweep.parameter_grid, sweep.lhs, sweep.rhs, sweep.ratios):
        w.writerow([sweep.lemma_id, *(_f(v) for v in p), _f(l), _f(r), _f(q), verdict])


def _quad(f, a, b, points=None, rel=1e-12):
    val, err = quad(f, a, b, epsabs=0.0, epsrel=rel, limit=400, points=points)
    if not np.isfinite(val) or (val != 0 and abs(err) > 1e-6 * abs(val)):
        raise QuadratureError(f"quadrature did not converge (value {val:.3e}, error {err:.3e})")
    return val


# -- Lemma: int_0^1 zeta^-a exp(-T/zeta) --------------------------------------

def ns_integral(a: float, T: float) -> float:
    """int_0^1 zeta^-a e^(-T/zeta) dzeta, computed as int_0^inf e^((a-1) v - T e^v) dv."""
    if not T > 0:
        raise DomainError("T must be positive")

    def g(v):
        return math.exp((a - 1.0) * v - T * math.exp(v))

    # the integrand peaks at e^v = (a - 1)/T when a > 1; include that point
    peak = math.log((a - 1.0) / T) if a > 1 and (a - 1.0) / T > 1 else None
    vmax = math.log(max(60.0 + abs(a - 1.0) * 5.0, 2.0 * abs(a - 1.0) + 60.0) / T) + 2.0
    pts = [peak] if peak is not None and 0 < peak < vmax else None
    return _quad(g, 0.0, max(vmax, 1.0), pts)


def _ns_comparator(a: float, T: float) -> float:
    if T >= 1:
        return math.exp(-T / 2)
    if a > 1:
        return T ** (1.0 - a)
    if a == 1:
        return math.log(2.0 / T)
    return 1.0


def certify_lemma_NS(a_values: Iterable[float], T_values: Iterable[float],
                     ceiling: float = DEFAULT_CEILING) -> LemmaSweep:
    """Ratio of the integral to exp(-T/2) (T >= 1) or to the small-T comparator.

    For T < 1 the statement is a two-sided equivalence, so the inverse ratio is
    bounded by the same ceiling as well; the largest inverse ratio is kept in
    ``notes``.
    """
    sw = LemmaSweep("lemma_NS", ("a", "T"), ceiling=ceiling)
    inv_max = 0.0
    for a in a_values:
        for T in T_values:
            lhs = ns_integral(a, T)
            rhs = _ns_comparator(a, T)
            sw.add((a, T), lhs, rhs)
            if T < 1:
                inv_max = max(inv_max, rhs / lhs)
    sw.notes["max_inverse_ratio_T_lt_1"] = inv_max
    sw.verdict_override = inv_max <= ceiling
    return sw


# -- Lemma: the xi-integral with c-uniform constant ----------------------------

def intxi_integral(c: float, ell: float, sigma: float, a: float) -> float:
    """int_0^1 log((1+xi)/(1-xi))^(sigma-1) (1-xi^2)^c xi^(-c-ell) exp(-a/(4 xi)) dxi.

    Computed in log form on two pieces: v = -log(xi) on (0, 1/2] and
    w = -log(1 - xi^2) on [1/2, 1).  Overflows for large c; the certificate
    works with the log.
    """
    return math.exp(_intxi_log(c, ell, sigma, a))


def _intxi_log(c, ell, sigma, a):
    def small(v):  # xi = e^-v, dxi = xi dv
        xi = math.exp(-v)
        om = -math.expm1(-2.0 * v)
        lt = math.atanh(xi) * 2.0
        return (sigma - 1.0) * math.log(lt) + c * math.log(om) - (c + ell) * math.log(xi) - a / (4.0 * xi) - v

    def large(w):  # 1 - xi^2 = e^-w, dxi = (1 - xi^2)/(2 xi) dw
        xi = math.sqrt(-math.expm1(-w))
        lt = 2.0 * math.log1p(xi) + w
        return (sigma - 1.0) * math.log(lt) - c * w - (c + ell) * math.log(xi) - a / (4.0 * xi) \
            - w - math.log(2.0 * xi)

    # decay rates: e^(-sigma v) roughly for small xi, e^(-(c+1) w) near xi = 1
    v_end = 60.0 + 80.0 / sigma
    w_end = math.log(4.0 / 3.0) + 80.0 / (c + 1.0) + 40.0
    vs = np.linspace(math.log(2.0), v_end, 4000)
    ws = np.linspace(math.log(4.0 / 3.0), w_end, 2000)
    sv = np.array([small(v) for v in vs])
    m = max(float(sv.max()), max(large(w) for w in ws))
    vpk = float(vs[np.argmax(sv)])
    p1 = _quad(lambda v: math.exp(small(v) - m), math.log(2.0), v_end,
               points=[vpk] if math.log(2.0) < vpk < v_end else None)
    p2 = _quad(lambda w: math.exp(large(w) - m), math.log(4.0 / 3.0), w_end)
    return m + math.log(p1 + p2)


def _intxi_rhs_log(c, ell, sigma, a):
    e = c + ell - sigma
    return c * math.log(4.0) + log_gamma(e) - e * math.log(a)


def certify_lemma_intxi(c_values: Sequence[float], ell: float, sigma: float, a: float,
                        ceiling: float = DEFAULT_CEILING, band: float = 1.1) -> LemmaSweep:
    """Ratios over c with a c-uniformity check.

    The reference level is the larger of the maximum over the first three c
    values and the large-c limit of the ratio; every ratio must stay within
    ``band`` of it.
    """
    sw = LemmaSweep("lemma_intxi", ("c", "ell", "sigma", "a"), ceiling=ceiling)
    for c in c_values:
        if not c > -1:
            raise PreconditionError(f"need c > -1, got {c}")
        if not 0 < sigma < c + ell:
            raise PreconditionError(f"need 0 < sigma < c + ell, got sigma={sigma}, c+ell={c + ell}")
        if not a > 0:
            raise PreconditionError("need a > 0")
        # ratio in log form: both sides can leave the double range for large c or a
        lr = _intxi_log(c, ell, sigma, a) - _intxi_rhs_log(c, ell, sigma, a)
        sw.add((c, ell, sigma, a), math.exp(lr), 1.0)
    # For c -> inf the mass sits at xi ~ a/(4c), where log((1+xi)/(1-xi)) ~ 2 xi,
    # and the ratio tends to 2^(2 ell - sigma - 1) from below.
    limit = 2.0 ** (2.0 * ell - sigma - 1.0)
    sw.notes["large_c_limit"] = limit
    r = sw.ratios
    if r.size:
        ref = max(float(np.max(r[:3])), limit)
        sw.notes["first_three_max"] = float(np.max(r[:3]))
        sw.notes["uniformity"] = float(np.max(r) / ref)
        sw.verdict_override = bool(np.max(r) <= band * ref)
    return sw


# -- Lemma: Beta-type integral, three lambda regimes ---------------------------

def intlambda_integral(alpha: float, lam: float, b: float, A: float, B: float) -> float:
    """int_0^1 (1-s)^(alpha+b-1/2) / (A - B s)^(alpha+b+lam+1/2) ds.

    With 1 - s = e^-v the denominator is (A - B) + B e^-v, so the peak near
    s = 1 (when A - B is small) becomes a smooth shoulder at v = log(B/(A-B)).
    """
    if not 0 < B < A:
        raise DomainError("need 0 < B < A")
    p = alpha + b - 0.5
    q = alpha + b + lam + 0.5
    D = A - B
    # scale: the integrand is at most max over v of exp(-(p+1)v) / (D + B e^-v)^q
    logscale = -q * math.log(A)

    def g(v):
        return math.exp(-(p + 1.0) * v - q * math.log(D + B * math.exp(-v)) - logscale)

    knee = math.log(B / D) if B > D else None
    pts = [knee] if knee is not None else None
    # beyond the knee the integrand decays like e^(-(p+1)v) D^-q
    vmax = (knee or 0.0) + 80.0 / (p + 1.0) + 40.0
    val = _quad(g, 0.0, vmax, pts)
    return val * math.exp(logscale)


def intlambda_rhs(alpha: float, lam: float, b: float, A: float, B: float) -> float:
    if lam > 0:
        lg = log_gamma(b) + log_gamma(lam) - log_gamma(b + lam)
        return math.exp(lg - (alpha + 0.5) * math.log(A) - b * math.log(B) - lam * math.log(A - B))
    if lam == 0:
        return math.exp(-(alpha + 0.5) * math.log(A) - b * math.log(B)) * math.log(A / (A - B))
    return math.exp(-(alpha + lam + 0.5) * math.log(A) - b * math.log(B))


def random_intlambda_tuples(count: int, regime: str, seed: int = 0) -> list[tuple]:
    """Reproducible admissible (alpha, lambda, b, A, B) tuples for one regime."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        alpha = float(rng.uniform(-0.5, 5.0))
        b = float(rng.uniform(1.0, 6.0))
        A = float(np.exp(rng.uniform(np.log(0.05), np.log(20.0))))
        B = float(A * rng.uniform(0.001, 0.999))
        if regime == "positive":
            lam = float(rng.uniform(0.01, 4.0))
        elif regime == "zero":
            lam = 0.0
        elif regime == "negative":
            lam = -float(rng.uniform(0.01, alpha + 0.5 + 0.99 * b)) if alpha + b > 0 else -0.1
        else:
            raise DomainError(f"unknown regime {regime!r}")
        out.append((alpha, lam, b, A, B))
    return out


def certify_lemma_intlambda(tuples: Iterable[tuple], ceiling: float | None = None) -> LemmaSweep:
    """LHS by quadrature against the regime-matching RHS.

    The ceiling defaults to 1 + EXACT_SLACK when every tuple has lambda >= 0
    (constant-one inequalities) and DEFAULT_CEILING otherwise.
    """
    tuples = [tuple(map(float, t)) for t in tuples]
    for alpha, lam, b, A, B in tuples:
        if alpha < -0.5 or b < 1:
            raise PreconditionError("need alpha >= -1/2 and b >= 1")
        if not 0 < B < A:
            raise DomainError("need 0 < B < A")
    if ceiling is None:
        ceiling = 1.0 + EXACT_SLACK if all(t[1] >= 0 for t in tuples) else DEFAULT_CEILING
    sw = LemmaSweep("lemma_intlambda", ("alpha", "lambda", "b", "A", "B"), ceiling=ceiling)
    for t in tuples:
        sw.add(t, intlambda_integral(*t), intlambda_rhs(*t))
    return sw


# -- log-equivalence on the two halves of (0, 1) -------------------------------

def certify_log_equivalence(xi_grid: Sequence[float], ceiling: float = DEFAULT_CEILING) -> LemmaSweep:
    """log((1+xi)/(1-xi)) against xi on (0, 1/2] and -log(1 - xi^2) on (1/2, 1).

    The lhs column holds the log, the rhs column the comparator; the empirical
    two-sided constants are stored in ``notes`` per branch.
    """
    xi = np.asarray(xi_grid, dtype=float)
    if np.any((xi <= 0) | (xi >= 1)):
        raise DomainError("grid must lie in (0, 1)")
    sw = LemmaSweep("log_equivalence", ("xi",), ceiling=ceiling)
    for v in xi:
        lhs = 2.0 * math.atanh(v)
        rhs = v if v <= 0.5 else -math.log1p(-v * v)
        sw.add((v,), lhs, rhs)
    r = sw.ratios
    small = xi <= 0.5
    for name, mask in (("small", small), ("large", ~small)):
        if mask.any():
            sw.notes[f"{name}_min"] = float(np.min(r[mask]))
            sw.notes[f"{name}_max"] = float(np.max(r[mask]))
    inv = 1.0 / np.min(r)
    sw.notes["max_inverse_ratio"] = float(inv)
    sw.verdict_override = bool(inv <= ceiling)
    return sw


# -- Gamma ratio in the j-uniform bound ---------------------------------------

def gamma_ratio(alpha: float, sigma: float, a: float, j) -> np.ndarray | float:
    """R(j) = Gamma(alpha+aj+1-sigma) Gamma(aj) / (Gamma(alpha+aj+1/2) Gamma(aj+1/2-sigma))."""
    jj = np.asarray(j, dtype=float)
    aj = a * jj
    args = [alpha + aj + 1 - sigma, aj, alpha + aj + 0.5, aj + 0.5 - sigma]
    if any(np.any(x <= 0) for x in args):
        raise DomainError("a Gamma argument is nonpositive; need j >= 1 and a j + 1/2 > sigma")
    lr = log_gamma(args[0]) + log_gamma(args[1]) - log_gamma(args[2]) - log_gamma(args[3])
    out = np.exp(lr)
    return float(out) if jj.ndim == 0 else out


def certify_gamma_ratio(alpha: float, sigma: float, a: float, j_range: Sequence[int],
                        ceiling: float = DEFAULT_CEILING, terminal_band: float = 0.1) -> LemmaSweep:
    """R(j) over j_range; bounded by ``ceiling`` and, for j_max >= 50, R(j_max) within the band of 1."""
    if not 0 < sigma < alpha + 1:
        raise PreconditionError(f"need 0 < sigma < alpha + 1, got sigma={sigma}")
    js = np.asarray(list(j_range), dtype=int)
    R = gamma_ratio(alpha, sigma, a, js)
    sw = LemmaSweep("gamma_ratio", ("alpha", "sigma", "a", "j"), ceiling=ceiling)
    for j, r in zip(js, np.atleast_1d(R)):
        sw.add((alpha, sigma, a, j), r, 1.0)
    last = float(np.atleast_1d(R)[-1])
    sw.notes["R_last"] = last
    if js.max() >= 50:
        sw.verdict_override = abs(last - 1.0) <= terminal_band
    return sw
