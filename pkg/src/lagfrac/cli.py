"""Command-line front end: ``lagfrac <subcommand> [flags]``.

Every subcommand accepts ``--config file.json`` whose keys are the long flag
names (dashes or underscores); flags given on the command line win.  Results
are written as CSV (17 significant digits) next to a JSON run manifest.

Exit codes: 0 pass, 2 precondition violated, 3 numerical failure,
4 certificate failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, BACKEND
from . import ineqlab, operators as ops, oscillator as osc, potential as pot
from .grids import GridSpec
from .quadrature import QuadratureError
from .specfun import DomainError, FracParams

OUTPUT_ENV = "LAGFRAC_OUTPUT_DIR"

EXIT_OK, EXIT_PRECONDITION, EXIT_NUMERICAL, EXIT_FAILED = 0, 2, 3, 4


class ConfigError(DomainError):
    pass


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17e" % float(v)
    return str(v)


# -- value parsers ------------------------------------------------------------

def _floats(text) -> list[float]:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _number(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    t = str(text).strip().lower()
    return math.inf if t in ("inf", "infinity") else float(t)


def parse_grid(text) -> GridSpec:
    """``geometric:lo:hi:n``, ``uniform:lo:hi:n`` or ``explicit:x1,x2,...``."""
    if isinstance(text, GridSpec):
        return text
    kind, _, rest = str(text).partition(":")
    try:
        if kind == "explicit":
            return GridSpec.explicit(_floats(rest))
        lo, hi, n = rest.split(":")
        return GridSpec(float(lo), float(hi), int(n), scheme=kind)
    except ValueError as exc:
        raise ConfigError(f"bad grid descriptor {text!r}: {exc}") from None


def parse_points(text) -> np.ndarray:
    """A comma list of numbers or a grid descriptor."""
    s = str(text) if not isinstance(text, (list, tuple, int, float)) else None
    if s is not None and ":" in s:
        return parse_grid(s).nodes()
    return np.asarray(_floats(text), dtype=float)


def parse_pairs(text) -> list[tuple[float, float]]:
    """``p:q,p:q,...`` (``inf`` allowed)."""
    if isinstance(text, (list, tuple)):
        return [(_number(a), _number(b)) for a, b in text]
    out = []
    for item in str(text).split(","):
        a, b = item.split(":")
        out.append((_number(a), _number(b)))
    return out


def parse_function(text, system: str, alpha: float, a: float = 1.0, j: int = 0) -> ops.TestFunction:
    """Test-function descriptor.

    ``phi:k`` (eigenfunction of the shifted operator), ``gauss:center:width[:height]``,
    ``power:p:center:width``, ``indicator:lo:hi``, ``zero``, ``csv:path`` (columns x, value).
    """
    kind, _, rest = str(text).partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "phi":
            power = a * j if system == "convolution" else 0.0
            return ops.eigenfunction(system, alpha + a * j, int(args[0]), power=power)
        if kind == "gauss":
            return ops.gaussian_bump(*map(float, args))
        if kind == "power":
            return ops.power_bump(*map(float, args))
        if kind == "indicator":
            return ops.indicator_bump(*map(float, args))
        if kind == "zero":
            return ops.zero_function()
        if kind == "csv":
            data = np.loadtxt(rest, delimiter=",", skiprows=1, ndmin=2)
            return ops.tabulated(data[:, 0], data[:, 1])
    except (IndexError, ValueError, OSError) as exc:
        raise ConfigError(f"bad function descriptor {text!r}: {exc}") from None
    raise ConfigError(f"unknown function kind {kind!r}")


# -- outputs ------------------------------------------------------------------

class RunOutput:
    """Collects CSV tables and a verdict; nothing touches disk until ``commit``."""

    def __init__(self):
        self.tables: list[tuple[str, str]] = []
        self.verdict: bool | None = None
        self.summary: list[str] = []

    def table(self, suffix: str, header, rows):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        self.tables.append((suffix, buf.getvalue()))

    def raw(self, suffix: str, text: str):
        self.tables.append((suffix, text))

    def commit(self, out_dir: Path, stem: str) -> list[str]:
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for suffix, text in self.tables:
            path = out_dir / (f"{stem}{suffix}.csv")
            tmp = path.with_suffix(".csv.tmp")
            tmp.write_text(text)
            tmp.replace(path)
            paths.append(str(path))
        return paths


def _pool_map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


# -- subcommands --------------------------------------------------------------

def _cert_rows(cert):
    return [(cert.name, sid, ";".join(f"{k}={_fmt(v)}" for k, v in params.items()), ratio, ax, ay, cert.passed)
            for sid, params, ratio, ax, ay in cert.rows]


CERT_HEADER = ["certificate", "sweep_id", "parameters", "sup_ratio", "argmax_x", "argmax_y", "passed"]


def cmd_certify_heat_bound(cfg, out, threads):
    xi = np.linspace(cfg["xi_lo"], cfg["xi_hi"], int(cfg["xi_n"]))
    cert = pot.certify_heat_bound(_floats(cfg["alpha"]), xi, parse_grid(cfg["grid"]),
                                  base_max=cfg["base_max"], band=cfg["band"])
    out.table("", CERT_HEADER, _cert_rows(cert))
    out.verdict = cert.passed
    out.summary.append(f"heat_bound sup_ratio={cert.sup_ratio:.6g} ({cert.criterion})")


def cmd_certify_potential_bound(cfg, out, threads):
    cert = pot.certify_prop_estimacion(_floats(cfg["alpha"]), cfg["sigma"], parse_grid(cfg["grid"]),
                                       c_exp=cfg["c_exp"], band=cfg["band"], rtol=cfg["rtol"])
    out.table("", CERT_HEADER, _cert_rows(cert))
    out.verdict = cert.passed
    out.summary.append(f"potential_bound sup_ratio={cert.sup_ratio:.6g} ({cert.criterion})")


def cmd_certify_mathk(cfg, out, threads):
    sigmas = _floats(cfg["sigma"])
    alpha, a = cfg["alpha"], cfg["a"]
    for s in sigmas:  # fail closed before any work
        if not 0 < s < alpha + 1:
            raise pot.PreconditionError(f"need 0 < sigma < alpha + 1 = {alpha + 1:g}, got sigma = {s:g}")
    if a < 1:
        raise pot.PreconditionError("need a >= 1")
    grid = parse_grid(cfg["grid"])
    certs = _pool_map(lambda s: pot.certify_prop_mathK(alpha, s, a, int(cfg["jmax"]), grid, cfg["c_exp"],
                                                       cfg["band"], int(cfg["base_j"]), int(cfg["jmin"]),
                                                       cfg["rtol"]), sigmas, threads)
    rows = [r for c in certs for r in _cert_rows(c)]
    out.table("", CERT_HEADER, rows)
    out.verdict = all(c.passed for c in certs)
    for s, c in zip(sigmas, certs):
        out.summary.append(f"prop_mathK sigma={s:g} sup_ratio={c.sup_ratio:.6g} ({c.criterion})")


def cmd_certify_overline(cfg, out, threads):
    cases = parse_pairs(cfg["cases"])
    for alpha, sigma in cases:
        if alpha < -0.5 or not 0 < sigma < alpha + 1:
            raise pot.PreconditionError(f"need alpha >= -1/2 and 0 < sigma < alpha + 1, got {(alpha, sigma)}")
    x = np.geomspace(cfg["x_lo"], cfg["x_hi"], int(cfg["x_n"]))
    cert = pot.certify_overline_moment(cases, x, cfg["ceiling"], cfg["rtol"])
    out.table("", CERT_HEADER, _cert_rows(cert))
    out.verdict = cert.passed
    out.summary.append(f"overline_moment sup={cert.sup_ratio:.6g} ({cert.criterion})")


LEMMAS = ("ns", "intxi", "intlambda", "logeq", "gamma")


def _lemma_jobs(cfg):
    which = [w.strip() for w in str(cfg["lemma"]).split(",")]
    if "all" in which:
        which = list(LEMMAS)
    bad = [w for w in which if w not in LEMMAS]
    if bad:
        raise ConfigError(f"unknown lemma(s) {bad}; choose from {LEMMAS} or all")
    seed, count = int(cfg["seed"]), int(cfg["count"])
    jobs = []
    for w in which:
        if w == "ns":
            jobs.append(lambda: ineqlab.certify_lemma_NS([-1, 0, 0.5, 1, 2, 3], [0.01, 0.1, 0.5, 1, 2, 5, 20]))
        elif w == "intxi":
            jobs.append(lambda: ineqlab.certify_lemma_intxi([-0.5, 0, 0.5, 1, 2, 5, 10, 20, 50, 100], 1.0, 0.3, 1.0))
        elif w == "intlambda":
            for k, regime in enumerate(("positive", "zero", "negative")):
                jobs.append(lambda regime=regime, k=k: _intlambda(regime, count, seed + k))
        elif w == "logeq":
            jobs.append(lambda: ineqlab.certify_log_equivalence(np.linspace(0.001, 0.999, 200)))
        elif w == "gamma":
            for t in ((0.5, 0.25, 1.0), (2.0, 0.4, 1.5)):
                jobs.append(lambda t=t: ineqlab.certify_gamma_ratio(*t, range(1, 51)))
    return jobs


def _intlambda(regime, count, seed):
    sw = ineqlab.certify_lemma_intlambda(ineqlab.random_intlambda_tuples(count, regime, seed))
    sw.lemma_id = f"lemma_intlambda_{regime}"
    return sw


def cmd_certify_lemmas(cfg, out, threads):
    sweeps = _pool_map(lambda job: job(), _lemma_jobs(cfg), threads)
    seen = {}
    for sw in sweeps:
        buf = io.StringIO()
        ineqlab.write_sweep_csv(sw, buf)
        n = seen.get(sw.lemma_id, 0)
        seen[sw.lemma_id] = n + 1
        out.raw(f"_{sw.lemma_id}" + (f"_{n}" if n else ""), buf.getvalue())
        out.summary.append(f"{sw.lemma_id}: max_ratio={sw.max_ratio:.6g} ceiling={sw.ceiling:g} "
                           f"{'pass' if sw.verdict else 'fail'}")
    out.verdict = all(sw.verdict for sw in sweeps)


def cmd_apply_frac(cfg, out, threads):
    system = cfg["system"]
    params = FracParams(1, cfg["alpha"], cfg["sigma"], cfg["a"], int(cfg["j"]))
    f = parse_function(cfg["f"], system, cfg["alpha"], cfg["a"], int(cfg["j"]))
    x = parse_points(cfg["x"])
    if np.any(x <= 0):
        raise ConfigError("evaluation points must be positive")
    if cfg["method"] == "spectral":
        shifted = FracParams(1, float(params.shifted_alpha[0]), params.sigma)
        g = f if system == "hermite" or params.j == 0 else f.times_power(-params.a * params.j)
        vals = ops.synthesize(ops.apply_frac_spectral(ops.expand(system, shifted, g, M=int(cfg["M"])),
                                                      params.sigma), x)
        if system == "convolution" and params.j:
            vals = vals * params.weight(x)
    elif system == "convolution" and params.j:
        vals = ops.apply_weighted_family(params, f, x, method=cfg["method"])
    else:
        vals = ops.apply_frac_kernel(system, params, f, x, method=cfg["method"])
    vals = np.atleast_1d(vals)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite operator output")
    out.table("", ["x", "value"], zip(x, vals))
    out.verdict = True
    out.summary.extend("%.17e" % v for v in vals)


def cmd_vv_norms(cfg, out, threads):
    system = cfg["system"]
    alpha, sigma, a, J = cfg["alpha"], cfg["sigma"], cfg["a"], int(cfg["J"])
    pqs = parse_pairs(cfg["pq"])
    specs = []
    for p, q in pqs:
        spec = ops.NormSpec(p, q, cfg["r"], cfg["t"], cfg["s"],
                            "mu_alpha" if system == "convolution" else "lebesgue", alpha)
        bad = (ops.convolution_violations(p, q, sigma, alpha) if system == "convolution"
               else ops.hermite_violations(spec, sigma, 1))
        if bad:
            raise ops.AdmissibilityError(f"(p, q) = ({p:g}, {q:g}) not admissible: " + "; ".join(bad))
        specs.append(spec)
    fam = ops.mixed_family(system, alpha, a, J)
    base = FracParams(1, alpha, sigma, a)
    grids = [parse_grid(cfg["grid"])]
    if cfg["refine_check"]:
        g = grids[0]
        grids.append(GridSpec(g.lo, g.hi, 2 * g.n, g.scheme))
    results = []
    for grid in grids:
        outs, row = None, []
        for spec in specs:
            res, outs = ops.vector_valued_norms(system, base, sigma, fam, spec, grid, outputs=outs,
                                                return_outputs=True)
            row.append(res)
        results.append(row)
    rows, ok = [], True
    for i, spec in enumerate(specs):
        r0 = results[0][i]
        change = abs(results[1][i].ratio / r0.ratio - 1.0) if len(results) > 1 else float("nan")
        finite = math.isfinite(r0.ratio) and r0.ratio > 0
        stable = (not cfg["refine_check"]) or change < cfg["stability_band"]
        ok &= finite and stable
        rows.append((system, spec.p, spec.q, spec.r, r0.lhs, r0.rhs, r0.ratio, change, finite and stable))
        out.summary.append(f"p={spec.p:g} q={spec.q:g}: ratio={r0.ratio:.6g} refinement_change={change:.3g}")
    out.table("", ["system", "p", "q", "r", "lhs", "rhs", "ratio", "refinement_change", "passed"], rows)
    out.verdict = ok


def _oscillator_family(cfg):
    n = int(cfg["n"])
    fam = []
    for item in str(cfg["family"]).split(","):
        kind, _, rest = item.partition(":")
        if kind == "ground":
            fam.append(osc.RadialProfileSet.gaussian(n))
        elif kind == "eigen":
            m, j, ell = (int(v) for v in rest.split("/"))
            fam.append(osc.RadialProfileSet.eigenfunction(osc.SphericalIndex(m, j, ell, n)))
        elif kind == "csv":
            fam.append(osc.RadialProfileSet.from_csv(rest, n))
        else:
            raise ConfigError(f"unknown oscillator family member {item!r}")
    return fam


def cmd_oscillator(cfg, out, threads):
    n, sigma = int(cfg["n"]), cfg["sigma"]
    p, q = _number(cfg["p"]), _number(cfg["q"])
    bad = osc.admissible_oscillator(p, q, sigma, n)
    if bad:
        raise ops.AdmissibilityError("exponents not admissible: " + "; ".join(bad))
    fam = _oscillator_family(cfg)
    rows = osc.theorem31_sweep(fam, sigma, p, q, n)
    table = [(r.name, n, sigma, p, q, r.lhs, r.rhs, r.ratio, r.sigma_in_range) for r in rows]
    ok = all(math.isfinite(r.ratio) for r in rows)
    out.table("", ["name", "n", "sigma", "p", "q", "lhs", "rhs", "ratio", "sigma_in_range"], table)
    for r in rows:
        out.summary.append(f"{r.name}: ratio={r.ratio:.12g} sigma_in_range={r.sigma_in_range}")
    if cfg["cross_check"]:
        if n != 2:
            raise ConfigError("the cross-basis check is implemented for n = 2")
        kmax = int(cfg["kmax"])
        r = np.linspace(0.2, 4.0, 20)
        th = 2 * np.pi * np.arange(20) / 20
        keys = [(k1, k - k1) for k in range(kmax + 1) for k1 in range(k + 1)]
        gaps = _pool_map(lambda key: osc.cross_basis_check({key: 1.0}, sigma, r, th), keys, threads)
        cross = [(k1, k2, sigma, g, g <= cfg["cross_tol"]) for (k1, k2), g in zip(keys, gaps)]
        out.table("_cross", ["k1", "k2", "sigma", "rel_gap", "passed"], cross)
        ok &= all(c[-1] for c in cross)
        out.summary.append(f"cross-basis max gap {max(gaps):.3g}")
    out.verdict = ok


def cmd_admissible(cfg, out, threads):
    system, p, q, sigma = cfg["system"], _number(cfg["p"]), _number(cfg["q"]), cfg["sigma"]
    if system == "convolution":
        bad = ops.convolution_violations(p, q, sigma, cfg["alpha"])
    elif system == "hermite":
        bad = ops.hermite_violations(ops.NormSpec(p, q, cfg["r"], cfg["t"], cfg["s"]), sigma, int(cfg["n"]))
    elif system == "oscillator":
        bad = osc.admissible_oscillator(p, q, sigma, int(cfg["n"]))
    else:
        raise ConfigError(f"unknown system {system!r}")
    ok = not bad
    out.table("", ["system", "p", "q", "sigma", "admissible", "violations"],
              [(system, p, q, sigma, ok, "; ".join(bad))])
    out.summary.append("true" if ok else "false")
    out.summary.extend(f"  violated: {b}" for b in bad)
    out.verdict = True  # a predicate query always succeeds


# -- parser and defaults ------------------------------------------------------

ALPHA_SWEEP = "-0.5,0,0.5,2,10,20,35,50"

COMMANDS = {
    "certify-heat-bound": (cmd_certify_heat_bound, {
        "alpha": ALPHA_SWEEP, "grid": "geometric:0.1:10:30", "xi_lo": 0.02, "xi_hi": 0.98, "xi_n": 20,
        "base_max": 10.0, "band": 1.05}),
    "certify-potential-bound": (cmd_certify_potential_bound, {
        "alpha": "-0.5,0,0.5,1,2,5,10,20", "sigma": 0.5, "grid": "geometric:0.2:8:16",
        "c_exp": pot.C_EXP_DEFAULT, "band": 1.05, "rtol": 1e-10}),
    "certify-mathk": (cmd_certify_mathk, {
        "alpha": 0.5, "sigma": "0.3", "a": 1.0, "jmax": 20, "jmin": 0, "base_j": 3, "band": 1.1,
        "grid": "geometric:0.1:10:30", "c_exp": pot.C_EXP_DEFAULT, "rtol": 1e-10}),
    "certify-overline": (cmd_certify_overline, {
        "cases": "-0.5:0.3,0.5:0.7,2:1.5", "x_lo": 2.0, "x_hi": 40.0, "x_n": 20, "ceiling": 10.0,
        "rtol": 1e-10}),
    "certify-lemmas": (cmd_certify_lemmas, {"lemma": "all", "seed": 0, "count": 100}),
    "apply-frac": (cmd_apply_frac, {
        "system": "hermite", "alpha": 0.0, "sigma": 1.0, "a": 1.0, "j": 0, "f": "phi:0", "x": "1",
        "method": "semigroup", "M": 64}),
    "vv-norms": (cmd_vv_norms, {
        "system": "convolution", "alpha": 0.5, "sigma": 0.5, "a": 1.0, "J": 8, "r": 2.0, "t": 0.0,
        "s": 0.0, "pq": "2:2,2:4,1.5:3,4:4,3:2,4:inf", "grid": "geometric:0.001:40:192",
        "refine_check": False, "stability_band": 0.05}),
    "oscillator": (cmd_oscillator, {
        "n": 2, "sigma": 1.0, "p": "2", "q": "2", "family": "ground", "cross_check": False,
        "kmax": 4, "cross_tol": 1e-7}),
    "admissible": (cmd_admissible, {
        "system": "convolution", "p": "2", "q": "2", "sigma": 0.5, "alpha": 0.5, "n": 1, "r": 2.0,
        "t": 0.0, "s": 0.0}),
}

_TYPES = {"jmax": int, "jmin": int, "base_j": int, "xi_n": int, "x_n": int, "seed": int, "count": int,
          "j": int, "M": int, "J": int, "n": int, "kmax": int}
_FLAGS = {"refine_check", "cross_check"}
_FLAG_NAMES = {"jmax": "--jmax", "jmin": "--jmin", "J": "--J", "M": "--M"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagfrac", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"lagfrac {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, defaults) in COMMANDS.items():
        sp = sub.add_parser(name, argument_default=None)
        sp.add_argument("--config", help="JSON file with default values for the flags")
        sp.add_argument("--out-dir", help=f"output directory (default ${OUTPUT_ENV} or .)")
        sp.add_argument("--output", help="file stem for the CSV and manifest (default: command name)")
        sp.add_argument("--threads", type=int, help="worker threads for independent sweep members")
        for key, value in defaults.items():
            flag = _FLAG_NAMES.get(key, "--" + key.replace("_", "-"))
            if key in _FLAGS:
                sp.add_argument(flag, dest=key, action="store_true", default=None)
            else:
                sp.add_argument(flag, dest=key, metavar=key.upper())
    return parser


def resolve_config(ns: argparse.Namespace) -> dict:
    """defaults < JSON config < command-line flags, then type coercion."""
    _, defaults = COMMANDS[ns.command]
    cfg = dict(defaults)
    if ns.config:
        try:
            loaded = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from None
        for key, value in loaded.items():
            k = key.replace("-", "_")
            if k in ("out_dir", "output", "threads"):
                setattr(ns, k, getattr(ns, k) if getattr(ns, k) is not None else value)
                continue
            if k not in defaults:
                raise ConfigError(f"unknown config key {key!r} for {ns.command}")
            cfg[k] = value
    for key in defaults:
        v = getattr(ns, key, None)
        if v is not None:
            cfg[key] = v
    for key, default in defaults.items():
        v = cfg[key]
        try:
            if key in _FLAGS:
                cfg[key] = bool(v)
            elif key in _TYPES:
                cfg[key] = int(v)
            elif isinstance(default, float):
                cfg[key] = float(v)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value {v!r} for {key}") from None
    return cfg


def _versions() -> dict:
    import scipy
    return {"lagfrac": __version__, "backend": BACKEND, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def run(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    start = time.perf_counter()
    fn, _ = COMMANDS[ns.command]
    out = RunOutput()
    try:
        cfg = resolve_config(ns)
        threads = ns.threads if ns.threads is not None else (os.cpu_count() or 1)
        if threads < 1:
            raise ConfigError("--threads must be >= 1")
        with np.errstate(over="ignore", under="ignore"):
            fn(cfg, out, threads)
    except (DomainError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (QuadratureError, ArithmeticError, FloatingPointError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    status = EXIT_OK if out.verdict else EXIT_FAILED
    out_dir = Path(ns.out_dir or os.environ.get(OUTPUT_ENV, "."))
    stem = ns.output or ns.command
    paths = out.commit(out_dir, stem)
    manifest = {"command": ns.command, "config": cfg, "threads": threads, "versions": _versions(),
                "wall_time_s": time.perf_counter() - start, "exit_status": status, "outputs": paths}
    (out_dir / f"{stem}.manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str))
    for line in out.summary:
        print(line)
    if ns.command != "admissible":
        print("verdict:", "pass" if out.verdict else "fail")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
