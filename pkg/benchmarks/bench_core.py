"""Compare the compiled core with the numpy fallback.

Each backend runs in a fresh interpreter (the backend is chosen at import),
so the numbers are not polluted by caches of the other one.

    python3 benchmarks/bench_core.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, timeit
import numpy as np
import lagfrac
from lagfrac import _core
from lagfrac.specfun import FracParams, log_ive
from lagfrac import operators as ops

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
x = np.sort(rng.uniform(0.01, 30.0, 100_000))
z = np.geomspace(1e-3, 1e4, 100_000)
xs = np.linspace(0.1, 5.0, 40)
f = ops.eigenfunction("hermite", 0.5, 3)
p = FracParams(1, 0.5, 0.7)

cases = {
    "laguerre_scaled k=40, 1e5 pts": lambda: _core.laguerre_scaled(40, 0.5, x),
    "laguerre_table kmax=40, 1e5 pts": lambda: _core.laguerre_table(40, 0.5, x),
    "hermite_table kmax=40, 1e5 pts": lambda: _core.hermite_table(40, x),
    "log_ive nu=3.5, 1e5 pts": lambda: log_ive(3.5, z),
    "apply_frac_kernel hermite, 40 pts": lambda: ops.apply_frac_kernel("hermite", p, f, xs),
}
out = {"backend": lagfrac.BACKEND, "times": {}}
for name, fn in cases.items():
    fn()  # warm caches (node tables, tiers)
    out["times"][name] = min(timeit.repeat(fn, number=1, repeat=repeat))
out["checksum"] = float(np.sum(log_ive(3.5, z[::997])))
print(json.dumps(out))
"""


def run_backend(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["LAGFRAC_PURE_PYTHON"] = "1" if pure else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    compiled = run_backend(False, args.repeat)
    python = run_backend(True, args.repeat)
    if compiled["backend"] != "cython":
        print("note: compiled extension not built, both runs use the fallback")
    width = max(len(k) for k in python["times"])
    print(f"{'case':<{width}}  {'cython [s]':>11}  {'python [s]':>11}  {'speedup':>8}")
    for name, tp in python["times"].items():
        tc = compiled["times"][name]
        print(f"{name:<{width}}  {tc:11.4f}  {tp:11.4f}  {tp / tc:8.2f}")
    gap = abs(compiled["checksum"] - python["checksum"]) / abs(python["checksum"])
    print(f"checksum relative gap: {gap:.2e}")


if __name__ == "__main__":
    main()
