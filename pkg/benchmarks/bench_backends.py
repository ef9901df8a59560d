"""Compare the compiled and pure-Python integrator kernels.

Runs the same workloads through both backends, checks that they return
identical numbers, and prints wall times and the speed-up::

    python3 benchmarks/bench_backends.py [--repeat N] [--json]
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from leslie_hopf.dynamics import (compiled_available, detect_limit_cycles, integrate_orbit,
                                  return_map, sections)
from leslie_hopf.model import ModelParams


def _orbit(backend):
    p = ModelParams(10, "3.3675165", "0.3")
    tr = integrate_orbit(p, (1.01, 1.01), 20.0, 1e-10, backend=backend)
    return (tr.x[-1], tr.y[-1], tr.steps)


def _ladder(backend):
    p = ModelParams(10, "3.3675165", "0.4")
    sec = sections(p)[0]
    return tuple(return_map(p, u, sec, backend=backend)[0]
                 for u in np.geomspace(1e-3, 8.0, 24))


def _detect(backend):
    p = ModelParams(10, "3.3675165", "0.4")
    return tuple(c.radius for c in detect_limit_cycles(p, backend=backend))


WORKLOADS = {
    "orbit (t=20, ~18k steps)": _orbit,
    "return map, 24 radii": _ladder,
    "cycle detection, 2 cycles": _detect,
}


def _time(fn, backend, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not compiled_available():
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    rows = []
    for name, fn in WORKLOADS.items():
        t_c, v_c = _time(fn, "cython", args.repeat)
        t_p, v_p = _time(fn, "python", max(1, args.repeat // 2))
        rows.append({"workload": name, "cython_s": t_c, "python_s": t_p,
                     "speedup": t_p / t_c, "identical": v_c == v_p})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':<28}{'cython':>10}{'python':>10}{'speed-up':>10}  identical")
    for r in rows:
        print(f"{r['workload']:<28}{r['cython_s']:>9.4f}s{r['python_s']:>9.3f}s"
              f"{r['speedup']:>9.0f}x  {r['identical']}")


if __name__ == "__main__":
    main()
