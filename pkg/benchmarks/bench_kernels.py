#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python fallback.

Micro-benchmarks call both kernel modules directly; the end-to-end row runs
the finite-part verification through the CLI with the backend pinned via
ABMODES_BACKEND.  Usage: python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time
import timeit
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from abmodes import _kernels_py  # noqa: E402

try:
    from abmodes import _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, number, repeat=5):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench_kernels(mod):
    grid_series = [(0.3, 0.5 + 0.11 * k) for k in range(100)]
    grid_asympt = [(-0.7, 14.0 + 0.8 * k) for k in range(100)]

    def bessel_mixed():
        for nu, x in grid_series:
            mod.bessel_j(nu, x)
        for nu, x in grid_asympt:
            mod.bessel_j(nu, x)

    def gamma_sweep():
        # grid dodges the poles at the non-positive integers
        for k in range(200):
            mod.gamma(-4.93 + 0.0701 * k)

    def panels():
        for k in range(50):
            mod.gauss15_product_panel(0.3, -0.3, 1.3, 0.7, 2.0 + k, 3.0 + k)

    return {
        "bessel_j (200 calls, series+asymptotic)": best_of(bessel_mixed, 50),
        "gamma (200 calls, incl. reflection)": best_of(gamma_sweep, 50),
        "gauss15 panel (50 panels)": best_of(panels, 20),
    }


def bench_cli(backend):
    env = dict(os.environ, ABMODES_BACKEND=backend)
    env["PYTHONPATH"] = str(REPO / "src")
    args = [
        sys.executable, "-m", "abmodes.cli", "overlap",
        "--delta", "0.3", "--p", "1.3", "--pprime", "0.7", "--verify",
    ]
    subprocess.run(args, env=env, capture_output=True, check=True)  # warm caches
    t0 = time.perf_counter()
    subprocess.run(args, env=env, capture_output=True, check=True)
    return time.perf_counter() - t0


def main():
    print(f"abmodes kernel benchmark ({'compiled extension found' if _kernels_c else 'pure Python only'})")
    py = bench_kernels(_kernels_py)
    cc = bench_kernels(_kernels_c) if _kernels_c else None
    width = max(len(k) for k in py)
    header = f"{'case':<{width}}  {'python':>12}" + ("  {:>12}  {:>8}".format("compiled", "speedup") if cc else "")
    print(header)
    print("-" * len(header))
    for key, t_py in py.items():
        line = f"{key:<{width}}  {t_py * 1e6:>10.1f}us"
        if cc:
            t_c = cc[key]
            line += f"  {t_c * 1e6:>10.1f}us  {t_py / t_c:>7.1f}x"
        print(line)
    t_py = bench_cli("python")
    line = f"{'CLI overlap --verify (end to end)':<{width}}  {t_py:>10.3f}s "
    if _kernels_c:
        t_c = bench_cli("c")
        line += f"  {t_c:>10.3f}s   {t_py / t_c:>6.1f}x"
    print(line)


if __name__ == "__main__":
    main()
