#!/usr/bin/env python3
"""Compare the compiled kernel extension against the numpy fallback.

Kernel-level timings run in-process against both modules; the end-to-end
membership-fuzz pipeline runs in subprocesses with LOCPS_BACKEND forced, so
each side uses exactly the backend it claims.

    python3 benchmarks/bench_backends.py [--trials 2000]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from locps import _kernels_py

try:
    from locps import _kernels
except ImportError:
    _kernels = None


def bench(fn, args_list, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in args_list:
            fn(a)
        best = min(best, time.perf_counter() - t0)
    return best / len(args_list)


def kernel_rows(trials):
    rng = np.random.default_rng(0)
    rows = []
    for n in (4, 6, 8, 16):
        mats = []
        for _ in range(trials):
            g = rng.standard_normal((n, n))
            mats.append(0.5 * (g + g.T))
        for name, attr in (
            ("det", "det_f64"),
            ("eigvals", "eigvals_f64"),
            ("drop_one_min_eigs", "drop_one_min_eigs_f64"),
        ):
            t_py = bench(getattr(_kernels_py, attr), mats)
            if _kernels is not None:
                t_c = bench(getattr(_kernels, attr), mats)
                speedup = t_py / t_c
                rows.append((f"{name} n={n}", t_py * 1e6, t_c * 1e6, speedup))
            else:
                rows.append((f"{name} n={n}", t_py * 1e6, float("nan"), float("nan")))
    return rows


def pipeline_seconds(backend, n, trials):
    env = dict(os.environ, LOCPS_BACKEND=backend)
    code = (
        "import time\n"
        "from locps.harness import SampleConfig, fuzz_bound\n"
        "from locps.bounds import InequalityId\n"
        f"cfg = SampleConfig(n={n}, count={trials}, seed=0)\n"
        "t0 = time.perf_counter()\n"
        "rep = fuzz_bound(InequalityId.EXT_HADAMARD, cfg)\n"
        "assert not rep.violations\n"
        "print(time.perf_counter() - t0)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    args = ap.parse_args()

    print(f"compiled extension available: {_kernels is not None}\n")
    print(f"{'kernel':28s} {'python us':>12s} {'c us':>12s} {'speedup':>9s}")
    for name, t_py, t_c, speedup in kernel_rows(min(args.trials, 500)):
        print(f"{name:28s} {t_py:12.2f} {t_c:12.2f} {speedup:8.1f}x")

    print(f"\nend-to-end membership fuzz (EXT_HADAMARD, {args.trials} trials):")
    for n in (4, 8):
        t_py = pipeline_seconds("python", n, args.trials)
        line = f"  n={n}: python {t_py:7.2f}s"
        if _kernels is not None:
            t_c = pipeline_seconds("c", n, args.trials)
            line += f"   c {t_c:7.2f}s   speedup {t_py / t_c:5.1f}x"
        print(line)


if __name__ == "__main__":
    main()
