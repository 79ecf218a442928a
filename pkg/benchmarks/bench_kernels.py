"""Compare the compiled kernels with the pure-Python fallback.

Times turning-point search plus the (T, P) period pair over a grid of
energies, and a threaded sweep with the compiled kernel.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import math
import time
from concurrent.futures import ThreadPoolExecutor

from hmsphere import _kernels_py
from hmsphere.curvature import Params
from hmsphere.potential import critical_point

try:
    from hmsphere import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

CASES = [Params(5, 4, 1.0), Params(3, 2, 0.5), Params(8, 3, 2.0), Params(6, 1, 0.05)]


def workload():
    jobs = []
    for p in CASES:
        c0 = critical_point(p).c0
        v0 = critical_point(p).v0
        for j in range(60):
            jobs.append((p, c0 * (1 + 10 ** (-4 + 10 * j / 59)), v0))
    return jobs


def run(mod, jobs):
    out = []
    for p, C, v0 in jobs:
        t1, t2 = mod.turning_points(p.n, p.m, p.H, C, v0)
        out.append(mod.period_pair(p.n, p.m, p.H, C, t1, t2))
    return out


def timed(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        best = min(best, time.perf_counter() - t0)
    return best, res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()

    jobs = workload()
    t_py, r_py = timed(lambda: run(_kernels_py, jobs), args.repeat)
    print(f"python   {len(jobs)} evaluations  {t_py:8.4f} s  {1e6 * t_py / len(jobs):9.1f} us/eval")
    if _kernels_c is None:
        print("compiled kernels not built; nothing to compare")
        return
    t_c, r_c = timed(lambda: run(_kernels_c, jobs), args.repeat)
    print(f"cython   {len(jobs)} evaluations  {t_c:8.4f} s  {1e6 * t_c / len(jobs):9.1f} us/eval")
    print(f"speed-up {t_py / t_c:.1f}x")
    diff = max(max(abs(a[0] - b[0]) / b[0], abs(a[1] - b[1]) / b[1]) for a, b in zip(r_py, r_c))
    print(f"max relative difference between backends {diff:.2e}")

    chunks = [jobs[i :: args.threads] for i in range(args.threads)]

    def threaded():
        with ThreadPoolExecutor(args.threads) as pool:
            return list(pool.map(lambda c: run(_kernels_c, c), chunks))

    t_thr, _ = timed(threaded, args.repeat)
    print(f"cython x{args.threads} threads  {t_thr:8.4f} s  ({t_c / t_thr:.1f}x over one thread)")


if __name__ == "__main__":
    main()
