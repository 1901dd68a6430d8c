"""Time the numba scan kernels against the numpy fallback.

Run: python3 benchmarks/bench_kernels.py --radius 60 --repeats 5
"""
import argparse
import random
import time

from intpolyopt import _accel
from intpolyopt.instances import random_instance


def best_of(func, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0, out


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--radius", type=int, default=60)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    if not _accel.NUMBA_ENABLED:
        print("numba disabled (INTPOLYOPT_DISABLE_NUMBA set or numba missing); timing numpy only")

    P = random_instance(args.dim, 1, args.radius, args.seed).polytope
    lo = [-args.radius] * args.dim
    hi = [args.radius] * args.dim
    scan = {}
    for name, flag in (("numpy", False), ("numba", True)):
        if flag and not _accel.NUMBA_ENABLED:
            continue
        _accel.scan_members(P.A, P.b, lo, hi, use_numba=flag)  # warm up / compile
        scan[name] = best_of(lambda: _accel.scan_members(P.A, P.b, lo, hi, use_numba=flag), args.repeats)
    box = (2 * args.radius + 1) ** args.dim
    for name, (ms, pts) in scan.items():
        print(f"scan_members  {name:5s}  {ms:10.3f} ms  box={box}  members={len(pts)}")
    if len(scan) == 2:
        assert scan["numpy"][1] == scan["numba"][1]
        print(f"scan_members  speedup {scan['numpy'][0] / max(scan['numba'][0], 1e-9):.2f}x")

    rng = random.Random(args.seed)
    d = args.dim
    adj = [[rng.randint(-40, 40) for _ in range(d)] for _ in range(d)]
    bounds = [12] * d
    threshold = 10**6
    short = {}
    for name, flag in (("numpy", False), ("numba", True)):
        if flag and not _accel.NUMBA_ENABLED:
            continue
        _accel.short_vector(adj, bounds, threshold, use_numba=flag)
        short[name] = best_of(lambda: _accel.short_vector(adj, bounds, threshold, use_numba=flag), args.repeats)
    for name, (ms, w) in short.items():
        print(f"short_vector  {name:5s}  {ms:10.3f} ms  w={w}")
    if len(short) == 2:
        assert short["numpy"][1] == short["numba"][1]
        print(f"short_vector  speedup {short['numpy'][0] / max(short['numba'][0], 1e-9):.2f}x")


if __name__ == "__main__":
    main()
