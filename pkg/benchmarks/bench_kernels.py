"""Time the compiled and pure-Python table kernels on the same random tables.

    python3 benchmarks/bench_kernels.py [--sizes 16 32 64] [--repeat 3]
"""

import argparse
import time

import numpy as np

from aowf.kernels import backends


def tables(n, seed=0, holes=0.1):
    rng = np.random.default_rng(seed)
    left = rng.integers(0, n, size=(n, n)).astype(np.int64)
    left[rng.random(left.shape) < holes] = -1
    return left, left.copy()


def max_table(n):
    """Associative, so the kernels scan every triple without recording any."""
    idx = np.arange(n, dtype=np.int64)
    t = np.maximum.outer(idx, idx)
    return t, t.copy()


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 96])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    mods = backends()
    if "compiled" not in mods:
        print("compiled kernels not built; only the Python backend is available")
    names = sorted(mods)
    print(f"{'kernel':<16}{'n':>5}" + "".join(f"{k:>12}" for k in names) + f"{'speedup':>10}")
    for n in args.sizes:
        left, right = tables(n)
        mx, mx_r = max_table(n)
        jobs = {
            "assoc": lambda m: m.assoc_violations(left, right, -1),
            "assoc(clean)": lambda m: m.assoc_violations(mx, mx_r, -1),
            "weak-assoc": lambda m: m.weak_assoc_violations(left, right, -1),
            "comm": lambda m: m.comm_violations(left, -1),
        }
        for label, job in jobs.items():
            t = {k: best_of(lambda: job(mods[k]), args.repeat) for k in names}
            speed = f"{t['python'] / t['compiled']:>9.1f}x" if "compiled" in t else f"{'-':>10}"
            print(f"{label:<16}{n:>5}" + "".join(f"{t[k]:>11.4f}s" for k in names) + speed)


if __name__ == "__main__":
    main()
