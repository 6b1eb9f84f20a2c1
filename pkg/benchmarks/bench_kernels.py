"""Time the numba kernels against the numpy reference path.

    python benchmarks/bench_kernels.py [--repeat N]

Both paths are run on the same inputs and their outputs compared before
any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from concordkit import _kernels as K


def _time(fn, repeat):
    fn()  # warm-up (and numba compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_magnus(repeat, rng):
    rows = []
    for r, c in ((2, 4), (3, 4), (2, 6), (4, 5)):
        off = K.offsets(r, c)
        n = int(off[-1])
        a = rng.integers(-5, 6, n).astype(np.int64)
        b = rng.integers(-5, 6, n).astype(np.int64)
        x = K.magnus_mul(a, b, r, c, off, use_numba=False)
        y = K.magnus_mul(a, b, r, c, off, use_numba=True)
        assert np.array_equal(x, y), "magnus paths disagree"
        t_np = _time(lambda: K.magnus_mul(a, b, r, c, off, use_numba=False), repeat)
        t_nb = _time(lambda: K.magnus_mul(a, b, r, c, off, use_numba=True), repeat)
        rows.append((f"magnus_mul r={r} c={c} (len {n})", t_np, t_nb))
    return rows


def bench_signatures(repeat, rng):
    rows = []
    for size, npts in ((2, 2000), (6, 2000), (12, 1000)):
        S = rng.integers(-2, 3, (size, size))
        V = S.copy()
        V[0, 1] += 1  # keep V - V^T generic; exact unimodularity is irrelevant here
        thetas = np.linspace(0.01, np.pi - 0.01, npts)
        x = K.lt_signature_samples(V, thetas, use_numba=False)
        y = K.lt_signature_samples(V, thetas, use_numba=True)
        agree = float(np.mean(x == y))
        t_np = _time(lambda: K.lt_signature_samples(V, thetas, use_numba=False), repeat)
        t_nb = _time(lambda: K.lt_signature_samples(V, thetas, use_numba=True), repeat)
        rows.append((f"lt_signature_samples n={size} pts={npts} (agree {agree:.4f})", t_np, t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is available")
        return
    rng = np.random.default_rng(args.seed)
    rows = bench_magnus(args.repeat, rng) + bench_signatures(args.repeat, rng)
    w = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{w}}  {'numpy ms':>10}  {'numba ms':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(f"{name:<{w}}  {1e3 * t_np:>10.3f}  {1e3 * t_nb:>10.3f}  {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
