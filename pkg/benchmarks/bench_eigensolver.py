#!/usr/bin/env python3
"""Benchmark the dense complex eigensolver kernel: numba JIT vs pure numpy.

The jitted dispatcher and its uncompiled Python source are timed on the same
batches of random complex matrices. With PTMATRIX_DISABLE_NUMBA=1 (or without
numba installed) only the fallback path exists and is reported alone.

Usage: python benchmarks/bench_eigensolver.py [--sizes 2,4,8,16,32,64] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ptmatrix import _kernels


def batch(rng: np.random.Generator, dim: int, count: int) -> list[np.ndarray]:
    return [
        np.ascontiguousarray(
            rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
        )
        for _ in range(count)
    ]


def time_solver(fn, mats: list[np.ndarray], repeat: int) -> float:
    """Best-of-repeat mean seconds per matrix."""
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for m in mats:
            fn(m, 30 * m.shape[0] + 10)
        best = min(best, (time.perf_counter() - t0) / len(mats))
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,4,8,16,32,64")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    jitted = _kernels.eig_all
    python = _kernels.eig_all_python
    have_jit = _kernels.NUMBA_ENABLED

    if have_jit:
        t0 = time.perf_counter()
        jitted(np.eye(3, dtype=np.complex128), 100)  # trigger compilation
        print(f"jit warm-up (compile or cache load): {time.perf_counter() - t0:.2f}s")
        print(f"{'dim':>4} {'n':>5} {'jit us':>10} {'numpy us':>10} {'speedup':>8}")
    else:
        print("numba unavailable or disabled; timing the numpy fallback only")
        print(f"{'dim':>4} {'n':>5} {'numpy us':>10}")

    for dim in sizes:
        count = max(3, min(200, 4000 // (dim * dim)))
        mats = batch(rng, dim, count)
        t_py = time_solver(python, mats, args.repeat)
        if have_jit:
            t_jit = time_solver(jitted, mats, args.repeat)
            print(
                f"{dim:>4} {count:>5} {t_jit * 1e6:>10.1f} {t_py * 1e6:>10.1f} "
                f"{t_py / t_jit:>7.1f}x"
            )
        else:
            print(f"{dim:>4} {count:>5} {t_py * 1e6:>10.1f}")

    # sanity: both paths agree on one matrix
    m = batch(rng, 6, 1)[0]
    w1, _, ok1 = jitted(m.copy(), 200)
    w2, _, ok2 = python(m.copy(), 200)
    assert ok1 and ok2
    assert np.allclose(np.sort_complex(w1), np.sort_complex(w2), atol=1e-12)
    print("paths agree on eigenvalues (6x6 spot check)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
