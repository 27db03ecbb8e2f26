"""Numba kernels vs the pure-numpy fallback.

Times the hot kernels on their own and a full IRS decode under each
backend.  Both backends must agree bit for bit; the script checks that
before it reports any timing.

    python benchmarks/bench_backends.py [--sizes 256 1024 4096] [--reps 5]
"""

import argparse
import statistics
import time

import numpy as np

from semiadv import kernels, poly
from semiadv.channel import make_rng
from semiadv.experiment import bench_instance
from semiadv import decode

P = 65537


def timeit(fn, reps):
    fn()  # warm-up (and JIT compile)
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts)


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(u, v) for u, v in zip(x, y))
    return np.array_equal(x, y)


def kernel_cases(n, rng):
    a = rng.integers(0, P, n).astype(np.int64)
    b = rng.integers(0, P, n).astype(np.int64)
    xs = rng.integers(1, P, n).astype(np.int64)
    N = 1 << (2 * n - 1).bit_length()
    rev, tw, twq, *_ = poly._ntt_tables(P, N)
    pad = np.zeros((1, N), np.int64)
    pad[0, :n] = a
    return {
        "conv": lambda: kernels.k("conv")(a, b, P),
        "karatsuba": lambda: kernels.k("karatsuba")(a, b, P, 32),
        "ntt": lambda: kernels.k("ntt")(pad.copy(), rev, tw, twq, P, 0),
        "horner": lambda: kernels.k("horner")(a, xs, P),
        "divrem": lambda: kernels.k("divrem")(np.concatenate([a, b]), b, P),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096])
    ap.add_argument("--decode-sizes", type=int, nargs="+", default=[256, 1024])
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()
    rng = make_rng(0)

    print(f"{'kernel':<10}{'n':>7}{'numba ms':>12}{'numpy ms':>12}{'speedup':>9}")
    for n in args.sizes:
        cases = kernel_cases(n, rng)
        for name, fn in cases.items():
            with kernels.backend_scope("numba"):
                ref = fn()
                t_nb = timeit(fn, args.reps)
            with kernels.backend_scope("numpy"):
                got = fn()
                t_np = timeit(fn, args.reps)
            if not _same(ref, got):
                raise SystemExit(f"backends disagree on {name} at n={n}")
            print(f"{name:<10}{n:>7}{1e3 * t_nb:>12.3f}{1e3 * t_np:>12.3f}{t_np / t_nb:>9.1f}")

    print()
    print(f"{'decode':<10}{'n':>7}{'numba ms':>12}{'numpy ms':>12}{'speedup':>9}")
    for n in args.decode_sizes:
        spec, msg, y, e = bench_instance("IRS", n, 4, P)
        out = {}
        for be in ("numba", "numpy"):
            with kernels.backend_scope(be):
                res = decode.decode(spec, y, e)
                if res.message != msg:
                    raise SystemExit(f"{be} decode failed at n={n}")
                out[be] = timeit(lambda: decode.decode(spec, y, e), max(1, args.reps // 2))
        print(f"{'IRS s=4':<10}{n:>7}{1e3 * out['numba']:>12.1f}{1e3 * out['numpy']:>12.1f}"
              f"{out['numpy'] / out['numba']:>9.1f}")


if __name__ == "__main__":
    main()
