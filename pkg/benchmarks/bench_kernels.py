"""Time the compiled elimination kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeat 3]
"""

import argparse
import time

import numpy as np

from adelic_entropy import kernels
from adelic_entropy.laurent import parse
from adelic_entropy.window import Window, build_restriction, det_crt


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="64,128,256,512")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    q = 2147483629
    backends = kernels.BACKENDS
    print(f"backends available: {', '.join(backends)}")
    header = f"{'kernel':<12}{'n':>6}" + "".join(f"{name:>12}" for name in backends)
    if "cython" in backends:
        header += f"{'speedup':>10}"
    print(header)
    for n in [int(s) for s in args.sizes.split(",")]:
        a = rng.integers(-5, 6, size=(n, n)).astype(np.int64)
        packed = kernels.pack_gf2(a)
        cases = {
            "det_mod": lambda impl: impl.det_mod(a, q),
            "rank_mod": lambda impl: impl.rank_mod(a, 3),
            "rank_gf2": lambda impl: impl.rank_gf2(packed, n),
        }
        for name, call in cases.items():
            times = {b: _best(lambda impl=impl: call(impl), args.repeat) for b, impl in backends.items()}
            row = f"{name:<12}{n:>6}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)
    g = parse("1+x+y", 2)
    f = g * g.involution()
    m = build_restriction(f, Window(2, 16)).entries
    t = _best(lambda: det_crt(m), args.repeat)
    print(f"exact det of a 256x256 window matrix via CRT ({kernels.BACKEND}): {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
