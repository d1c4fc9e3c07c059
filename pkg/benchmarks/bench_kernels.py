"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--x 10000000] [--repeat 3]

Each kernel is run once per backend before timing so numba compilation is
excluded.  Results are checked for equality across backends.
"""

import argparse
import time

import numpy as np

from quotarith import _kernels
from quotarith.core_arith import carmichael_lambda
from quotarith.survey import sieve_profiles


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=int, default=10**7, help="sieve range")
    ap.add_argument("--m", type=int, default=1000, help="modulus for the quotient scan")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]
    lam = carmichael_lambda(args.m)
    cases = {
        f"spf_sieve({args.x})": lambda: _kernels.spf_sieve(args.x),
        f"sieve_profiles({args.x})": lambda: sieve_profiles(args.x).f,
        f"quotient scan m={args.m}": lambda: _kernels.quotient_block(args.m, lam, 0, args.m * args.m),
    }
    print(f"{'case':<34}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in cases.items():
        times, outs = [], []
        for b in backends:
            _kernels.set_backend(b)
            fn()
            t, out = best_of(fn, args.repeat)
            times.append(t)
            outs.append(out)
        if len(outs) == 2:
            assert np.array_equal(np.asarray(outs[0]), np.asarray(outs[1])), name
        speedup = f"{times[1] / times[0]:>9.1f}x" if len(times) == 2 else ""
        print(f"{name:<34}" + "".join(f"{t:>11.3f}s" for t in times) + speedup)


if __name__ == "__main__":
    main()
