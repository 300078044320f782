"""Compare the compiled and pure-Python SAT enumeration kernels.

    python3 benchmarks/bench_kernels.py --max-d 18 --repeat 3

Each row times a full scan to the last assignment (the formula's only
solution is all-ones) and reports the speedup of the compiled backend.
"""
import argparse
import time

from elecmanip import _sat_py
from elecmanip.generators import worst_case_formula as worst_case

try:
    from elecmanip import _sat
except ImportError:  # extension not built
    _sat = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-d", type=int, default=8)
    ap.add_argument("--max-d", type=int, default=16)
    ap.add_argument("--step", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pure-max-d", type=int, default=16, help="skip the pure backend above this d")
    args = ap.parse_args(argv)

    print(f"{'d':>3} {'m':>5} {'compiled ms':>12} {'python ms':>12} {'speedup':>8}")
    for d in range(args.min_d, args.max_d + 1, args.step):
        f = worst_case(d)
        pos, neg = f.masks()
        expect = (1 << d) - 1
        tc = tp = None
        if _sat is not None:
            assert _sat.first_satisfying(pos, neg, d) == expect
            tc = best_of(lambda: _sat.first_satisfying(pos, neg, d), args.repeat)
        if d <= args.pure_max_d:
            assert _sat_py.first_satisfying(pos, neg, d) == expect
            tp = best_of(lambda: _sat_py.first_satisfying(pos, neg, d), args.repeat)
        fmt = lambda t: f"{t * 1e3:12.3f}" if t is not None else f"{'-':>12}"  # noqa: E731
        speed = f"{tp / tc:8.1f}" if tc and tp else f"{'-':>8}"
        print(f"{d:>3} {f.m:>5} {fmt(tc)} {fmt(tp)} {speed}")


if __name__ == "__main__":
    main()
