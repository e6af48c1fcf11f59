"""Compare the compiled and pure-Python scan kernels.

Times a full scan of the axiom catalogue (E1-E7 plus cancellation) on
Łukasiewicz chains of increasing size.  Every equation holds there, so each
scan visits all n^k assignments.

    python benchmarks/bench_kernels.py --sizes 4 8 12 16 --repeat 3
"""

import argparse
import time

from posmv import _kernels_py, kernels
from posmv._compile import compile_quasi, table_array
from posmv.checker import catalogue
from posmv.constructions import luk_chain


def scan_catalogue(first_violation, a, programs):
    tables = table_array(a)
    hits = 0
    for code, bounds, k in programs:
        if first_violation(tables, a.zero, a.one, code, bounds, k, 0, len(a) ** k) >= 0:
            hits += 1
    return hits


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12, 16])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    programs = [(*compile_quasi(q), q.arity) for q in catalogue().values()]
    backends = [("python", _kernels_py.first_violation)]
    if kernels._kernels is not None:
        backends.append(("cython", kernels._kernels.first_violation))
    else:
        print("compiled kernels not available; timing the Python fallback only")

    print(f"{'n':>4} {'assignments':>12} " + " ".join(f"{name:>10}" for name, _ in backends)
          + ("  speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        a = luk_chain(n)
        work = sum(len(a) ** k for _, _, k in programs)
        times = [best_of(args.repeat, scan_catalogue, fn, a, programs) for _, fn in backends]
        row = f"{n:>4} {work:>12} " + " ".join(f"{t:>9.4f}s" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
