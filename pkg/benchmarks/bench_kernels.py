"""Compare the compiled enumeration kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Each row enumerates every complete allocation of a random instance: a PO
check of a Pareto-optimal allocation (no early exit), the full Pareto
frontier, and an EF1+PO existence search.
"""
import argparse
import random
import time

from mixedfair import _kernels_py, serial_dictatorship
from mixedfair.generators import random_instance
from mixedfair.kernels import EF1, PO
from mixedfair.oracle import integer_matrix

try:
    from mixedfair import _kernels as compiled
except ImportError:
    compiled = None

SIZES = [(2, 10), (2, 16), (3, 8), (3, 12), (4, 7), (4, 9), (5, 6)]


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; install with `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'n':>2} {'m':>3} {'allocations':>12} {'kernel':<14} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for n, m in SIZES:
        inst = random_instance(random.Random(f"{args.seed}:{n}:{m}"), n, m, "mixed")
        U = integer_matrix(inst)
        po_alloc = serial_dictatorship(inst)
        base = [sum(U[i][o] for o in po_alloc[i]) for i in range(n)]
        jobs = [
            ("find_dominating", lambda k: k.find_dominating(U, base)),
            ("frontier", lambda k: k.pareto_frontier_values(U)),
            ("EF1+PO search", lambda k: k.first_satisfying(U, EF1 | PO, None)),
        ]
        for name, job in jobs:
            t_py, r_py = best_of(args.repeat, lambda: job(_kernels_py))
            t_c, r_c = best_of(args.repeat, lambda: job(compiled))
            if name == "frontier":
                r_py, r_c = [tuple(f) for f in r_py], [tuple(f) for f in r_c]
            assert r_py == r_c, f"backends disagree on {name} for n={n} m={m}"
            print(f"{n:>2} {m:>3} {n ** m:>12} {name:<14} {t_py:>9.4f} {t_c:>9.4f} {t_py / max(t_c, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
