"""Time the oracle's numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each kernel is warmed up once (numba compiles on first call) and then timed
as the best of ``--repeat`` runs.  Results are checked to agree.
"""

import argparse
import time

import numpy as np

from commlie.bruteforce import kernels as K
from commlie.bruteforce import make_space
from commlie.bruteforce.oracle import matrix_size

CASES = [("gl", 3, 3), ("u", 3, 3), ("sp", 2, 3), ("gl", 2, 9), ("gl", 3, 4)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'space':<12}{'elements':>10}  {'kernel':<10}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for family, n, q in CASES:
        space = make_space(family, n, q)
        total = space.p ** space.dim
        jobs = {
            "nullity": lambda k: K.nullity_histogram(space.basis, space.struct, space.p, 0, total, k),
            "nilpotent": lambda k: K.nilpotent_pair_count(space.basis, space.struct, space.p,
                                                          matrix_size(space), 0, total, k),
        }
        for name, job in jobs.items():
            job("numba")
            t_np, r_np = best_of(lambda: job("numpy"), args.repeat)
            t_nb, r_nb = best_of(lambda: job("numba"), args.repeat)
            if isinstance(r_np, np.ndarray):
                np.testing.assert_array_equal(r_np, r_nb)
            else:
                assert r_np == r_nb
            label = f"{family}({n},{q})"
            print(f"{label:<12}{total:>10}  {name:<10}{t_np:>10.3f}{t_nb:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
