#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the hot paths at the reference workload (n=216 blocks over the
{1,3,5,7} alphabet): codec rank/unrank walks, the full composition-simplex
scan, the complement-pair scan, and the energy-ball table with its
enumerative walks.

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from dmshape.kernels import pure

try:
    from dmshape.kernels import _speed as speed
except ImportError:
    speed = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, make_fn, quick):
    rows = []
    for label, backend in (("pure", pure), ("cython", speed)):
        if backend is None:
            rows.append((label, None))
            continue
        fn = make_fn(backend, quick)
        rows.append((label, timeit(fn)))
    t_pure = rows[0][1]
    t_fast = rows[1][1]
    speedup = f"{t_pure / t_fast:5.2f}x" if t_fast else "    -"
    fast_s = f"{t_fast * 1e3:9.1f}" if t_fast else "        -"
    print(f"{name:<28} {t_pure * 1e3:9.1f} {fast_s} {speedup}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller iteration counts")
    quick = parser.parse_args().quick

    counts = (102, 70, 33, 11)  # reference-scale constant composition
    energies = (1, 9, 25, 49)
    n = 216
    rng = random.Random(11)
    mc = pure.mc_counts(counts)
    n_codec = 200 if quick else 2000
    words = [rng.randrange(mc) for _ in range(n_codec)]

    print(f"{'kernel':<28} {'pure ms':>9} {'cython ms':>9} speedup")

    def make_cc(backend, quick):
        def run():
            for w in words:
                seq = backend.cc_unrank(w, counts)
                backend.cc_rank(seq, counts)
        return run

    bench(f"cc round trip x{n_codec}", make_cc, quick)

    def make_scan(backend, quick):
        nn = 100 if quick else n
        return lambda: backend.energy_totals(nn, energies)

    bench("simplex energy scan", make_scan, quick)

    def make_shells(backend, quick):
        nn = 100 if quick else n
        cap = nn * 9
        return lambda: backend.shells_upto(nn, energies, cap)

    bench("bounded shell enumeration", make_shells, quick)

    c0 = (105, 70, 31, 10)
    pmin = pure.mc_counts(c0).bit_length() - 1 - 40

    def make_pairs(backend, quick):
        if quick:
            return lambda: backend.pair_list((26, 17, 8, 3), 0)
        return lambda: backend.pair_list(c0, pmin)

    bench("complement-pair scan", make_pairs, quick)

    deltas = (0, 1, 3, 6)
    width = 222

    def make_trellis(backend, quick):
        nn = 50 if quick else n
        return lambda: backend.trellis_build(nn, deltas, width)

    bench("energy-ball table build", make_trellis, quick)

    table = pure.trellis_build(n, deltas, width)
    total = table[0][width]
    ess_words = [rng.randrange(min(total, 1 << 349)) for _ in range(n_codec)]

    def make_ess(backend, quick):
        def run():
            for w in ess_words:
                seq = backend.ess_unrank(w, n, deltas, width, table)
                backend.ess_rank(seq, n, deltas, width, table)
        return run

    bench(f"ball round trip x{n_codec}", make_ess, quick)


if __name__ == "__main__":
    main()
