"""Compare the compiled and pure-Python F_p elimination kernels.

Usage::

    python benchmarks/bench_kernels.py [--size 40] [--repeat 5] [--prime 2]

Prints per-kernel timings for random dense matrices, then the wall time of an
end-to-end enumeration run under each backend (selected through the
``OPEXT_PURE_PYTHON`` environment variable in a subprocess).
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from opext import _backend, _modp_py

WORKLOAD = """
import time
from opext import corpus
from opext.exactlin import GF
from opext.tiltkit import enumerate_support_tau_tilting
t = time.perf_counter()
for name in ("a3", "a2_p1", "a3_rel_p1"):
    enumerate_support_tau_tilting(corpus.load(name, GF(2)))
print(time.perf_counter() - t)
"""


def random_rows(rng, n, m, p):
    return [[rng.randrange(p) for _ in range(m)] for _ in range(n)]


def bench_kernel(fn, rows, ncols, p, repeat):
    return min(timeit.repeat(lambda: fn(rows, ncols, p), number=10, repeat=repeat)) / 10


def bench_workload(pure: bool) -> float:
    env = dict(os.environ, OPEXT_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=40, help="matrix side length")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-workload", action="store_true", help="skip the end-to-end run")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    rows = random_rows(rng, args.size, args.size, args.prime)
    pure = bench_kernel(_modp_py.rref_modp, rows, args.size, args.prime, args.repeat)
    print(f"rref {args.size}x{args.size} over F_{args.prime}")
    print(f"  pure python : {pure * 1e3:9.3f} ms")
    if _backend.COMPILED:
        from opext import _modp
        fast = bench_kernel(_modp.rref_modp, rows, args.size, args.prime, args.repeat)
        print(f"  compiled    : {fast * 1e3:9.3f} ms   ({pure / fast:.1f}x)")
    else:
        print("  compiled    : not built")
    if not args.no_workload:
        print("support tau-tilting enumeration (a3, a2_p1, a3_rel_p1 over F_2)")
        t_pure = bench_workload(True)
        print(f"  pure python : {t_pure:9.3f} s")
        if _backend.COMPILED:
            t_fast = bench_workload(False)
            print(f"  compiled    : {t_fast:9.3f} s   ({t_pure / t_fast:.2f}x)")


if __name__ == "__main__":
    main()
