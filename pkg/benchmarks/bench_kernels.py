"""Compare the compiled team-table kernels with the pure-Python fallback.

Each kernel runs on seeded random tables over ``n`` points; both backends must
agree byte for byte.  A second section times an end-to-end exhaustive validity
check in a subprocess per backend (``TEAMLOGIC_PURE_PYTHON`` forces the fallback).

    python3 benchmarks/bench_kernels.py [--points 10] [--repeat 3]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from teamlogic import _kernels_py

try:
    from teamlogic import _kernels
except ImportError:
    _kernels = None

END_TO_END = """
import time
from teamlogic.generate import enumerate_formulas
from teamlogic.oracle import SearchBudget, valid
from teamlogic.kernels import BACKEND
corpus = enumerate_formulas(4, ("p",), "MTL")
t = time.perf_counter()
count = sum(valid(f, SearchBudget(max_worlds=3)).holds for f in corpus)
print(BACKEND, len(corpus), count, time.perf_counter() - t)
"""


def random_table(rng, n, density=0.7):
    return bytearray(1 if rng.random() < density else 0 for _ in range(1 << n))


def kernel_cases(rng, n):
    left, right, body = random_table(rng, n), random_table(rng, n), random_table(rng, n)
    succ = [rng.getrandbits(n) or 1 for _ in range(n)]
    mask = rng.getrandbits(n) | 1
    small = min(n, 6)
    small_body = random_table(rng, small)
    small_succ = [rng.getrandbits(small) or 1 for _ in range(small)]
    return {
        "flat_table": lambda k: k.flat_table(mask, n),
        "limp_table (lax)": lambda k: k.limp_table(left, right, n, False),
        "limp_table (strict)": lambda k: k.limp_table(left, right, n, True),
        "image_table": lambda k: k.image_table(body, succ, n),
        "cover_table": lambda k: k.cover_table(body, succ, n),
        f"choice_table (n={small})": lambda k: k.choice_table(small_body, small_succ, small),
        "implies_table": lambda k: k.implies_table(left, right),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    cases = kernel_cases(random.Random(args.seed), args.points)
    print(f"kernels over {args.points} points ({1 << args.points} teams), best of {args.repeat}")
    print(f"{'kernel':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, call in cases.items():
        if bytes(call(_kernels_py)) != bytes(call(_kernels)):
            sys.exit(f"{name}: backends disagree")
        py = min(timeit.repeat(lambda: call(_kernels_py), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: call(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<24}{py * 1e3:>12.2f}{cy * 1e3:>12.3f}{py / cy:>9.0f}x")

    if args.skip_end_to_end:
        return
    print("\nend to end: validity of every MTL formula of size <= 4 over {p}, frames with <= 3 worlds")
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("TEAMLOGIC_PURE_PYTHON", None)
        if pure:
            env["TEAMLOGIC_PURE_PYTHON"] = "1"
        line = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True).stdout
        backend, formulas, holds, seconds = line.split()
        print(f"  {backend:<8} {formulas} formulas, {holds} valid, {float(seconds):.2f} s")


if __name__ == "__main__":
    main()
