"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from cfgwalk import _kernels_py

try:
    from cfgwalk import _kernels_c
except ImportError:
    _kernels_c = None


def workloads(rng):
    seqs = [[rng.randrange(6) for _ in range(rng.randint(0, 24))] for _ in range(2000)]
    pairs = [(tuple(rng.randrange(6) for _ in range(8)), tuple(rng.randrange(6) for _ in range(8))) for _ in range(2000)]
    # Random binary grammar over 12 nonterminals and 3 terminals.
    unary = [(t, rng.randrange(12)) for t in range(3) for _ in range(2)]
    binary = [(rng.randrange(12), rng.randrange(12), rng.randrange(12)) for _ in range(40)]
    words = [[rng.randrange(3) for _ in range(24)] for _ in range(20)]
    return {
        "reduce_codes": lambda k: [k.reduce_codes(s) for s in seqs],
        "concat_codes": lambda k: [k.concat_codes(u, v) for u, v in pairs],
        "cyk_fill": lambda k: [k.cyk_fill(w, unary, binary, 12) for w in words],
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(repeat):
    code = (
        "import time; from cfgwalk import corpus, verify_theorem1;"
        "g = corpus.load('expr'); t = time.perf_counter();"
        "verify_theorem1(g, g.start, 6); print(time.perf_counter() - t)"
    )
    out = {}
    for label, pure in (("python", "1"), ("compiled", "")):
        env = dict(os.environ, CFGWALK_PURE=pure)
        runs = [
            float(subprocess.check_output([sys.executable, "-c", code], env=env, text=True))
            for _ in range(repeat)
        ]
        out[label] = min(runs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true", help="also time verify on the expr grammar")
    args = ap.parse_args()
    if _kernels_c is None:
        sys.exit("compiled extension not built; run: pip install -e . --no-build-isolation")

    print(f"{'kernel':<14}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, job in workloads(random.Random(args.seed)).items():
        py = best(lambda: job(_kernels_py), args.repeat)
        c = best(lambda: job(_kernels_c), args.repeat)
        print(f"{name:<14}{py * 1e3:>12.2f}{c * 1e3:>14.2f}{py / c:>9.1f}x")
    if args.end_to_end:
        t = end_to_end(max(1, args.repeat // 2))
        print(f"{'verify(expr)':<14}{t['python'] * 1e3:>12.0f}{t['compiled'] * 1e3:>14.0f}"
              f"{t['python'] / t['compiled']:>9.1f}x")


if __name__ == "__main__":
    main()
