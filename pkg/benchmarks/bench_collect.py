"""Compare the compiled and pure-Python collectors.

    python benchmarks/bench_collect.py [--products N] [--seed S]

Times random products, inverses and commutators in Example 1 and the
reachability BFS over wreath_5, and checks both backends give the same
answers.
"""

import argparse
import random
import time

import numpy as np

from maxclass._kernel import CythonCollector, PythonCollector
from maxclass.constructions import load_corpus_group


def _collector(cls, pres):
    return cls(pres.p, pres.n, pres.power_rhs, pres.conj_rhs)


def _words(pres, count, seed):
    rng = random.Random(seed)
    return [tuple(rng.randrange(pres.p) for _ in range(pres.n)) for _ in range(count)]


def bench_products(col, words):
    t = time.perf_counter()
    out = []
    for a, b in zip(words, words[1:]):
        out.append(col.mul(a, b))
        out.append(col.inv(a))
        out.append(col.comm(a, b))
    return time.perf_counter() - t, out


def bench_reachable(col, pres):
    gens = [g.exps for g in pres.gens]
    t = time.perf_counter()
    mask = col.reachable(gens)
    return time.perf_counter() - t, int(np.count_nonzero(mask))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--products", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    backends = [("python", PythonCollector)]
    if CythonCollector is None:
        print("compiled extension not built; timing the Python backend only")
    else:
        backends.append(("cython", CythonCollector))

    ex = load_corpus_group("example1")
    wr = load_corpus_group("wreath_5")
    words = _words(ex, args.products, args.seed)
    results = {}
    for name, cls in backends:
        tp, prod = bench_products(_collector(cls, ex), words)
        tr, count = bench_reachable(_collector(cls, wr), wr)
        results[name] = (tp, tr, prod, count)
        print(f"{name:7s} products {tp:8.3f} s   reachable(wreath_5) {tr:8.3f} s   ({count} elements)")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        same = py[2] == [tuple(x) for x in cy[2]] and py[3] == cy[3]
        print(f"speedup  products x{py[0] / cy[0]:.1f}   reachable x{py[1] / cy[1]:.1f}")
        print("backends agree" if same else "BACKENDS DISAGREE")
        return 0 if same else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
