"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from gradalign import _kernels
from gradalign.synthetic import erdos_renyi


def cases(n: int, seed: int = 0):
    g = erdos_renyi(n, 8.0 / n, seed)
    indptr, indices = g.indptr.astype(np.int64), g.indices.astype(np.int64)
    rng = np.random.default_rng(seed)
    k = n // 10
    us = rng.permutation(n)[:k].astype(np.int64)
    vs = rng.permutation(n)[:k].astype(np.int64)
    sim = rng.random((n // 2, n // 2))

    def khop(mod):
        return lambda: mod.khop_layer_counts(indptr, indices, 3)

    def acn(mod):
        counts = np.zeros((n, n), dtype=np.int64)
        return lambda: mod.acn_increment(counts, indptr, indices, indptr, indices, us, vs)

    def greedy(mod):
        return lambda: mod.greedy_select(sim, n // 4)

    return {"khop_layer_counts (k=3)": khop, "acn_increment": acn, "greedy_select": greedy}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the pure-Python fallback is timed")
    names = sorted(backends)
    print(f"n = {args.n}, best of {args.repeat}")
    print("kernel".ljust(26) + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) > 1 else ""))
    for label, make in cases(args.n).items():
        times = {b: min(timeit.repeat(make(backends[b]), number=1, repeat=args.repeat)) for b in names}
        line = label.ljust(26) + "".join(f"{times[b] * 1e3:10.2f}ms" for b in names)
        if len(names) > 1:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
