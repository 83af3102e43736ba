"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints best-of-N wall time per kernel and backend, and checks that both
backends return identical arrays.
"""
import argparse
import random
import time

import numpy as np

from sgon import kernels, sparse_core as sc
from sgon.io import load_lattice_fixture


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    A = load_lattice_fixture("a_matrix")
    dec = sc.row_decompose(A)
    rng = random.Random(0)
    basis = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(4)]
    n5 = load_lattice_fixture("bordered_n5_d2")
    dec5 = sc.row_decompose(n5)
    return [
        ("box_enumerate 4x6, |c|<=12", lambda impl: kernels.box_enumerate(basis, [12] * 4, 40, impl=impl)),
        ("sparse_scan n=3, |y|<=40", lambda impl: kernels.sparse_scan(
            dec.F, dec.row_of, A.float_matrix(), 40, 2, 50.0, impl=impl)),
        ("support_gram n=3, |y|<=40", lambda impl: kernels.support_gram(dec.F, dec.row_of, 3, 40, impl=impl)),
        ("support_gram n=5, |y|<=10", lambda impl: kernels.support_gram(
            dec5.F, dec5.row_of, 5, 10, impl=impl)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.has_compiled():
        print("compiled kernels are not built; only the numpy fallback is available")
    names = ["python"] + (["cython"] if kernels.has_compiled() else [])
    print(f"{'kernel':<30} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    for label, fn in cases():
        results = {}
        for name in names:
            results[name] = best_of(lambda: fn(kernels.backend(name)), args.repeat)
        if len(names) == 2:
            a, b = results["python"][1], results["cython"][1]
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
            assert same, f"backends disagree on {label}"
        row = " ".join(f"{results[n][0] * 1e3:>8.1f}ms" for n in names)
        speed = f"{results['python'][0] / results['cython'][0]:>8.1f}x" if len(names) == 2 else ""
        print(f"{label:<30} {row}   {speed}")


if __name__ == "__main__":
    main()
