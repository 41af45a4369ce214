"""Compiled vs pure-Python kernels on the desk prime.

    python benchmarks/bench_kernels.py [--sizes 256,1024,4096] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from proofmesh import _pykernels as py
from proofmesh.field import DESK

try:
    from proofmesh import _ckernels as cy
except ImportError:
    cy = None


def cases(n, rng):
    p = DESK.modulus
    w = DESK.root_of_unity_int(n)
    tw = [pow(w, k, p) for k in range(n // 2)]
    x = DESK.random_vector(rng, n)
    y = DESK.random_vector(rng, n)
    mat = [DESK.random_vector(rng, 3) for _ in range(3)]
    vecs = [DESK.random_vector(rng, n) for _ in range(3)]
    return {
        "ntt": lambda k: k.ntt(x, tw, p),
        "pointwise_mul": lambda k: k.pointwise_mul(x, y, p),
        "geometric_scale": lambda k: k.geometric_scale(x, 1, 7, p),
        "lincomb": lambda k: k.lincomb(mat, vecs, p),
        "horner_recombine": lambda k: k.horner_recombine(vecs, 4 * n, 5, w, 1, 1, p),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="256,1024,4096")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if cy is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':<18}{'n':>7}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for n in map(int, args.sizes.split(",")):
        for name, fn in cases(n, rng).items():
            if cy is not None:
                assert fn(py) == fn(cy), name
            t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
            if cy is None:
                print(f"{name:<18}{n:>7}{t_py:>12.3f}{'-':>12}{'-':>9}")
                continue
            t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<18}{n:>7}{t_py:>12.3f}{t_cy:>12.3f}{t_py / t_cy:>8.1f}x")


if __name__ == "__main__":
    main()
