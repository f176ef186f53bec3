"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 2000]
"""
import argparse
import timeit

import numpy as np

from symconvex import _kernels


def problems(seed=0):
    rng = np.random.default_rng(seed)
    mats = {n: rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in (3, 4, 6)}
    # membership-sized LP: 6 vertices + 2 generators in 2-D, L1 slacks
    V = rng.normal(size=(6, 2))
    G = -np.abs(rng.normal(size=(2, 2)))
    A = np.vstack([np.hstack([V.T, G.T, np.eye(2), -np.eye(2)]),
                   np.concatenate([np.ones(6), np.zeros(6)])])
    b = np.array([3.0, -1.0, 1.0])
    c = np.concatenate([np.zeros(8), np.ones(4)])
    return mats, (A, b, c)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=2000)
    args = ap.parse_args(argv)
    mats, lp = problems()
    backends = _kernels.backends()
    print(f"{'kernel':16s}" + "".join(f"{name:>14s}" for name in backends) + "     speedup")
    rows = [(f"rq_positive n={n}", lambda f, g=g: f[0](g)) for n, g in mats.items()]
    rows.append(("simplex 3x12", lambda f: f[1](*lp)))
    for label, call in rows:
        times = {}
        for name, fns in backends.items():
            t = timeit.timeit(lambda: call(fns), number=args.repeat)
            times[name] = 1e6 * t / args.repeat
        line = f"{label:16s}" + "".join(f"{times[k]:11.1f} us" for k in backends)
        if "cython" in times:
            line += f"   {times['python'] / times['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
