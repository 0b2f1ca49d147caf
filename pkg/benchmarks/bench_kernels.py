"""Compiled vs pure-Python kernels: timings and agreement.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from stieltjes import _pykernels as py

try:
    from stieltjes import _ckernels as cy
except ImportError:
    cy = None

X = np.linspace(0.05, 30.0, 2000)
U = np.linspace(0.01, 0.99, 2000)
Z = np.linspace(-20.0, 0.9, 2000)


def _integrand(x):
    return np.sqrt(x) * np.exp(-x) / (1.0 + x * x)


CASES = [
    ("gamma_array (2000 pts)", lambda k: k.gamma_array(X)),
    ("betainc_array (2000 pts)", lambda k: k.betainc_array(U, 0.7, 2.3)),
    ("hyp2f1_array (2000 pts)", lambda k: k.hyp2f1_array(0.5, 1.0, 2.0, Z)),
    ("gk21_adaptive, tol 1e-13", lambda k: k.gk21_adaptive(_integrand, 0.0, 50.0, 0.0, 1e-13, 2000)[0]),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; nothing to compare")
        return
    print("%-28s %12s %12s %8s %10s" % ("kernel", "python [ms]", "compiled [ms]", "speedup", "max diff"))
    for name, fn in CASES:
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        a = np.asarray(fn(py))
        b = np.asarray(fn(cy))
        diff = float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))
        print("%-28s %12.3f %12.3f %7.1fx %10.1e" % (name, tp, tc, tp / tc, diff))


if __name__ == "__main__":
    main()
