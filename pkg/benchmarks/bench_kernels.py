"""Benchmark the jit kernel backend against the pure-numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--number 2000]

Times the three kernel entry points on the shapes the library actually
uses: scalar-sized Carlson calls (size-1 arrays) and one 32-node
Gauss-Legendre panel of the square-root-weighted quadrature.
"""

import argparse
import timeit

import numpy as np

from hyperint._kernels import _ref

try:
    from hyperint._kernels import _jit
except ImportError:
    _jit = None


def _workloads():
    one = np.array([1.3])
    nodes, wts = np.polynomial.legendre.leggauss(32)
    # weight x(1-x)(1-0.75x) with both endpoint roots deflated out
    wc = np.array([1.0, -0.75])
    nc = np.array([1.0])
    dc = np.array([1.0])
    batch = np.linspace(0.5, 4.0, 32)
    return [
        ("rf, size 1", lambda m: m.rf(one, one + 0.5, one + 2.0)),
        ("rf, size 32", lambda m: m.rf(batch, batch + 0.5, batch + 2.0)),
        ("rj, size 1", lambda m: m.rj(one, one + 0.5, one + 2.0, one + 0.25)),
        ("rj, size 32", lambda m: m.rj(batch, batch + 0.5, batch + 2.0, batch + 0.25)),
        (
            "panel_sqrt, 32 nodes",
            lambda m: m.panel_sqrt(
                0.0, np.pi / 4, 0.0, 1.0, wc, 1, 1, nc, dc, False, nodes, wts
            ),
        ),
    ]


def _time(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--number", type=int, default=2000, help="calls per timing")
    args = parser.parse_args()

    if _jit is None:
        print("numba backend unavailable; timing the numpy backend only")
    workloads = _workloads()
    if _jit is not None:
        for _, call in workloads:  # compile before timing
            call(_jit)

    header = f"{'kernel':<22}{'numpy':>12}{'numba':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in workloads:
        ref_t = _time(lambda: call(_ref), args.number)
        if _jit is None:
            print(f"{name:<22}{ref_t * 1e6:>10.2f}us")
            continue
        jit_t = _time(lambda: call(_jit), args.number)
        print(
            f"{name:<22}{ref_t * 1e6:>10.2f}us{jit_t * 1e6:>10.2f}us"
            f"{ref_t / jit_t:>9.1f}x"
        )


if __name__ == "__main__":
    main()
