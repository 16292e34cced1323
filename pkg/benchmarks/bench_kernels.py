"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one row per workload: best-of-repeat seconds for each backend and
the speed-up. Workloads cover the raw kernels and the quadratures built on
them (where the integrand call dominates).
"""

import argparse
import timeit

import numpy as np

from mlfa import _backend
from mlfa.donsker import DonskerSpec, donsker_T_quad
from mlfa.specfn import laplace_m_wright_quad, mittag_leffler


def workloads():
    ts = np.linspace(0.0, 50.0, 100)

    def series():
        K = _backend.kernels()
        for z in np.linspace(-3.0, 3.0, 200):
            K.wright_series(z, 0.0, 1.0, 1.0, 1.0, 1.0, 0.6, 1e-17, 20000)

    def mwright_integral():
        K = _backend.kernels()
        for t in np.linspace(2.0, 20.0, 100):
            K.mwright_real(0.5, t)

    def ml_negative_axis():
        for t in ts:
            mittag_leffler(0.75, -t)

    def laplace_quad():
        for t in ts[::10]:
            laplace_m_wright_quad(0.5, 1.0, t)

    def donsker_quad():
        s = DonskerSpec(0.5, 1.0)
        for ps in np.linspace(1.0, 5.0, 5):
            donsker_T_quad(s, 0.3, ps)

    return [
        ("wright_series x200", series),
        ("mwright_real integral x100", mwright_integral),
        ("E_beta(-t) on [0,50] x100", ml_negative_axis),
        ("laplace quadrature x10", laplace_quad),
        ("donsker x-quadrature x5", donsker_quad),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'workload':30s}" + "".join(f"{b:>12s}" for b in backends) + ("   speed-up" if len(backends) == 2 else ""))
    for name, fn in workloads():
        times = {}
        for b in backends:
            with _backend.use(b):
                fn()  # warm caches
                times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        row = f"{name:30s}" + "".join(f"{times[b]:12.4f}" for b in backends)
        if len(backends) == 2:
            row += f"   {times['python'] / times['compiled']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
