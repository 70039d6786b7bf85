"""Compiled vs pure-numpy timings for the hot kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Runs in one process: the numpy path calls the uncompiled Python
functions that the numba path wraps, plus the vectorized Hankel fallback.
"""
import argparse
import time

import numpy as np

from nlkp import _accel, _kernels
from nlkp.boundary import match_left
from nlkp.kpcore import ModelParams, site_basis
from nlkp.oracle import initial_values
from nlkp.scan import energy_length_spectrum


def best_of(fn, repeat):
    fn()  # warm-up (includes compilation)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.USE_NUMBA:
        print("numba disabled or missing; only the numpy column is meaningful")

    z = np.geomspace(1.0, 1e4, 200_000)
    p = ModelParams(1.0, 0.01, 0.015, 0.025, 60)
    m = match_left(p, 0.2822, 0.1, 1.0)
    psi0, dpsi0 = initial_values(p, m.coeff1)
    vp, ph, _, _ = site_basis(p)
    a1, b1 = m.coeff1.A, m.coeff1.B
    rk_args = (p.E, p.F, p.alpha, p.beta, psi0, dpsi0, 1000, 60, 1e8)

    rows = [
        ("hankel pair, 2e5 points",
         lambda: _kernels.hankel1_pair_array(z),
         lambda: _kernels.hankel1_pair_numpy(z)),
        ("site propagation, L=60",
         lambda: _kernels.propagate_sites(vp, ph, a1, b1, p.alpha, p.beta, 1e8),
         lambda: _kernels._propagate_sites(vp, ph, a1, b1, p.alpha, p.beta, 1e8)),
        ("RK4 oracle, L=60, h=1e-3",
         lambda: _kernels.rk4_lattice(*rk_args),
         lambda: _kernels._rk4_lattice(*rk_args)),
    ]
    print(f"{'kernel':<28}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fast, slow in rows:
        tf = best_of(fast, args.repeat)
        ts = best_of(slow, max(1, args.repeat // 5))
        print(f"{name:<28}{tf:>12.4g}{ts:>12.4g}{ts / tf:>10.1f}")

    tw = best_of(lambda: energy_length_spectrum(p, 0.2822, 0.001, 1.0), args.repeat)
    print(f"{'E-L sweep, 11 energies':<28}{tw:>12.4g}{'':>12}{'':>10}  ({_accel.backend_name()})")


if __name__ == "__main__":
    main()
