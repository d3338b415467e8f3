"""Time the jitted transport kernel against the pure-python twin.

Usage:
    python benchmarks/bench_transport.py [--steps N] [--repeat R]

Runs the same Fermi-Walker RK4 integration through both kernel paths and
reports per-step cost, speedup and the worst disagreement between the
sampled trajectories.
"""

import argparse
import time

import numpy as np

import rotframes._kernels as kernels
from rotframes import CongruenceSpec, corotating_dyad, proper_period, worldline
from rotframes.tensors import metric_diag
from rotframes.transport import transport_generator


def run_once(kernel, m, s0, h, record_idx, g, u, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = kernel(m, s0.copy(), h, record_idx, g, u)
        best = min(best, time.perf_counter() - start)
    return result, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--rho", type=float, default=1.0)
    parser.add_argument("--omega", type=float, default=0.5)
    args = parser.parse_args()

    spec = CongruenceSpec("gal", args.omega)
    wl = worldline(spec, args.rho)
    m = np.ascontiguousarray(transport_generator(wl))
    g = metric_diag(wl.rho, spec.c)
    e_r, _ = corotating_dyad(wl)
    h = proper_period(spec, args.rho) / args.steps
    record_idx = np.unique(
        np.round(np.linspace(0, args.steps, 129)).astype(np.int64)
    )

    print(f"transport benchmark: {args.steps} RK4 steps, best of {args.repeat}")

    (out_py, *_), t_py = run_once(
        kernels.fw_rk4_numpy, m, e_r, h, record_idx, g, wl.u, args.repeat
    )
    print(f"  python twin : {t_py:8.4f} s  ({t_py / args.steps * 1e6:7.3f} us/step)")

    if kernels.fw_rk4_numba is None:
        print("  numba kernel: unavailable (not installed or disabled by env flag)")
        return

    # warm-up triggers compilation outside the timed region
    kernels.fw_rk4_numba(m, e_r.copy(), h, record_idx[:2], g, wl.u)
    (out_nb, *_), t_nb = run_once(
        kernels.fw_rk4_numba, m, e_r, h, record_idx, g, wl.u, args.repeat
    )
    print(f"  numba kernel: {t_nb:8.4f} s  ({t_nb / args.steps * 1e6:7.3f} us/step)")
    print(f"  speedup     : {t_py / t_nb:8.1f}x")
    print(f"  max |delta| : {np.max(np.abs(out_py - out_nb)):.3e}")


if __name__ == "__main__":
    main()
