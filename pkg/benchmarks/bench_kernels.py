"""Compare the compiled and pure-Python Mittag-Leffler kernels.

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 5]

Prints the best wall time per kernel and backend, the speed-up, and the
largest value difference relative to the combined error estimates.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fracwave import _backend

ARGS = (1e-12, 1e-15, 500)
CASES = {
    # kernel -> (alpha, beta, gamma, radius of the z sample)
    "series_batch": (0.8, 1.0, 1.0, 10.0),
    "asymptotic_batch": (0.8, 1.0, 1.0, 300.0),
    "contour_batch": (0.8, 1.0, 1.0, 20.0),
}


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="number of z samples")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "cython" not in _backend.available():
        raise SystemExit("compiled kernels are not built; reinstall without FRACWAVE_NO_EXT")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}{'n':>7}{'python s':>12}{'cython s':>12}{'speed-up':>10}{'diff/est':>10}")
    for name, (al, be, ga, radius) in CASES.items():
        n = args.n if name != "contour_batch" else max(args.n // 20, 10)
        z = radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
        tp, (vp, ep, _, okp) = best_time(lambda: getattr(_backend.get("python"), name)(al, be, ga, z, *ARGS),
                                         args.repeat)
        tc, (vc, ec, _, okc) = best_time(lambda: getattr(_backend.get("cython"), name)(al, be, ga, z, *ARGS),
                                         args.repeat)
        ok = np.asarray(okp, bool) & np.asarray(okc, bool)
        ratio = np.max(np.abs(vp[ok] - vc[ok]) / (ep[ok] + ec[ok] + 1e-300), initial=0.0)
        print(f"{name:<18}{n:>7}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}{ratio:>10.2f}")


if __name__ == "__main__":
    main()
