"""Time the spectral-norm kernels: numba gather loop vs numpy dense fallback.

Each trial draws one complex Cayley series and computes its norm three ways:
the gather-based power iteration (numba), the dense-matrix power iteration
(numpy fallback), and a full SVD as the reference. Means are printed so
disagreement between paths would be visible immediately.

Usage:
    python benchmarks/bench_backends.py --groups cyclic:256,alt:5 --trials 20
"""
import argparse
import time

import numpy as np

import cayleylab as cl
from cayleylab import _backend
from cayleylab._kernels import HAVE_NUMBA
from cayleylab.rng import substream_rng


def _time_backend(series, trials, seed, backend):
    prev = _backend.ACTIVE
    _backend.ACTIVE = backend
    try:
        cl.sample_norms(series, 1, "direct_complex", seed)  # jit warm-up
        t0 = time.perf_counter()
        vals = cl.sample_norms(series, trials, "direct_complex", seed)
        dt = time.perf_counter() - t0
    finally:
        _backend.ACTIVE = prev
    return dt, float(vals.mean())


def _time_svd(series, trials, seed):
    t0 = time.perf_counter()
    acc = 0.0
    for t in range(trials):
        A = cl.sample_cayley(series, substream_rng(seed, t))
        acc += np.linalg.svd(A, compute_uv=False)[0]
    return time.perf_counter() - t0, acc / trials


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", default="cyclic:64,cyclic:256,sym:5,alt:5",
                    help="comma-separated group specs")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    if not HAVE_NUMBA:
        print("numba not importable; timing the numpy path only")
    row = "{:<12} {:>5} {:<7} {:>10} {:>12} {:>12}"
    print(row.format("group", "n", "path", "total s", "ms/trial", "mean norm"))
    for spec in args.groups.split(","):
        series = cl.GaussianSeries.complex_cayley(cl.make_group(spec.strip()))
        n = series.group.n
        for backend in backends:
            dt, mean = _time_backend(series, args.trials, args.seed, backend)
            print(row.format(spec, n, backend, f"{dt:.3f}",
                             f"{1e3 * dt / args.trials:.2f}", f"{mean:.6f}"))
        dt, mean = _time_svd(series, args.trials, args.seed)
        print(row.format(spec, n, "svd", f"{dt:.3f}",
                         f"{1e3 * dt / args.trials:.2f}", f"{mean:.6f}"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
