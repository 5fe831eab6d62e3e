"""Hot numeric kernels: implicit Cayley-series matvecs and power iteration.

A Gaussian Cayley series X = sum_g x_g rho(g) acts on a vector without ever
being materialized:

    (X u)[i]  = sum_g x[g] * u[ginv_act[g, i]]     ginv_act[g, i] = g^{-1} i
    (X* v)[j] = sum_g conj(x[g]) * v[act[g, j]]    act[g, j]      = g j

Both are the same gather-accumulate loop over the coefficient index, so one
kernel serves matvec and adjoint matvec. The numba path runs that loop
directly; the numpy fallback materializes the dense matrix once per
coefficient vector and leans on BLAS. ``benchmarks/bench_backends.py``
compares the two.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError
from .rng import substream_rng

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco


# Fixed stream for power-iteration start vectors: one deterministic start
# plus one pseudo-random restart guarding against orthogonal starts.
_START_SEED = 0x5BEC7
_N_STARTS = 2


@njit(cache=True)
def gather_accumulate(coeffs, idx, vec, out):  # pragma: no cover - jitted
    m, n = idx.shape
    for i in range(n):
        out[i] = 0.0
    for g in range(m):
        c = coeffs[g]
        row = idx[g]
        for i in range(n):
            out[i] += c * vec[row[i]]
    return out


def _power_smax(matvec, rmatvec, n, iscomplex, tol, max_iter):
    """Largest singular value via power iteration on X*X.

    Runs from two deterministic start vectors and keeps the larger estimate.
    Raises ConvergenceError when the winning run failed to meet ``tol``
    relative change within ``max_iter`` iterations.
    """
    ests = np.zeros(_N_STARTS)
    convs = [False] * _N_STARTS
    resids = [np.inf] * _N_STARTS
    for s in range(_N_STARTS):
        rng = substream_rng(_START_SEED, s)
        v = rng.standard_normal(n)
        if iscomplex:
            v = v + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        est = 0.0
        prev = np.inf
        resid = np.inf
        for _ in range(max_iter):
            u = matvec(v)
            nu = np.linalg.norm(u)
            if nu == 0.0:
                est, resid = 0.0, 0.0
                convs[s] = True
                break
            w = rmatvec(u)
            nw = np.linalg.norm(w)
            est = nw / nu
            resid = abs(est - prev) / max(est, 1e-300)
            if resid <= tol:
                convs[s] = True
                break
            v = w / nw
            prev = est
        ests[s] = est
        resids[s] = resid
    best = int(np.argmax(ests))
    value = float(ests[best])
    ok = convs[best] or any(
        convs[s] and abs(ests[s] - value) <= tol * max(value, 1e-300)
        for s in range(_N_STARTS)
    )
    if not ok:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations "
            f"(last relative residual {resids[best]:.3e})",
            residual=float(resids[best]),
        )
    return value


def dense_smax(a, tol, max_iter):
    """Largest singular value of an explicit matrix, power iteration + BLAS."""
    a = np.asarray(a)
    ah = a.conj().T
    iscomplex = np.iscomplexobj(a)
    return _power_smax(
        lambda v: a @ v, lambda u: ah @ u, a.shape[1], iscomplex, tol, max_iter
    )


def dense_smax_warm(a, v0, tol, max_iter):
    """Power iteration warm-started at v0; returns (value, top right vector).

    No convergence error: flip-search callers treat a capped run as a usable
    estimate and re-verify the final configuration exactly.
    """
    ah = a.conj().T
    v = v0 / np.linalg.norm(v0)
    est = 0.0
    prev = np.inf
    for _ in range(max_iter):
        u = a @ v
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0, v
        w = ah @ u
        nw = np.linalg.norm(w)
        est = nw / nu
        v = w / nw
        if abs(est - prev) <= tol * max(est, 1e-300):
            break
        prev = est
    return float(est), v


def series_smax_gather(coeffs, act, ginv_act, tol, max_iter):
    """Series spectral norm via jitted gather matvecs (numba path)."""
    coeffs = np.ascontiguousarray(coeffs)
    cconj = np.conj(coeffs)
    n = act.shape[1]
    buf_u = np.empty(n, dtype=coeffs.dtype)
    buf_w = np.empty(n, dtype=coeffs.dtype)

    def mv(v):
        return gather_accumulate(coeffs, ginv_act, v.astype(coeffs.dtype, copy=False), buf_u)

    def rmv(u):
        return gather_accumulate(cconj, act, u, buf_w)

    iscomplex = np.iscomplexobj(coeffs)
    return _power_smax(mv, rmv, n, iscomplex, tol, max_iter)


def series_smax_dense(coeffs, div_table, tol, max_iter):
    """Series spectral norm via one dense gather + BLAS (numpy fallback)."""
    x = coeffs[div_table]
    return dense_smax(x, tol, max_iter)
