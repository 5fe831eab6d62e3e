"""Gaussian series over group representations and Monte Carlo norm estimation.

Three samplers for E||X||:
  direct_real     X = sum_g x_g rho(g), x_g i.i.d. standard normal
  direct_complex  Z = sum_g z_g rho(g), Re z_g, Im z_g i.i.d. standard normal
  block           sqrt(n) * max_pi ||Z_pi|| / sqrt(d_pi) over independent
                  d_pi x d_pi complex Ginibre blocks, one per irreducible
                  degree — equal in distribution to ||Z|| for the complex
                  Cayley series, at cost sum d_pi^3 instead of n^3.

Trial t draws from a counter-derived substream of (master_seed, t), so the
estimate is bit-identical under any execution order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._backend import active_backend
from ._kernels import dense_smax, series_smax_dense, series_smax_gather
from .errors import GroupError
from .groups import FiniteGroup
from .regular import IrrepSpectrum, RegularRep
from .rng import substream_rng

MODES = ("real_cayley", "complex_cayley", "explicit")
METHODS = ("direct_real", "direct_complex", "block")

_POWER_TOL = 1e-6
_POWER_CAP = 10_000


@dataclass(eq=False)
class GaussianSeries:
    """X = sum_i x_i A_i; Cayley modes keep {rho(g)} implicit in the table."""

    mode: str
    group: FiniteGroup | None = None
    coefficients: np.ndarray | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise GroupError(f"unknown series mode {self.mode!r}")
        if self.mode == "explicit":
            if self.coefficients is None:
                raise GroupError("explicit mode needs coefficient matrices")
            c = np.asarray(self.coefficients)
            if c.ndim != 3 or c.shape[1] != c.shape[2]:
                raise GroupError("coefficients must be a (k, d, d) stack")
            self.coefficients = c
        elif self.group is None:
            raise GroupError("cayley modes need a group")

    @classmethod
    def real_cayley(cls, G: FiniteGroup) -> "GaussianSeries":
        return cls(mode="real_cayley", group=G)

    @classmethod
    def complex_cayley(cls, G: FiniteGroup) -> "GaussianSeries":
        return cls(mode="complex_cayley", group=G)

    @classmethod
    def explicit(cls, coefficients) -> "GaussianSeries":
        return cls(mode="explicit", coefficients=np.asarray(coefficients))

    @cached_property
    def rep(self) -> RegularRep:
        return RegularRep(self.group)

    @property
    def dim(self) -> int:
        if self.mode == "explicit":
            return int(self.coefficients.shape[1])
        return self.group.n


@dataclass(eq=False)
class NormEstimate:
    group: str
    method: str
    trials: int
    seed: int
    mean: float
    std_error: float

    def to_json(self) -> str:
        doc = {
            "group": self.group,
            "mean": float(self.mean),
            "method": self.method,
            "seed": int(self.seed),
            "std_error": float(self.std_error),
            "trials": int(self.trials),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _draw(S: GaussianSeries, rng, complex_draw: bool) -> np.ndarray:
    k = S.group.n if S.mode != "explicit" else S.coefficients.shape[0]
    x = rng.standard_normal(k)
    if complex_draw:
        x = x + 1j * rng.standard_normal(k)
    return x


def sample_cayley(S: GaussianSeries, rng) -> np.ndarray:
    """One dense draw of the Cayley series; entry (i, j) is x_{i j^{-1}}."""
    if S.mode not in ("real_cayley", "complex_cayley"):
        raise GroupError("sample_cayley needs a cayley-mode series")
    x = _draw(S, rng, S.mode == "complex_cayley")
    return x[S.rep.div_table]


def spectral_norm(A, tol: float = _POWER_TOL) -> float:
    """Largest singular value by power iteration on A*A."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.asarray(A, dtype=complex if np.iscomplexobj(A) else float)
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("matrix has non-finite entries")
    return dense_smax(A, tol, _POWER_CAP)


def dilate(A) -> np.ndarray:
    """Self-adjoint dilation [[0, A*], [A, 0]]; preserves the spectral norm."""
    A = np.atleast_2d(np.asarray(A))
    d1, d2 = A.shape
    out = np.zeros((d1 + d2, d1 + d2), dtype=A.dtype)
    out[:d2, d2:] = A.conj().T
    out[d2:, :d2] = A
    return out


def _cayley_norm(R: RegularRep, coeffs: np.ndarray, tol: float) -> float:
    if active_backend() == "numba":
        return series_smax_gather(coeffs, R.act, R.ginv_act, tol, _POWER_CAP)
    return series_smax_dense(coeffs, R.div_table, tol, _POWER_CAP)


def _block_norms(degrees, rng) -> float:
    """max_pi ||Z_pi|| / sqrt(d_pi) with blocks drawn grouped by degree,
    ascending, so the draw order is part of the contract."""
    best = 0.0
    uniq, counts = np.unique(np.asarray(degrees, dtype=np.int64), return_counts=True)
    for d, m in zip(uniq, counts):
        z = rng.standard_normal((m, d, d)) + 1j * rng.standard_normal((m, d, d))
        if d == 1:
            top = np.abs(z[:, 0, 0]).max()
        else:
            top = np.linalg.svd(z, compute_uv=False)[:, 0].max()
        best = max(best, float(top) / np.sqrt(float(d)))
    return best


def sample_norms(
    S: GaussianSeries,
    trials: int,
    method: str,
    master_seed: int,
    spectrum: IrrepSpectrum | None = None,
    tol: float = _POWER_TOL,
) -> np.ndarray:
    """Per-trial spectral norms; the raw material for estimates and KS tests."""
    if method not in METHODS:
        raise GroupError(f"unknown method {method!r}")
    if trials < 1:
        raise GroupError("trials must be >= 1")
    if method == "block":
        if spectrum is None:
            raise GroupError("block method requires an IrrepSpectrum")
        if S.mode != "complex_cayley":
            raise GroupError("block method models the complex cayley series")
        root_n = np.sqrt(float(S.group.n))
        degrees = spectrum.degrees
        out = np.empty(trials)
        for t in range(trials):
            rng = substream_rng(master_seed, t)
            out[t] = root_n * _block_norms(degrees, rng)
        return out
    if method == "direct_real" and S.mode == "complex_cayley":
        raise GroupError("direct_real cannot sample a complex series")
    if method == "direct_complex" and S.mode == "real_cayley":
        raise GroupError("direct_complex cannot sample a real series")
    complex_draw = method == "direct_complex"
    out = np.empty(trials)
    for t in range(trials):
        rng = substream_rng(master_seed, t)
        x = _draw(S, rng, complex_draw)
        if S.mode == "explicit":
            out[t] = dense_smax(
                np.tensordot(x, S.coefficients, axes=1), tol, _POWER_CAP
            )
        else:
            out[t] = _cayley_norm(S.rep, x, tol)
    return out


def estimate_expected_norm(
    S: GaussianSeries,
    trials: int,
    method: str,
    master_seed: int,
    spectrum: IrrepSpectrum | None = None,
) -> NormEstimate:
    """Monte Carlo mean of ||X|| with standard error over independent trials."""
    if trials < 2:
        raise GroupError("trials must be >= 2 for a standard error")
    vals = sample_norms(S, trials, method, master_seed, spectrum=spectrum)
    name = S.group.name if S.group is not None else "explicit"
    return NormEstimate(
        group=name,
        method=method,
        trials=trials,
        seed=master_seed,
        mean=float(vals.mean()),
        std_error=float(vals.std(ddof=1) / np.sqrt(trials)),
    )
