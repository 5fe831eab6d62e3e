"""Bound quantities for Gaussian series: sigma, v, the w lower-bound
certificate, and the degree functional m(G).

For the dilated Cayley series everything is analytic — sigma = sqrt(n),
v = sqrt(2n), w-certificate = (n ||S||)^{1/4} = sqrt(n) — so the generic
constructions here exist to witness those identities numerically and to
handle explicit coefficient families.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ._kernels import dense_smax
from .errors import CayleyLabError, GroupError
from .groups import FiniteGroup
from .regular import IrrepSpectrum, RegularRep, s_matrix
from .sampling import GaussianSeries, dilate

SIGMA_DIM_CAP = 256
V_DIM_CAP = 64  # generic covariance path touches dim^4 entries

_GRID_POINTS = 10_000
_S_NORM_TOL = 1e-12
_POWER_CAP = 10_000


@dataclass(eq=False)
class BoundsReport:
    group: str
    n: int
    sigma: float
    v: float
    w_certificate: float
    m_of_g: float
    s_star: float
    nck_lower: float
    nck_upper: float

    def to_json(self) -> str:
        doc = {
            "group": self.group,
            "m_of_g": float(self.m_of_g),
            "n": int(self.n),
            "nck_lower": float(self.nck_lower),
            "nck_upper": float(self.nck_upper),
            "s_star": float(self.s_star),
            "sigma": float(self.sigma),
            "v": float(self.v),
            "w_certificate": float(self.w_certificate),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    CSV_HEADER = "group,n,sigma,v,w_cert,m,s_star"

    def to_csv_row(self) -> str:
        return ",".join(
            [
                self.group,
                str(int(self.n)),
                repr(float(self.sigma)),
                repr(float(self.v)),
                repr(float(self.w_certificate)),
                repr(float(self.m_of_g)),
                repr(float(self.s_star)),
            ]
        )


def _dilated_family(series: GaussianSeries) -> np.ndarray:
    return np.stack([dilate(a) for a in series.coefficients])


def sigma_of(series: GaussianSeries) -> float:
    """sigma = ||sum_i A_i^2||^{1/2}, on dilations for explicit families.

    Cayley modes short-circuit: each dilated rho(g) squares to I_{2n}, so the
    sum is n I and sigma = sqrt(n) exactly.
    """
    if series.mode != "explicit":
        return float(np.sqrt(series.group.n))
    if series.dim > SIGMA_DIM_CAP:
        raise GroupError(f"sigma_of explicit cap is d <= {SIGMA_DIM_CAP}")
    fam = _dilated_family(series)
    total = np.einsum("kij,kjl->il", fam, fam)
    return float(np.sqrt(dense_smax(total, 1e-10, _POWER_CAP)))


def v_of(series: GaussianSeries) -> float:
    """v = ||Cov(X)||^{1/2} over the entries of X.

    Cov = B* B for the matrix B whose rows are the vectorized coefficients,
    so v is the top singular value of B. Self-adjoint explicit families are
    taken as-is; non-self-adjoint ones are dilated first. Cayley modes return
    the analytic sqrt(2n).
    """
    if series.mode != "explicit":
        return float(np.sqrt(2.0 * series.group.n))
    fam = series.coefficients
    if not all(np.allclose(a, a.conj().T, atol=1e-12) for a in fam):
        fam = _dilated_family(series)
    dim = fam.shape[1]
    if dim > V_DIM_CAP:
        raise GroupError(f"v_of generic cap is dimension {V_DIM_CAP}")
    b = fam.reshape(fam.shape[0], dim * dim)
    return float(np.linalg.svd(b, compute_uv=False)[0])


def v_of_cayley_generic(G: FiniteGroup) -> float:
    """The covariance construction applied to the explicit dilated Cayley
    family; cross-checks the analytic sqrt(2n) at small order."""
    if 2 * G.n > V_DIM_CAP:
        raise GroupError(f"generic covariance cap is dilated dimension {V_DIM_CAP}")
    R = RegularRep(G)
    fam = np.stack([dilate(R.rho(g)) for g in range(G.n)])
    b = fam.reshape(G.n, (2 * G.n) ** 2)
    return float(np.linalg.svd(b, compute_uv=False)[0])


def w_certificate(G: FiniteGroup, R: RegularRep | None = None) -> float:
    """(n ||S||)^{1/4} with S = sum_g rho(g^2); equals sqrt(n).

    ||S|| = n is forced (S is nonnegative with constant row sum n), so a
    deviation beyond 1e-8 relative marks an implementation bug, not a
    mathematical possibility.
    """
    if R is None:
        R = RegularRep(G)
    s = s_matrix(R)
    s_norm = dense_smax(s, _S_NORM_TOL, _POWER_CAP)
    n = float(G.n)
    if abs(s_norm - n) > 1e-8 * n:
        raise CayleyLabError(
            f"{G.name}: ||S|| = {s_norm!r} deviates from n = {n}; S is corrupt"
        )
    return float((n * s_norm) ** 0.25)


def m_of_group(spectrum: IrrepSpectrum) -> tuple:
    """Minimize f(s) = s + sum_pi d_pi^{-1/2} exp(-d_pi s^2 / 2) over s >= 0.

    f'(0) = 1 > 0 yet f can dip much lower past an initial hump, so the
    minimum is located by a dense grid over [0, sqrt(2 ln n) + 2] and then
    polished by bounded scalar minimization in the best grid cell.
    Returns (m, s_star).
    """
    degrees = np.asarray(spectrum.degrees, dtype=float)
    if degrees.size == 0:
        raise GroupError("empty degree multiset")
    n = float(np.sum(degrees**2))
    uniq, counts = np.unique(degrees, return_counts=True)
    w = counts / np.sqrt(uniq)

    def f(s):
        return s + float(w @ np.exp(-uniq * s * s / 2.0))

    hi = np.sqrt(max(2.0 * np.log(n), 0.0)) + 2.0
    grid = np.linspace(0.0, hi, _GRID_POINTS)
    vals = grid + np.exp(-np.outer(grid * grid / 2.0, uniq)) @ w
    i = int(np.argmin(vals))
    lo_b = grid[max(i - 1, 0)]
    hi_b = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(f, bounds=(lo_b, hi_b), method="bounded",
                          options={"xatol": 1e-9})
    s_star, m = float(res.x), float(res.fun)
    if f(0.0) < m:
        m, s_star = f(0.0), 0.0
    return m, s_star


def bounds_report(G: FiniteGroup, seed: int = 0,
                  spectrum: IrrepSpectrum | None = None) -> BoundsReport:
    """All bound quantities for one group, with the proof-level sanity checks
    (w_cert <= sigma; e^{-1/2} <= m <= sqrt(2 ln n) + 1) enforced."""
    from .regular import load_or_compute_spectrum

    n = G.n
    if spectrum is None:
        spectrum = load_or_compute_spectrum(G, seed)
    sigma = float(np.sqrt(n))
    v = float(np.sqrt(2.0 * n))
    w_cert = w_certificate(G)
    m, s_star = m_of_group(spectrum)
    if w_cert > sigma * (1 + 1e-12):
        raise CayleyLabError(f"{G.name}: w certificate exceeds sigma")
    if not (np.exp(-0.5) - 1e-12 <= m <= np.sqrt(2.0 * np.log(n)) + 1 + 1e-12):
        raise CayleyLabError(f"{G.name}: m = {m} escapes its proof bounds")
    return BoundsReport(
        group=G.name,
        n=n,
        sigma=sigma,
        v=v,
        w_certificate=w_cert,
        m_of_g=m,
        s_star=s_star,
        nck_lower=sigma,
        nck_upper=float(sigma * np.sqrt(np.log(2.0 * n))),
    )
