"""Sign-vector discrepancy searches: minimize ||sum_g eps_g rho(g)||.

Exact enumeration at toy scale, random draws (whose mean estimates the
Rademacher series norm), first-improvement single-flip descent with
warm-started power iteration, and the abelian character reduction that
turns the matrix norm into an l-infinity objective over 2n real coordinates.

All colorings are canonicalized to eps = +1 at the identity; negating every
sign leaves the norm unchanged.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._kernels import dense_smax_warm
from .errors import CapExceededError, CayleyLabError, GroupError
from .groups import FiniteGroup
from .regular import RegularRep
from .rng import substream_rng
from .sampling import _cayley_norm

BRUTE_CAP = 16
_IMPROVE_EPS = 1e-9
_SVD_EXACT_MAX = 256
_WARM_TOL = 1e-10
_WARM_ITERS = 500
_PASS_CAP = 500


@dataclass(eq=False)
class Coloring:
    group: str
    method: str
    signs: np.ndarray
    norm: float
    seed: int | None = None
    mean_norm: float | None = None  # empirical mean over random draws, if any

    def __post_init__(self):
        self.signs = np.asarray(self.signs, dtype=np.int8)

    @property
    def n(self) -> int:
        return self.signs.size

    @property
    def discrepancy_ratio(self) -> float:
        return float(self.norm / np.sqrt(self.n))

    def to_json(self) -> str:
        doc = {
            "group": self.group,
            "method": self.method,
            "norm": float(self.norm),
            "ratio": self.discrepancy_ratio,
            "seed": None if self.seed is None else int(self.seed),
            "signs": [int(s) for s in self.signs],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def coloring_norm(G: FiniteGroup, signs, tol: float = 1e-8) -> float:
    """||sum_g eps_g rho(g)||; exact dense SVD at small order, else power
    iteration through the gather kernels."""
    signs = np.asarray(signs, dtype=float)
    R = RegularRep(G)
    if G.n <= _SVD_EXACT_MAX:
        return float(np.linalg.svd(signs[R.div_table], compute_uv=False)[0])
    return _cayley_norm(R, signs, tol)


def check_coloring(G: FiniteGroup, col: Coloring, rtol: float = 1e-6) -> None:
    """Recompute the norm independently and assert the all-ones eigenvector
    floor |sum eps| / sqrt(n)."""
    if col.signs[G.identity] != 1:
        raise CayleyLabError("coloring is not canonicalized at the identity")
    if not np.all(np.abs(col.signs) == 1):
        raise CayleyLabError("signs must be +-1")
    norm = coloring_norm(G, col.signs)
    if abs(norm - col.norm) > rtol * max(norm, 1.0):
        raise CayleyLabError(
            f"recorded norm {col.norm!r} disagrees with recomputed {norm!r}"
        )
    floor = abs(int(col.signs.sum())) / np.sqrt(G.n)
    if col.norm < floor - 1e-9:
        raise CayleyLabError("norm below the all-ones eigenvector floor")


def brute_force(G: FiniteGroup) -> Coloring:
    """Exact minimizer over all 2^{n-1} sign patterns (identity pinned +1)."""
    n = G.n
    if n > BRUTE_CAP:
        raise CapExceededError(f"brute force capped at order {BRUTE_CAP}")
    div = RegularRep(G).div_table
    total = 1 << (n - 1)
    best_norm = np.inf
    best_signs = None
    chunk = 4096
    bit_idx = np.arange(n - 1, dtype=np.uint32)
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        signs = np.ones((ids.size, n))
        if n > 1:
            signs[:, 1:] = 1.0 - 2.0 * ((ids[:, None] >> bit_idx) & 1)
        tops = np.linalg.svd(signs[:, div], compute_uv=False)[:, 0]
        j = int(np.argmin(tops))
        if tops[j] < best_norm:
            best_norm = float(tops[j])
            best_signs = signs[j].astype(np.int8)
    return Coloring(group=G.name, method="brute_force",
                    signs=best_signs, norm=best_norm)


def _draw_signs(n: int, rng) -> np.ndarray:
    raw = (2 * rng.integers(0, 2, size=n) - 1).astype(np.int8)
    return raw * raw[0]  # canonical identity sign


def random_best_of_k(G: FiniteGroup, k: int, seed: int,
                     _stream: int = 0) -> Coloring:
    """Best of k uniform draws; mean_norm estimates the Rademacher series
    expectation that upper-bounds the minimum."""
    if k < 1:
        raise GroupError("k must be >= 1")
    norms = np.empty(k)
    best = None
    for t in range(k):
        rng = substream_rng(seed, 0, _stream, t)
        signs = _draw_signs(G.n, rng)
        norms[t] = coloring_norm(G, signs)
        if best is None or norms[t] < best[0]:
            best = (float(norms[t]), signs)
    return Coloring(group=G.name, method="random_best_of_k", signs=best[1],
                    norm=best[0], seed=seed, mean_norm=float(norms.mean()))


def _descend(G: FiniteGroup, signs: np.ndarray, rng) -> np.ndarray:
    """First-improvement single-flip descent in seeded random scan order.

    Flipping sign g negates the n entries M[g*j, j]. Up to the dense-SVD
    size cutoff each candidate is scored exactly; sign T_G matrices have
    clustered top singular values where warm-started power iteration can
    stall below the true norm and derail the descent, so the iterative
    path is reserved for orders past the cutoff.
    """
    table = G.table
    n = G.n
    ar = np.arange(n)
    signs = signs.copy()
    m = signs.astype(float)[RegularRep(G).div_table]
    exact = n <= _SVD_EXACT_MAX
    if exact:
        est = np.linalg.norm(m, 2)
    else:
        v = rng.standard_normal(n)
        est, v = dense_smax_warm(m, v, _WARM_TOL, _WARM_ITERS)
    for _ in range(_PASS_CAP):
        improved = False
        for g in rng.permutation(ar[1:]):
            rows = table[g]
            m[rows, ar] = -m[rows, ar]
            if exact:
                cand = np.linalg.norm(m, 2)
            else:
                cand, vc = dense_smax_warm(m, v, _WARM_TOL, _WARM_ITERS)
            if cand < est - _IMPROVE_EPS:
                est = cand
                if not exact:
                    v = vc
                signs[g] = -signs[g]
                improved = True
            else:
                m[rows, ar] = -m[rows, ar]
        if not improved:
            break
    return signs


def local_search(G: FiniteGroup, init: Coloring, seed: int) -> Coloring:
    """Descent from init; never returns a worse coloring than init."""
    rng = substream_rng(seed, 1, 0)
    signs = _descend(G, np.asarray(init.signs, dtype=np.int8), rng)
    norm = coloring_norm(G, signs)
    init_norm = coloring_norm(G, init.signs)
    if norm >= init_norm:
        return Coloring(group=G.name, method="local_search",
                        signs=np.asarray(init.signs, dtype=np.int8),
                        norm=float(init_norm), seed=seed)
    return Coloring(group=G.name, method="local_search", signs=signs,
                    norm=float(norm), seed=seed)


def local_search_multi(G: FiniteGroup, restarts: int, seed: int) -> Coloring:
    """Independent descents from random starts; ties broken by restart index."""
    best = None
    for r in range(restarts):
        rng_init = substream_rng(seed, 0, 1, r)
        signs = _descend(G, _draw_signs(G.n, rng_init),
                         substream_rng(seed, 1, 1, r))
        norm = coloring_norm(G, signs)
        if best is None or norm < best[0]:
            best = (float(norm), signs)
    return Coloring(group=G.name, method="local_search", signs=best[1],
                    norm=best[0], seed=seed)


# ------------------------------------------------------- abelian reduction

def character_matrix(G: FiniteGroup) -> np.ndarray:
    """chars[chi, g] = exp(2 pi i sum_j chi_j g_j / m_j) for the cyclic
    factor decomposition carried by the group constructor."""
    if G.abelian_factors is None:
        raise GroupError(
            f"{G.name}: character construction needs the cyclic factor "
            "structure (built-in cyclic/abelian families)"
        )
    factors = G.abelian_factors
    digits = np.array(np.unravel_index(np.arange(G.n), factors), dtype=float)
    phase = np.zeros((G.n, G.n))
    for j, mj in enumerate(factors):
        phase += np.outer(digits[j], digits[j]) / float(mj)
    return np.exp(2j * np.pi * phase)


def abelian_sign_norm(G: FiniteGroup, signs) -> float:
    """max_chi |sum_g eps_g chi(g)| — equals the spectral norm for abelian G."""
    return float(np.abs(character_matrix(G) @ np.asarray(signs, float)).max())


def abelian_reduction(G: FiniteGroup, seed: int = 0, restarts: int = 20) -> Coloring:
    """Character-side search: minimize the split-real l-infinity objective
    over 2n coordinates, then certify the complex l-infinity value against
    the spectral norm of the resulting sign matrix."""
    if any(len(k) != 1 for k in G.classes.classes):
        raise GroupError(f"{G.name} is not abelian")
    chars = character_matrix(G)
    a2 = np.vstack([chars.real, chars.imag])  # split objective coordinates
    n = G.n
    best = None
    for r in range(restarts):
        rng = substream_rng(seed, 0, 2, r)
        signs = _draw_signs(n, rng).astype(float)
        z = a2 @ signs
        cur = float(np.abs(z).max())
        for _ in range(_PASS_CAP):
            improved = False
            for g in rng.permutation(np.arange(1, n)):
                delta = -2.0 * signs[g] * a2[:, g]
                cand = float(np.abs(z + delta).max())
                if cand < cur - _IMPROVE_EPS:
                    z += delta
                    signs[g] = -signs[g]
                    cur = cand
                    improved = True
            if not improved:
                break
        linf = float(np.abs(chars @ signs).max())
        if best is None or linf < best[0]:
            best = (linf, signs.astype(np.int8))
    linf, signs = best
    exact = coloring_norm(G, signs)
    if abs(linf - exact) > 1e-6 * max(exact, 1.0):
        raise CayleyLabError(
            f"{G.name}: character l-infinity {linf!r} disagrees with "
            f"spectral norm {exact!r}"
        )
    return Coloring(group=G.name, method="abelian_reduction", signs=signs,
                    norm=linf, seed=seed)
