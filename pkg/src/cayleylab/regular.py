"""Left regular representation and irreducible-degree extraction.

rho(g) e_h = e_{gh}, so rho(g) is the permutation matrix with column support
perm_of(g) = table[g]. A sum sum_g x_g rho(g) has (i, j) entry x_{i j^{-1}},
which makes every matrix in the group algebra a gather of a coefficient
vector through the division table i j^{-1} — nothing is materialized until
an eigen-decomposition needs it.

Degrees {d_pi} come from the eigenvalue clustering of a generic Hermitian
central element: the isotypic component of pi has dimension d_pi^2 and a
central element acts on it as a single scalar, so generic coefficients give
clusters of exactly those sizes. An independent Burnside-style oracle over
class multiplication constants cross-checks the result.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateSpectrumError, GroupError
from .groups import FiniteGroup, commutator_subgroup_order
from .rng import substream_rng

DIXON_CAP = 400  # oracle is test-scale only: O(n^2) pair counting per group

_CLUSTER_TOL = 1e-6
_RETRIES = 5


@dataclass(eq=False)
class RegularRep:
    group: FiniteGroup

    @property
    def n(self) -> int:
        return self.group.n

    def perm_of(self, g: int) -> np.ndarray:
        """Column support of rho(g): perm_of(g)[h] = g*h."""
        return self.group.table[g]

    def rho(self, g: int) -> np.ndarray:
        """Dense rho(g) (test-scale convenience)."""
        n = self.n
        m = np.zeros((n, n))
        m[self.group.table[g], np.arange(n)] = 1.0
        return m

    @cached_property
    def div_table(self) -> np.ndarray:
        """div_table[i, j] = i * j^{-1}; coefficient index of entry (i, j)."""
        return np.ascontiguousarray(self.group.table[:, self.group.inverse])

    @cached_property
    def act(self) -> np.ndarray:
        """act[g, j] = g*j (adjoint-side gather index)."""
        return self.group.table

    @cached_property
    def ginv_act(self) -> np.ndarray:
        """ginv_act[g, i] = g^{-1} * i (matvec-side gather index)."""
        return np.ascontiguousarray(self.group.table[self.group.inverse, :])


@dataclass(eq=False)
class IrrepSpectrum:
    group: str
    degrees: list  # sorted ascending, one entry per isomorphism class

    def __post_init__(self):
        self.degrees = sorted(int(d) for d in self.degrees)

    def to_json(self) -> str:
        return json.dumps({"degrees": self.degrees, "group": self.group},
                          sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "IrrepSpectrum":
        doc = json.loads(text)
        return cls(group=doc["group"], degrees=doc["degrees"])


def class_sum_matrix(R: RegularRep, cls) -> np.ndarray:
    """C_K = sum_{g in K} rho(g) for a single conjugacy class K."""
    cls = np.unique(np.asarray(cls, dtype=np.int64))
    cc = R.group.classes
    ref = cc.classes[cc.class_of[cls[0]]]
    if cls.size != ref.size or not np.array_equal(cls, ref):
        raise GroupError("input is not a single conjugacy class")
    indicator = np.zeros(R.n)
    indicator[cls] = 1.0
    return indicator[R.div_table]


def s_matrix(R: RegularRep) -> np.ndarray:
    """S = sum_g rho(g^2); symmetric with constant row sum n."""
    counts = np.bincount(R.group.squares, minlength=R.n).astype(float)
    return counts[R.div_table]


def _check_spectrum(G: FiniteGroup, degrees) -> bool:
    degrees = sorted(degrees)
    if not degrees or degrees[0] < 1:
        return False
    if sum(d * d for d in degrees) != G.n:
        return False
    if len(degrees) != len(G.classes.classes):
        return False
    n_linear = sum(1 for d in degrees if d == 1)
    return n_linear == G.n // commutator_subgroup_order(G)


def _conjugate_pair_coeffs(G: FiniteGroup, rng) -> np.ndarray:
    """One complex coefficient per unordered class pair {K, K^{-1}}, with
    c_{K^{-1}} = conj(c_K) so the central element is Hermitian. Complex draws
    (not just real) keep conjugate irrep pairs in distinct eigen-clusters."""
    cc = G.classes
    ncl = len(cc.classes)
    coeff = np.zeros(ncl, dtype=complex)
    done = np.zeros(ncl, dtype=bool)
    for k in range(ncl):
        if done[k]:
            continue
        kinv = int(cc.class_of[G.inverse[cc.classes[k][0]]])
        if kinv == k:
            coeff[k] = rng.standard_normal()
        else:
            c = rng.standard_normal() + 1j * rng.standard_normal()
            coeff[k], coeff[kinv] = c, np.conj(c)
            done[kinv] = True
        done[k] = True
    return coeff


def irrep_degrees(R: RegularRep, seed: int = 0) -> IrrepSpectrum:
    """Degrees via eigenvalue clustering of a random Hermitian central element.

    Redraws coefficients up to a retry budget when the clustering violates a
    structural invariant (sum of squares, class count, linear-character
    count); raises DegenerateSpectrumError after the budget is exhausted.
    """
    G = R.group
    cc = G.classes
    failures = []
    for attempt in range(_RETRIES):
        rng = substream_rng(seed, attempt)
        coeff = _conjugate_pair_coeffs(G, rng)
        m = coeff[cc.class_of][R.div_table]
        evals = np.linalg.eigvalsh(m)
        radius = max(np.abs(evals).max(), 1.0)
        gaps = np.diff(evals)
        splits = np.flatnonzero(gaps > _CLUSTER_TOL * radius)
        sizes = np.diff(np.concatenate(([0], splits + 1, [G.n])))
        degrees = [int(round(np.sqrt(s))) for s in sizes]
        if all(d * d == s for d, s in zip(degrees, sizes)) and _check_spectrum(G, degrees):
            return IrrepSpectrum(group=G.name, degrees=degrees)
        failures.append(sorted(degrees))
    raise DegenerateSpectrumError(
        f"{G.name}: eigenvalue clustering failed {_RETRIES} times "
        f"(cluster degree candidates {failures[-1]})",
        residual=float("nan"),
    )


def dixon_oracle(G: FiniteGroup) -> IrrepSpectrum:
    """Independent degree oracle from class multiplication constants.

    Burnside's method: the class-sum algebra matrices (A_K)_{LM} = a_{KL}^M
    commute and their common eigenvectors are central characters; degrees
    follow from the second orthogonality normalization
    d^2 = n / sum_K |omega_K|^2 / |K|. All a_{KL}^M are exact small integers
    and every recovered degree is verified to be a positive integer, so the
    float linear algebra is only a search device, not a source of truth.
    """
    if G.n > DIXON_CAP:
        raise GroupError(f"{G.name}: order {G.n} above oracle cap {DIXON_CAP}")
    cc = G.classes
    ncl = len(cc.classes)
    sizes = np.array(cc.sizes, dtype=np.int64)
    class_of = cc.class_of

    # a[K, L, M] = #{(k, l) in K x L : k l = m} for any fixed m in M
    a = np.zeros((ncl, ncl, ncl), dtype=np.int64)
    for K in range(ncl):
        prod_class = class_of[G.table[cc.classes[K], :]]  # (|K|, n)
        l_class = np.broadcast_to(class_of, prod_class.shape)
        pair = np.ravel(l_class * ncl + prod_class)
        counts = np.bincount(pair, minlength=ncl * ncl).reshape(ncl, ncl)
        if np.any(counts % sizes[None, :]):
            raise GroupError(f"{G.name}: class constants fail exact division")
        a[K] = counts // sizes[None, :]

    rng = np.random.default_rng(0xD1C0)
    for _ in range(_RETRIES):
        combo = np.tensordot(rng.standard_normal(ncl), a, axes=1)
        _, vecs = np.linalg.eig(combo)
        degrees = []
        ok = True
        for i in range(ncl):
            v = vecs[:, i]
            j = int(np.argmax(np.abs(v)))
            omega = a[:, j, :] @ v / v[j]  # A_K v = omega_K v read off row j
            resid = np.abs(a @ v - omega[:, None] * v[None, :]).max()
            if resid > 1e-7 * max(1.0, np.abs(omega).max()):
                ok = False
                break
            d2 = G.n / np.sum(np.abs(omega) ** 2 / sizes)
            d = np.sqrt(d2)
            if abs(d - round(d)) > 1e-6:
                ok = False
                break
            degrees.append(int(round(d)))
        if ok and _check_spectrum(G, degrees):
            return IrrepSpectrum(group=G.name, degrees=degrees)
    raise DegenerateSpectrumError(
        f"{G.name}: oracle eigenbasis stayed degenerate across retries",
        residual=float("nan"),
    )


# ------------------------------------------------------------------ cache

CACHE_ENV = "CAYLEYLAB_CACHE_DIR"


def load_or_compute_spectrum(G: FiniteGroup, seed: int = 0,
                             cache_dir: str | None = None) -> IrrepSpectrum:
    """irrep_degrees with an optional on-disk JSON cache keyed by group name.

    cache_dir=None consults the CAYLEYLAB_CACHE_DIR environment variable; if
    that is unset too, no filesystem is touched.
    """
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV) or None
    path = None
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        fname = G.name.replace(":", "_").replace("/", "_") + ".spectrum.json"
        path = os.path.join(cache_dir, fname)
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                spec = IrrepSpectrum.from_json(fh.read())
            if spec.group == G.name and _check_spectrum(G, spec.degrees):
                return spec
    spec = irrep_degrees(RegularRep(G), seed)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(spec.to_json())
    return spec
