"""Finite groups as dense Cayley tables.

Element encoding is a dense index 0..n-1 with identity at 0; the whole group
law lives in one n x n table (table[g, h] = g*h), which keeps every
downstream computation an index gather. Families: cyclic, abelian products,
dihedral, symmetric, alternating, psl2(p) on the projective line, and
breadth-first closure of explicit permutation generators.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapExceededError, GroupError, ValidationError

ORDER_CAP = 5040  # |S_7|; dense n x n linear algebra beyond this is not desk scale

_ASSOC_EXHAUSTIVE_MAX = 64
_ASSOC_SAMPLES = 10_000


@dataclass(eq=False)
class FiniteGroup:
    """Group of order n given by its Cayley table; identity is element 0."""

    name: str
    table: np.ndarray
    identity: int = 0
    # cyclic factor shape (m_1, ..., m_r) for groups built as direct products
    # of cyclic factors; carries the character construction downstream
    abelian_factors: tuple = None
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        self.table = np.ascontiguousarray(self.table, dtype=np.int32)
        # identity column of each row marks the inverse
        self.inverse = np.ascontiguousarray(
            (self.table == self.identity).argmax(axis=1).astype(np.int32)
        )

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @cached_property
    def classes(self) -> "ConjugacyClasses":
        return conjugacy_classes(self)

    @cached_property
    def squares(self) -> np.ndarray:
        """squares[g] = g*g."""
        return self.table[np.arange(self.n), np.arange(self.n)]

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, n={self.n})"


@dataclass(eq=False)
class ConjugacyClasses:
    classes: list  # list of sorted int arrays, identity class first
    class_of: np.ndarray

    @property
    def sizes(self) -> list:
        return [len(k) for k in self.classes]

    def __len__(self):
        return len(self.classes)


def multiply(G: FiniteGroup, g: int, h: int) -> int:
    n = G.n
    if not (0 <= g < n and 0 <= h < n):
        raise GroupError(f"element index out of range for order {n}: ({g}, {h})")
    return int(G.table[g, h])


def square_element(G: FiniteGroup, g: int) -> int:
    return multiply(G, g, g)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbit partition under g -> h g h^{-1}; classes ordered by least element."""
    table, inv, n = G.table, G.inverse, G.n
    class_of = np.full(n, -1, dtype=np.int64)
    classes = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(table[table[:, g], inv])
        class_of[orbit] = len(classes)
        classes.append(orbit.astype(np.int64))
    return ConjugacyClasses(classes=classes, class_of=class_of)


def validate(G: FiniteGroup, seed: int = 0) -> None:
    """Latin-square, identity, inverse, and associativity checks.

    Associativity is exhaustive for n <= 64 and sampled (>= 10^4 seeded
    triples) above that; the table constructions are structurally
    associative, so sampling is a guard against table corruption.
    """
    t = G.table
    n = t.shape[0]
    if t.ndim != 2 or t.shape != (n, n) or n == 0:
        raise ValidationError(f"{G.name}: table must be square and nonempty")
    if t.min() < 0 or t.max() >= n:
        raise ValidationError(f"{G.name}: table entries outside 0..{n - 1}")
    ar = np.arange(n)
    if not (np.array_equal(np.sort(t, axis=1), np.broadcast_to(ar, (n, n)))
            and np.array_equal(np.sort(t, axis=0), np.broadcast_to(ar[:, None], (n, n)))):
        raise ValidationError(f"{G.name}: table is not a Latin square")
    e = G.identity
    if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
        raise ValidationError(f"{G.name}: element {e} is not a two-sided identity")
    if not np.all(t[ar, G.inverse] == e):
        raise ValidationError(f"{G.name}: inverse array is inconsistent")
    if n <= _ASSOC_EXHAUSTIVE_MAX:
        for a in range(n):
            if not np.array_equal(t[t[a]], t[a][t]):
                raise ValidationError(f"{G.name}: associativity fails at a={a}")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
        if not np.all(t[t[a, b], c] == t[a, t[b, c]]):
            raise ValidationError(f"{G.name}: associativity fails on sampled triples")


def _check_cap(order: int, what: str, cap: int) -> None:
    if order > cap:
        raise CapExceededError(f"{what} has order {order} > cap {cap}")


# ---------------------------------------------------------------- families

def cyclic(m: int, cap: int = ORDER_CAP) -> FiniteGroup:
    if m < 1:
        raise GroupError(f"cyclic order must be >= 1, got {m}")
    _check_cap(m, f"cyclic:{m}", cap)
    ar = np.arange(m)
    return FiniteGroup(f"cyclic:{m}", (ar[:, None] + ar[None, :]) % m,
                       abelian_factors=(m,))


def abelian(factors, cap: int = ORDER_CAP) -> FiniteGroup:
    factors = [int(f) for f in factors]
    if not factors or any(f < 2 for f in factors):
        raise GroupError(f"abelian factors must all be >= 2, got {factors}")
    n = int(np.prod(factors))
    name = "abelian:" + "x".join(str(f) for f in factors)
    _check_cap(n, name, cap)
    digits = np.array(np.unravel_index(np.arange(n), factors))  # (r, n)
    summed = [
        (digits[j][:, None] + digits[j][None, :]) % factors[j]
        for j in range(len(factors))
    ]
    table = np.ravel_multi_index(summed, factors)
    return FiniteGroup(name, table, abelian_factors=tuple(factors))


def dihedral(m: int, cap: int = ORDER_CAP) -> FiniteGroup:
    """Dihedral group with m rotations (order 2m); index r + s*m, s the flip bit."""
    if m < 1:
        raise GroupError(f"dihedral rotation count must be >= 1, got {m}")
    _check_cap(2 * m, f"dihedral:{m}", cap)
    idx = np.arange(2 * m)
    r, s = idx % m, idx // m
    r2 = np.where(s[:, None] == 0, r[None, :], -r[None, :])
    rp = (r[:, None] + r2) % m
    sp = s[:, None] ^ s[None, :]
    return FiniteGroup(f"dihedral:{m}", rp + m * sp)


def _perm_parity(p) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            inv += p[i] > p[j]
    return inv % 2


def _perm_group_table(perms: np.ndarray) -> np.ndarray:
    """Cayley table for a list of permutations under (p*q)(i) = p[q[i]].

    Rows must be closed under composition; perms are encoded to base-k codes
    and products resolved by binary search, chunked by left factor.
    """
    n, k = perms.shape
    radix = (k ** np.arange(k - 1, -1, -1)).astype(np.int64)
    codes = perms.astype(np.int64) @ radix
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    table = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        comp = perms[g][perms]  # (n, k), row h = p_g o p_h
        pos = np.searchsorted(sorted_codes, comp.astype(np.int64) @ radix)
        table[g] = order[pos]
    return table


def symmetric(k: int, cap: int = ORDER_CAP) -> FiniteGroup:
    if k < 1:
        raise GroupError(f"symmetric degree must be >= 1, got {k}")
    _check_cap(math.factorial(k), f"sym:{k}", cap)
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.int16)
    return FiniteGroup(f"sym:{k}", _perm_group_table(perms))


def alternating(k: int, cap: int = ORDER_CAP) -> FiniteGroup:
    if k < 1:
        raise GroupError(f"alternating degree must be >= 1, got {k}")
    all_perms = [p for p in itertools.permutations(range(k)) if _perm_parity(p) == 0]
    _check_cap(len(all_perms), f"alt:{k}", cap)
    perms = np.array(all_perms, dtype=np.int16)
    return FiniteGroup(f"alt:{k}", _perm_group_table(perms))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def psl2(p: int, cap: int = ORDER_CAP) -> FiniteGroup:
    """PSL(2, p) as permutations of the projective line {0..p-1, inf=p}.

    Generated by z -> z+1 and z -> -1/z; order p(p^2-1)/2 for odd prime p.
    """
    if not _is_prime(p) or p == 2:
        raise GroupError(f"psl2 parameter must be an odd prime, got {p}")
    expected = p * (p * p - 1) // 2
    _check_cap(expected, f"psl2:{p}", cap)
    inf = p
    t_gen = tuple((z + 1) % p for z in range(p)) + (inf,)
    s_gen = tuple(
        inf if z == 0 else (p - pow(z, p - 2, p)) % p for z in range(p)
    ) + (0,)
    G = from_generators([t_gen, s_gen], name=f"psl2:{p}", cap=cap)
    if G.n != expected:
        raise GroupError(f"psl2:{p} closure has order {G.n}, expected {expected}")
    return G


def from_generators(generators, name: str = "generated", cap: int = ORDER_CAP) -> FiniteGroup:
    """Close permutation generators under composition, breadth first.

    Elements are numbered in discovery order starting from the identity, so
    index 0 is the identity. The full table is assembled from the generator
    rows: a row for g = a*gen is row_a gathered through row_gen.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise GroupError("from_generators needs at least one generator")
    k = len(gens[0])
    for g in gens:
        if len(g) != k or sorted(g) != list(range(k)):
            raise GroupError(f"not a permutation of 0..{k - 1}: {g}")

    ident = tuple(range(k))
    index = {ident: 0}
    elems = [ident]
    parent = [(-1, -1)]  # (parent element, generator) per element
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            pa = elems[a]
            for j, pj in enumerate(gens):
                child = tuple(pa[pj[i]] for i in range(k))  # p_a o p_j
                if child not in index:
                    if len(elems) >= cap + 1:
                        raise CapExceededError(
                            f"{name}: closure exceeded order cap {cap}"
                        )
                    index[child] = len(elems)
                    elems.append(child)
                    parent.append((a, j))
                    nxt.append(index[child])
        frontier = nxt
    n = len(elems)

    # generator rows by direct lookup, remaining rows by parent composition
    table = np.empty((n, n), dtype=np.int32)
    table[0] = np.arange(n)
    gen_rows = {}
    for j, pj in enumerate(gens):
        row = np.array([index[tuple(pj[q[i]] for i in range(k))] for q in elems],
                       dtype=np.int32)
        gen_rows[j] = row
    for g in range(1, n):
        a, j = parent[g]
        table[g] = table[a][gen_rows[j]]
    G = FiniteGroup(name, table)
    validate(G)
    return G


# ------------------------------------------------------------- structure

def subgroup_closure(G: FiniteGroup, gens) -> np.ndarray:
    """Sorted element set of the subgroup generated by gens."""
    h = np.unique(np.concatenate(([G.identity], np.asarray(gens, dtype=np.int64))))
    while True:
        prod = np.unique(G.table[np.ix_(h, h)])
        if prod.size == h.size:
            return h
        h = prod


def commutator_subgroup_order(G: FiniteGroup) -> int:
    """Order of [G, G].

    Every commutator is conjugate to one with its left argument a class
    representative, so commutators of representatives against all elements
    generate the derived subgroup.
    """
    table, inv = G.table, G.inverse
    ar = np.arange(G.n)
    gens = []
    for K in G.classes.classes:
        r = int(K[0])
        t1 = table[inv[r], inv]          # r^{-1} h^{-1}
        t2 = table[t1, r]                # r^{-1} h^{-1} r
        gens.append(np.unique(table[t2, ar]))
    return int(subgroup_closure(G, np.concatenate(gens)).size)


def is_simple(G: FiniteGroup) -> bool:
    """Union-of-classes normal subgroup search: the normal closure of every
    nontrivial class must be the whole group."""
    if G.n == 1:
        return False
    for K in G.classes.classes[1:]:
        if subgroup_closure(G, K).size != G.n:
            return False
    return True


# ------------------------------------------------------------ spec strings

_FAMILIES = ("cyclic", "abelian", "dihedral", "sym", "alt", "psl2")


def parse_group_spec(spec: str, cap: int = ORDER_CAP) -> FiniteGroup:
    """Parse a family spec string: cyclic:4 | abelian:2x2x3 | dihedral:6 |
    sym:5 | alt:5 | psl2:7."""
    parts = spec.strip().split(":")
    if len(parts) != 2 or parts[0] not in _FAMILIES:
        raise GroupError(
            f"bad group spec {spec!r}; expected family:arg with family in {_FAMILIES}"
        )
    fam, arg = parts
    try:
        if fam == "abelian":
            factors = [int(x) for x in arg.split("x")]
        else:
            value = int(arg)
    except ValueError:
        raise GroupError(f"bad group spec argument in {spec!r}") from None
    if fam == "cyclic":
        return cyclic(value, cap)
    if fam == "abelian":
        return abelian(factors, cap)
    if fam == "dihedral":
        return dihedral(value, cap)
    if fam == "sym":
        return symmetric(value, cap)
    if fam == "alt":
        return alternating(value, cap)
    return psl2(value, cap)


def make_group(spec: str, cap: int = ORDER_CAP) -> FiniteGroup:
    G = parse_group_spec(spec, cap)
    validate(G)
    return G


def to_json(G: FiniteGroup) -> str:
    doc = {"name": G.name, "order": G.n, "table": G.table.tolist()}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> FiniteGroup:
    doc = json.loads(text)
    table = np.asarray(doc["table"], dtype=np.int32)
    if table.shape != (doc["order"], doc["order"]):
        raise ValidationError("table shape disagrees with declared order")
    G = FiniteGroup(doc["name"], table)
    validate(G)
    return G
