"""Coloring searches: brute force, random draws, descent, character reduction."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import cayleylab as cl

# exact optima from an independent enumeration over circulant eigenvalues
BRUTE_ORACLE = {
    "cyclic:2": 2.0,
    "cyclic:3": 2.0,
    "cyclic:4": 2.0,
    "cyclic:6": 2 * np.sqrt(3.0),
    "cyclic:8": 2 * np.sqrt(3.0),
    "cyclic:12": 4.0,
    "cyclic:16": 2 * np.sqrt(6.0),
}


@pytest.fixture(scope="module")
def brute(group):
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = cl.brute_force(group(spec))
        return cache[spec]

    return get


def test_brute_force_trivial():
    col = cl.brute_force(cl.cyclic(1))
    assert col.norm == 1.0 and col.signs.tolist() == [1]


@pytest.mark.parametrize("spec", sorted(BRUTE_ORACLE))
def test_brute_force_exact(spec, brute, group):
    col = brute(spec)
    assert abs(col.norm - BRUTE_ORACLE[spec]) < 1e-9
    assert col.signs[0] == 1
    cl.check_coloring(group(spec), col)


def test_brute_force_cap():
    with pytest.raises(cl.CapExceededError):
        cl.brute_force(cl.cyclic(17))


def test_random_best_of_k(group):
    G = group("cyclic:16")
    col = cl.random_best_of_k(G, 200, seed=3)
    assert col.norm <= col.mean_norm
    assert col.signs[0] == 1
    cl.check_coloring(G, col)
    # reproducible
    again = cl.random_best_of_k(G, 200, seed=3)
    assert again.norm == col.norm and np.array_equal(again.signs, col.signs)
    # non-degenerate distribution: best strictly below mean
    norms = np.array([cl.coloring_norm(G, cl.random_best_of_k(G, 1, seed=3,
                                                              _stream=t).signs)
                      for t in range(30)])
    assert col.norm < col.mean_norm - norms.std()


def test_min_le_mean_always(group):
    for seed in range(3):
        col = cl.random_best_of_k(group("alt:4"), 25, seed=seed)
        assert col.norm <= col.mean_norm + 1e-12


def test_local_search_fixed_point_at_optimum(brute, group):
    G = group("cyclic:8")
    opt = brute("cyclic:8")
    out = cl.local_search(G, opt, seed=5)
    assert out.norm == opt.norm
    assert np.array_equal(out.signs, opt.signs)


def test_local_search_improves_and_never_worsens(brute, group):
    G = group("cyclic:8")
    for seed in range(4):
        init = cl.random_best_of_k(G, 1, seed=seed)
        out = cl.local_search(G, init, seed=seed)
        assert out.norm <= init.norm + 1e-9
        cl.check_coloring(G, out)
    best = min(cl.local_search(G, cl.random_best_of_k(G, 1, seed=s), seed=s).norm
               for s in range(4))
    assert best <= brute("cyclic:8").norm * 1.10


@pytest.mark.parametrize(
    "spec", ["cyclic:4", "cyclic:8", "cyclic:16", "dihedral:4", "sym:3",
             "alt:4", "abelian:2x2x3"],
)
def test_local_search_multi_near_brute(spec, brute, group):
    G = group(spec)
    col = cl.local_search_multi(G, restarts=20, seed=0)
    assert col.norm <= brute(spec).norm * 1.10 + 1e-12
    cl.check_coloring(G, col)


def test_character_matrix_properties(group):
    G = group("abelian:2x2x3")
    chars = cl.character_matrix(G)
    n = G.n
    assert np.allclose(chars[0], np.ones(n))
    assert np.allclose(np.abs(chars), 1.0)
    # rows orthogonal: chars @ chars.conj().T = n I
    assert np.allclose(chars @ chars.conj().T, n * np.eye(n), atol=1e-10)


@pytest.mark.parametrize("spec", ["cyclic:8", "abelian:2x2x2"])
def test_reduction_identity_per_sign_vector(spec, group):
    G = group(spec)
    rng = np.random.default_rng(9)
    for _ in range(100):
        signs = 2 * rng.integers(0, 2, G.n) - 1
        linf = cl.abelian_sign_norm(G, signs)
        exact = np.linalg.svd(signs[cl.RegularRep(G).div_table].astype(float),
                              compute_uv=False)[0]
        assert abs(linf - exact) < 1e-6 * max(exact, 1.0)


def test_abelian_reduction_matches_brute_on_c2(brute, group):
    col = cl.abelian_reduction(group("cyclic:2"), seed=0, restarts=4)
    assert abs(col.norm - brute("cyclic:2").norm) < 1e-9


def test_abelian_reduction_c8(brute, group):
    G = group("cyclic:8")
    col = cl.abelian_reduction(G, seed=0, restarts=10)
    cl.check_coloring(G, col)
    assert col.norm <= 3 * np.sqrt(8.0)
    assert abs(col.norm - brute("cyclic:8").norm) < 1e-6


def test_abelian_reduction_2x2x2(group):
    G = group("abelian:2x2x2")
    col = cl.abelian_reduction(G, seed=1, restarts=10)
    assert col.discrepancy_ratio <= 3.0
    cl.check_coloring(G, col)


def test_abelian_reduction_rejects_nonabelian(group):
    with pytest.raises(cl.GroupError):
        cl.abelian_reduction(group("sym:3"))


def test_abelian_reduction_needs_factor_structure():
    # dihedral:1 is abelian (= Z2) but carries no cyclic factor metadata
    with pytest.raises(cl.GroupError, match="factor"):
        cl.abelian_reduction(cl.dihedral(1))


def test_coloring_json(group):
    col = cl.brute_force(group("cyclic:4"))
    doc = col.to_json()
    assert '"method":"brute_force"' in doc
    assert '"seed":null' in doc
    assert doc.index('"group"') < doc.index('"method"') < doc.index('"signs"')


def test_check_coloring_rejects_bad_records(group):
    G = group("cyclic:4")
    good = cl.brute_force(G)
    bad = cl.Coloring(group=G.name, method="brute_force", signs=good.signs,
                      norm=good.norm * 2)
    with pytest.raises(cl.CayleyLabError):
        cl.check_coloring(G, bad)
    flipped = cl.Coloring(group=G.name, method="x", signs=-good.signs,
                          norm=good.norm)
    with pytest.raises(cl.CayleyLabError):
        cl.check_coloring(G, flipped)


@settings(deadline=None, max_examples=30)
@given(
    spec=st.sampled_from(["cyclic:6", "dihedral:3", "abelian:2x2"]),
    data=st.data(),
)
def test_negation_symmetry_and_floor(spec, data):
    G = cl.make_group(spec)
    signs = np.array(data.draw(
        st.lists(st.sampled_from([-1, 1]), min_size=G.n, max_size=G.n)))
    a = cl.coloring_norm(G, signs)
    b = cl.coloring_norm(G, -signs)
    assert abs(a - b) < 1e-9
    assert a >= abs(signs.sum()) / np.sqrt(G.n) - 1e-9
    assert a >= abs(signs.sum()) - 1e-9  # the all-ones vector floor is exact