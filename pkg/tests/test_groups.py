"""Group construction, validation, and structural data."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import cayleylab as cl

ALL_SPECS = [
    "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:7", "cyclic:12",
    "cyclic:24", "abelian:2x2", "abelian:2x2x3", "abelian:2x2x2x2",
    "dihedral:1", "dihedral:3", "dihedral:4", "dihedral:8",
    "sym:1", "sym:2", "sym:3", "sym:4", "sym:5",
    "alt:3", "alt:4", "alt:5", "psl2:5", "psl2:7",
]


@pytest.mark.parametrize("spec", ALL_SPECS)
def test_families_validate(spec, group):
    G = group(spec)
    cl.validate(G)
    assert G.identity == 0
    assert np.array_equal(np.sort(G.inverse), np.arange(G.n))


def test_expected_orders(group):
    assert group("cyclic:4").n == 4
    assert group("abelian:2x2x3").n == 12
    assert group("dihedral:4").n == 8
    assert group("sym:5").n == 120
    assert group("alt:5").n == 60
    assert group("psl2:5").n == 60
    assert group("psl2:7").n == 168


def test_multiply_laws(group):
    G = group("cyclic:4")
    assert cl.multiply(G, 1, 3) == 0
    for g in range(G.n):
        assert cl.multiply(G, G.identity, g) == g
        assert cl.multiply(G, g, int(G.inverse[g])) == G.identity
    with pytest.raises(cl.GroupError):
        cl.multiply(G, 0, 4)


def test_cyclic_commutes(group):
    G = group("cyclic:12")
    assert np.array_equal(G.table, G.table.T)


def test_conjugacy_classes(group):
    cc = group("sym:3").classes
    assert sorted(cc.sizes) == [1, 2, 3]
    assert sorted(group("sym:4").classes.sizes) == [1, 3, 6, 6, 8]
    assert len(group("dihedral:4").classes.classes) == 5
    assert len(group("alt:5").classes.classes) == 5
    assert group("abelian:2x2").classes.sizes == [1, 1, 1, 1]


def test_psl2_matches_alt5_class_data(group):
    a = sorted(group("alt:5").classes.sizes)
    b = sorted(group("psl2:5").classes.sizes)
    assert a == b


@pytest.mark.parametrize("spec", ALL_SPECS)
def test_class_equation(spec, group):
    G = group(spec)
    cc = G.classes
    assert sum(cc.sizes) == G.n
    assert all(G.n % s == 0 for s in cc.sizes)
    assert cc.sizes[0] == 1 and cc.classes[0][0] == G.identity
    # closure under conjugation
    for K in cc.classes:
        conj = G.table[G.table[:, K[0]], G.inverse]
        assert np.array_equal(np.unique(conj), K)


def test_square_element(group):
    assert cl.square_element(group("cyclic:2"), 1) == 0
    c3 = group("cyclic:3")
    sq = [cl.square_element(c3, g) for g in range(3)]
    assert sorted(sq) == [0, 1, 2]  # squaring bijective in odd order
    d4 = group("dihedral:4")
    for refl in range(4, 8):
        assert cl.square_element(d4, refl) == 0


def test_order_caps():
    with pytest.raises(cl.CapExceededError):
        cl.alternating(8)
    with pytest.raises(cl.CapExceededError):
        cl.symmetric(8)
    with pytest.raises(cl.CapExceededError):
        cl.psl2(23)
    assert cl.symmetric(7, cap=5040).n == 5040


def test_family_argument_errors():
    with pytest.raises(cl.GroupError):
        cl.psl2(4)  # not prime
    with pytest.raises(cl.GroupError):
        cl.psl2(2)  # not odd
    with pytest.raises(cl.GroupError):
        cl.abelian([2, 1])
    with pytest.raises(cl.GroupError):
        cl.cyclic(0)
    with pytest.raises(cl.GroupError):
        cl.parse_group_spec("nosuch:4")
    with pytest.raises(cl.GroupError):
        cl.parse_group_spec("cyclic:x")


def test_from_generators_cyclic4_matches():
    G = cl.from_generators([(1, 2, 3, 0)], name="gen-c4")
    assert np.array_equal(G.table, cl.cyclic(4).table)


def test_from_generators_errors():
    with pytest.raises(cl.GroupError):
        cl.from_generators([(0, 1), (0, 1, 2)])
    with pytest.raises(cl.GroupError):
        cl.from_generators([(0, 0, 1)])
    with pytest.raises(cl.CapExceededError):
        cl.from_generators([tuple(range(1, 8)) + (0,)], cap=5)


def test_simplicity(group):
    assert cl.is_simple(group("alt:5"))
    assert cl.is_simple(group("psl2:5"))
    assert cl.is_simple(group("psl2:7"))
    assert cl.is_simple(group("cyclic:7"))  # prime order
    assert not cl.is_simple(group("alt:4"))
    assert not cl.is_simple(group("sym:4"))
    assert not cl.is_simple(group("cyclic:12"))
    assert not cl.is_simple(group("cyclic:1"))


def test_alt6_simplicity_witness(group):
    # union-of-classes search at n = 360: no proper nontrivial normal subgroup
    assert cl.is_simple(group("alt:6"))


def test_commutator_subgroup_orders(group):
    assert cl.commutator_subgroup_order(group("sym:3")) == 3
    assert cl.commutator_subgroup_order(group("sym:4")) == 12
    assert cl.commutator_subgroup_order(group("alt:4")) == 4
    assert cl.commutator_subgroup_order(group("alt:5")) == 60
    assert cl.commutator_subgroup_order(group("cyclic:12")) == 1
    assert cl.commutator_subgroup_order(group("dihedral:4")) == 2


def test_json_round_trip(group):
    G = group("dihedral:3")
    H = cl.from_json(cl.to_json(G))
    assert H.name == G.name and np.array_equal(H.table, G.table)


def test_json_rejects_corrupt_table(group):
    G = group("cyclic:4")
    doc = cl.to_json(G)
    bad = doc.replace('"table":[[0,1,2,3]', '"table":[[0,1,3,2]')
    assert bad != doc
    with pytest.raises(cl.ValidationError):
        cl.from_json(bad)


# order-5 Latin square with two-sided identity 0 that is not a group table:
# (1*1)*2 = 0*2 = 2 but 1*(1*2) = 1*3 = 4
_NONASSOC_LOOP = np.array(
    [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
)


def test_validate_catches_nonassociative_loop():
    with pytest.raises(cl.ValidationError, match="associativity"):
        cl.validate(cl.FiniteGroup("loop:5", _NONASSOC_LOOP))


def test_validate_catches_broken_latin(group):
    t = group("cyclic:5").table.copy()
    t[2, 2] = t[2, 3]
    with pytest.raises(cl.ValidationError, match="Latin"):
        cl.validate(cl.FiniteGroup("broken", t))


@settings(deadline=None, max_examples=40)
@given(
    spec=st.sampled_from(["cyclic:6", "dihedral:4", "sym:3", "abelian:2x2x3"]),
    data=st.data(),
)
def test_group_identities_property(spec, data):
    G = cl.make_group(spec)
    n = G.n
    g = data.draw(st.integers(0, n - 1))
    h = data.draw(st.integers(0, n - 1))
    gh = cl.multiply(G, g, h)
    # anti-homomorphism of inversion
    assert G.inverse[gh] == cl.multiply(G, int(G.inverse[h]), int(G.inverse[g]))
    # conjugation preserves classes
    cc = G.classes
    assert cc.class_of[cl.multiply(G, cl.multiply(G, h, g), int(G.inverse[h]))] \
        == cc.class_of[g]
