"""Group arithmetic, element ordering, and unit enumeration."""

import random
from math import gcd

import pytest

from diffset.arith import euler_phi
from diffset.groups import GroupSpec, is_subgroup, units

Z44 = GroupSpec([4, 4])
Z28 = GroupSpec([2, 8])
Z7 = GroupSpec([7])


def test_add_examples():
    assert Z44.add((1, 3), (3, 2)) == (0, 1)
    g = (1, 5)
    assert Z28.add(g, Z28.identity()) == g
    assert Z28.add((1, 6), (1, 2)) == (0, 0)


def test_neg_examples():
    assert Z44.neg((1, 3)) == (3, 1)
    assert Z7.neg(0) == (0,)
    assert GroupSpec([8]).neg(5) == (3,)


def test_double_examples():
    assert Z7.double(3) == (6,)
    assert Z28.double((1, 4)) == (0, 0)
    # (1,4) is not 2d for any d, while (0,0) has preimages
    images = {Z28.double(g) for g in Z28.elements()}
    assert (1, 4) not in images
    assert (0, 0) in images


def test_double_bijection_odd_order():
    for v in (7, 9, 15):
        G = GroupSpec([v])
        assert len({G.double(g) for g in G.elements()}) == v


def test_index_element_roundtrip():
    assert Z44.element_at(0) == (0, 0)
    assert Z44.index_of((3, 2)) == 14  # row-major: 3*4 + 2
    for G in (Z44, Z28, Z7, GroupSpec([2, 3, 5])):
        for i in range(G.v):
            assert G.index_of(G.element_at(i)) == i
        seen = list(G.elements())
        assert len(seen) == G.v
        assert len(set(seen)) == G.v


def test_units_examples():
    assert units(7) == [1, 2, 3, 4, 5, 6]
    assert units(8) == [1, 3, 5, 7]
    for v in range(1, 60):
        assert len(units(v)) == euler_phi(v) or v == 1
    assert len(units(1)) == 0


def test_abelian_axioms_randomized():
    rng = random.Random(20250809)
    for G in (Z44, Z28, GroupSpec([3, 4, 5]), GroupSpec([6])):
        els = list(G.elements())
        for _ in range(50):
            a, b, c = (rng.choice(els) for _ in range(3))
            assert G.add(a, b) == G.add(b, a)
            assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))
            assert G.add(a, G.neg(a)) == G.identity()
            assert G.add(a, G.identity()) == a


def test_is_cyclic():
    assert GroupSpec([12]).is_cyclic()
    assert GroupSpec([3, 4]).is_cyclic()  # coprime factors
    assert not Z28.is_cyclic()
    assert not Z44.is_cyclic()


def test_presentation_preserved():
    assert GroupSpec([2, 8]).orders == (2, 8)
    assert GroupSpec([16]).orders == (16,)
    assert GroupSpec([2, 8]) != GroupSpec([16])


def test_coerce_validation():
    with pytest.raises(ValueError):
        Z44.coerce((1, 2, 3))
    with pytest.raises(ValueError):
        Z44.coerce((4, 0))  # not reduced
    with pytest.raises(ValueError):
        Z44.coerce(3)  # int shorthand is rank-1 only
    with pytest.raises(ValueError):
        Z44.coerce_set([(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        GroupSpec([1, 4])
    assert Z7.coerce(12) == (5,)


def test_is_subgroup():
    G8 = GroupSpec([8])
    assert is_subgroup(G8, [0, 4])
    assert is_subgroup(G8, [0, 2, 4, 6])
    assert not is_subgroup(G8, [0, 3])
    assert not is_subgroup(G8, [2, 4])  # no identity


def test_json_round_trip():
    assert Z44.to_json() == [4, 4]
    assert Z44.element_to_json((3, 2)) == [3, 2]
    assert Z7.element_to_json(5) == 5
