import json

import pytest

import oracles
from kleenelab.algebra import find_isomorphism, interval_algebra, power_algebra, powerset_algebra, three, two
from kleenelab.catalog import kleene_algebras
from kleenelab.formats import algebra_from_dict, space_from_dict
from kleenelab.represent import represent, representation_tables, verify_representation
from kleenelab.roughsets import approximations


@pytest.mark.parametrize("K", kleene_algebras(8), ids=lambda K: K.name)
def test_every_small_algebra_is_represented(K):
    rep = represent(K)
    pairs = [rep.pair(x) for x in range(K.size)]
    assert len(set(pairs)) == K.size
    # every image really is a rough set of the saturated space
    blocks = [set(b) for b in rep.space.blocks]
    family = oracles.rough_sets(rep.space.universe, blocks)
    for p in pairs:
        lower = frozenset(rep.space.members(p.lower))
        upper = frozenset(rep.space.members(p.upper))
        assert (lower, upper) in family


def test_three_is_all_rough_sets_of_a_two_point_block():
    rep = represent(three())
    assert rep.rough_sets.size == 3
    assert rep.space.blocks == (("u0", "u0'"),)
    assert find_isomorphism(three(), rep.rough_sets) is not None


def test_two_embeds_diagonally():
    rep = represent(two())
    assert all(lo == hi for lo, hi in (rep.embedding.image_pair(x) for x in range(2)))
    # diagonal elements land on definable rough sets
    assert all(rep.pair(x).lower == rep.pair(x).upper for x in range(2))


def test_three_squared_has_the_four_element_boolean_base():
    K = power_algebra(three(), 2)
    rep = represent(K)
    assert rep.embedding.target.size == 9
    assert find_isomorphism(rep.embedding.target, interval_algebra(powerset_algebra(2))) is not None


def test_saturated_space_has_no_singleton_blocks():
    for K in kleene_algebras(8):
        assert all(len(b) >= 2 for b in represent(K).space.blocks)


def test_tables_round_trip_through_json():
    rep = represent(power_algebra(three(), 2))
    tables = json.loads(json.dumps(representation_tables(rep)))
    K = algebra_from_dict(tables["algebra"])
    space = space_from_dict(tables["space"])
    assert verify_representation(K, space, tables["map"]).ok


def test_tampered_table_is_rejected():
    rep = represent(three())
    tables = representation_tables(rep)
    m = tables["map"]
    m["a"], m["1"] = m["1"], m["a"]
    assert not verify_representation(rep.algebra, rep.space, m).ok
    del m["0"]
    assert not verify_representation(rep.algebra, rep.space, m).ok


def test_image_pairs_come_from_subsets():
    rep = represent(three())
    for x in range(3):
        p = rep.pair(x)
        # lower approximation of the witnessing subset reproduces the pair
        subset = p.lower | (p.upper & ~p.lower & -(p.upper & ~p.lower))
        assert approximations(rep.space, subset) == p
