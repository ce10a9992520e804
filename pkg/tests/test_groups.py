import itertools
import json
import random

import numpy as np
import pytest

from brauerkit.errors import NotAGroup, NotAnAction
from brauerkit.groups import (AbelianInvariants, abelianization, corpus_groups, cyclic_group,
                              derived_subgroup, dihedral_group, direct_product,
                              group_from_json, group_from_permutations, module_from_json,
                              quaternion_group, random_cyclic_action, random_module,
                              symmetric_group, trivial_module)


def test_abelian_invariants_normalize():
    assert AbelianInvariants(0, (2, 3)).torsion == (6,)
    assert AbelianInvariants(0, (4, 2, 1)).torsion == (2, 4)
    assert str(AbelianInvariants(1, (2,))) == "Z x Z/2"
    assert AbelianInvariants().is_zero


@pytest.mark.parametrize("G", corpus_groups(), ids=lambda G: G.name)
def test_corpus_groups_are_groups(G):
    G.validate()
    orders = {"Z/2xZ/2": 4, "S3": 6, "D4": 8, "Q8": 8, "A4": 12}
    if G.name in orders:
        assert G.order == orders[G.name]


def test_element_orders():
    Q = quaternion_group()
    assert sorted(Q.element_order(g) for g in Q.elements()) == [1, 2, 4, 4, 4, 4, 4, 4]
    D = dihedral_group(4)
    assert sorted(D.element_order(g) for g in D.elements()) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_subgroup_counts():
    # known subgroup counts
    assert len(symmetric_group(3).subgroups()) == 6
    assert len(dihedral_group(4).subgroups()) == 10
    assert len(quaternion_group().subgroups()) == 6
    from brauerkit.groups import alternating_group_4
    assert len(alternating_group_4().subgroups()) == 10


def _brute_abelianization_order(G):
    return G.order // len(derived_subgroup(G))


@pytest.mark.parametrize("G", corpus_groups(), ids=lambda G: G.name)
def test_abelianization(G):
    expected = {"S3": (2,), "D4": (2, 2), "Q8": (2, 2), "A4": (3,), "Z/2xZ/2": (2, 2)}
    ab = abelianization(G)
    if G.name in expected:
        assert ab.torsion == expected[G.name]
    elif G.order > 1:
        assert ab.torsion == (G.order,)
    prod = 1
    for d in ab.torsion:
        prod *= d
    assert prod == _brute_abelianization_order(G)


def test_bad_table_rejected():
    with pytest.raises(NotAGroup):
        group_from_json({"table": [[0, 1], [0, 1]]})


def test_permutation_groups():
    G = group_from_permutations([[1, 2, 0], [1, 0, 2]])
    assert G.order == 6 and not G.is_abelian()
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.is_abelian() and P.order == 6


def test_json_round_trip():
    G = symmetric_group(3)
    G2 = group_from_json(json.loads(json.dumps(G.to_json())))
    assert G2.table == G.table
    M = random_module(G, 3, random.Random(1))
    M2 = module_from_json(G2, json.loads(json.dumps(M.to_json())))
    assert all(np.array_equal(a, b) for a, b in zip(M.action, M2.action))


def test_module_from_generators_and_bad_action():
    G = cyclic_group(4)
    M = module_from_json(G, {"rank": 1, "action": {"1": [[-1]]}})
    assert [int(A[0, 0]) for A in M.action] == [1, -1, 1, -1]
    with pytest.raises(NotAnAction):
        module_from_json(cyclic_group(3), {"rank": 1, "action": {"1": [[-1]]}})


def test_random_cyclic_action_has_order_dividing_n():
    rng = random.Random(5)
    for n in range(1, 9):
        for rank in (1, 2, 3):
            S = random_cyclic_action(n, rank, rng)
            P = np.eye(rank, dtype=object)
            for _ in range(n):
                P = P.dot(S)
            assert np.array_equal(P, np.eye(rank, dtype=object))


def test_random_modules_are_actions():
    rng = random.Random(2)
    for G in corpus_groups():
        random_module(G, 3, rng, rng.choice([0, 4])).validate()


def test_trivial_module():
    M = trivial_module(cyclic_group(3), 2, 5)
    assert M.rank == 2 and M.modulus == 5
    assert all(np.array_equal(A, np.eye(2, dtype=object)) for A in M.action)


def test_generators_generate():
    for G in corpus_groups():
        assert G.closure(G.generators) == frozenset(G.elements())


def test_all_pairs_commute_in_abelian():
    G = direct_product(cyclic_group(2), cyclic_group(2))
    assert all(G.mul(a, b) == G.mul(b, a) for a, b in itertools.product(G.elements(), repeat=2))
