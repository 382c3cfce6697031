import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cartdec.blocks import (
    Partition,
    all_block_systems,
    block_system_from_seed,
    minimal_invariant_partition,
)
from cartdec.cartesian import set_partitions
from cartdec.group import PermGroup
from cartdec.perm import Perm

from conftest import small_groups


def brute_block_systems(G):
    out = set()
    for parts in set_partitions(range(G.degree)):
        P = Partition.from_blocks(G.degree, parts)
        if P.is_invariant(G):
            out.add(P)
    return out


@settings(max_examples=40, deadline=None)
@given(small_groups(n_min=2, n_max=7))
def test_all_block_systems_against_bruteforce(G):
    assume(G.is_transitive())
    systems, truncated = all_block_systems(G)
    assert not truncated
    assert set(systems) == brute_block_systems(G)
    assert len(systems) == len(set(systems))


@settings(max_examples=40, deadline=None)
@given(small_groups(n_min=3, n_max=7), st.integers(1, 6))
def test_seed_system_is_finest(G, y):
    assume(G.is_transitive())
    y = y % (G.degree - 1) + 1
    P = block_system_from_seed(G, 0, y)
    assert P.is_invariant(G) and P.block_of(0) == P.block_of(y)
    for Q in brute_block_systems(G):
        if Q.block_of(0) == Q.block_of(y):
            assert P.refines(Q)


def test_cyclic_counts():
    for n, expected in [(4, 3), (6, 4), (12, 6)]:
        C = PermGroup([Perm.from_cycles(n, [list(range(n))])])
        systems, _ = all_block_systems(C)
        assert len(systems) == expected


def test_product_action_is_primitive_when_component_is():
    # S3 wr S2 on 9 points: the component S3 on 3 points is primitive and not regular
    from cartdec.products import WreathProduct

    S3 = PermGroup([Perm([1, 2, 0]), Perm([1, 0, 2])])
    W = WreathProduct(S3, PermGroup([Perm([1, 0])])).product_group()
    systems, _ = all_block_systems(W)
    assert len(systems) == 2


def test_budget_truncates():
    C = PermGroup([Perm.from_cycles(12, [list(range(12))])])
    systems, truncated = all_block_systems(C, budget=3)
    assert truncated and len(systems) == 3
    assert all_block_systems(C, budget=0) == ([], True)


def test_intransitive_rejected():
    G = PermGroup([Perm([1, 0, 2])])
    with pytest.raises(ValueError):
        all_block_systems(G)
    with pytest.raises(ValueError):
        block_system_from_seed(G, 0, 1)


def test_partition_lattice():
    P = Partition.from_blocks(6, [[0, 1], [2, 3], [4, 5]])
    Q = Partition.from_blocks(6, [[0, 2], [1, 3], [4], [5]])
    assert P.meet(Q).num_blocks == 6
    assert P.join(Q) == Partition.from_blocks(6, [[0, 1, 2, 3], [4, 5]])
    assert P.meet(Q).refines(P) and P.refines(P.join(Q))
    assert Partition(6, [5, 5, 1, 1, 0, 0]) == P
    assert P.block_size() == 2 and Q.block_size() is None
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [[0], [0, 1, 2]])
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [[0], [1]])


def test_minimal_invariant_partition_of_set():
    C = PermGroup([Perm.from_cycles(6, [list(range(6))])])
    P = minimal_invariant_partition(C, [0, 2, 4])
    assert P.blocks == [(0, 2, 4), (1, 3, 5)]
    assert np.array_equal(P.labels, [0, 1, 0, 1, 0, 1])


def test_set_partition_counts_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
