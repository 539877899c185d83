import random

import pytest

from core import (
    Block,
    DataError,
    Entity,
    Pair,
    canonical_block_order,
    enumerate_block_pairs,
    pairs_in_block,
    validate_partitions,
)
from tests.helpers import make_partitions, random_partitions


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 0), (4, 6), (1000, 499500)])
def test_pairs_in_block(n, expected):
    assert pairs_in_block(n) == expected


def _block(size, key="k"):
    return Block.from_entities(key, [Entity(i, 0, key) for i in range(size)])


def test_enumerate_singleton_block_is_empty():
    assert enumerate_block_pairs(_block(1)) == []


def test_enumerate_three_members_row_major():
    block = Block.from_entities("k", [Entity(12, 1, "k"), Entity(10, 0, "k"), Entity(11, 0, "k")])
    assert block.member_ids == (10, 11, 12)
    assert enumerate_block_pairs(block) == [Pair(10, 11), Pair(10, 12), Pair(11, 12)]


def test_enumerate_matches_nested_loops():
    block = _block(5)
    ids = block.member_ids
    expected = [Pair(ids[x], ids[y]) for x in range(5) for y in range(x + 1, 5)]
    pairs = enumerate_block_pairs(block)
    assert pairs == expected
    assert len(set(pairs)) == 10


def test_every_pair_exactly_once_up_to_fifty():
    for n in range(51):
        pairs = enumerate_block_pairs(_block(n))
        assert len(pairs) == pairs_in_block(n)
        unordered = {frozenset((p.a, p.b)) for p in pairs}
        assert len(unordered) == len(pairs)
        assert all(p.a < p.b for p in pairs)


def test_canonical_block_order_sorts_keys():
    partitions = make_partitions([["b", "a", "a"]])
    blocks = canonical_block_order(partitions)
    assert [b.key for b in blocks] == ["a", "b"]
    assert [len(b) for b in blocks] == [2, 1]


def test_canonical_block_order_empty():
    assert canonical_block_order([[], []]) == []


def test_canonical_block_order_uses_byte_order():
    partitions = make_partitions([["é", "z", "Z"]])
    assert [b.key for b in canonical_block_order(partitions)] == ["Z", "z", "é"]


def test_blocks_partition_the_entity_set():
    partitions = random_partitions(random.Random(3), 1000, 60, 3)
    blocks = canonical_block_order(partitions)
    members = [e.id for block in blocks for e in block.members]
    assert len(members) == len(set(members))
    assert set(members) == {e.id for p in partitions for e in p}


def test_canonical_order_is_stable():
    partitions = random_partitions(random.Random(4), 300, 20, 4)
    assert canonical_block_order(partitions) == canonical_block_order(partitions)


def test_block_rejects_foreign_key():
    with pytest.raises(DataError):
        Block("a", (Entity(0, 0, "a"), Entity(1, 0, "b")))


def test_block_rejects_unordered_members():
    with pytest.raises(DataError):
        Block("a", (Entity(1, 0, "a"), Entity(0, 0, "a")))


def test_validate_partitions_rejects_duplicates():
    partitions = [[Entity(0, 0, "a")], [Entity(0, 1, "b")]]
    with pytest.raises(DataError, match="duplicate"):
        validate_partitions(partitions, 2)


def test_validate_partitions_rejects_misfiled_entity():
    with pytest.raises(DataError, match="partition"):
        validate_partitions([[Entity(0, 1, "a")], []], 2)


def test_validate_partitions_rejects_wrong_m():
    with pytest.raises(DataError):
        validate_partitions([[]], 2)
