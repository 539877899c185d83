"""
Naive baseline: hash the blocking key, one reduce task per block.
"""
from typing import Any, Dict, Iterator, List, Sequence

from core.entities import Entity
from core.pairs import iter_entity_pairs
from engine.job import Record
from engine.keys import CompositeKey, pack_ints
from engine.partitioner import hash_partition
from matching.matcher import MatchDecision

from .base import LoadBalancingStrategy


def basic_map_emit(entity: Entity, r: int) -> Record:
    key = entity.key_bytes
    return CompositeKey(hash_partition(key, r), key, pack_ints(entity.partition, entity.id)), entity


def basic_reduce(entities: Sequence[Entity], matcher) -> Iterator[MatchDecision]:
    """Compare every pair of one full block; entities arrive in canonical order."""
    for a, b in iter_entity_pairs(entities):
        yield matcher.compare(a, b)


class BasicStrategy(LoadBalancingStrategy):
    """All entities sharing a key meet at the same reduce task."""

    name = "basic"

    def reduce_index_of(self, block_index: int) -> int:
        return hash_partition(self.bdm.block_keys[block_index].encode("utf-8"), self.config.r)

    def map_task(self, partition_index: int, entities: Sequence[Entity]) -> Iterator[Record]:
        for entity in entities:
            yield basic_map_emit(entity, self.config.r)

    def reduce_group(self, reduce_index: int, group: bytes, values: List[Entity]) -> Iterator[MatchDecision]:
        return basic_reduce(values, self.matcher)

    def expected_loads(self) -> List[int]:
        loads = [0] * self.config.r
        for b, pair_count in enumerate(self.bdm.pair_counts):
            loads[self.reduce_index_of(b)] += pair_count
        return loads

    def expected_records(self) -> List[int]:
        records = [0] * self.config.r
        for b, size in enumerate(self.bdm.sizes):
            records[self.reduce_index_of(b)] += size
        return records

    def plan_document(self) -> Dict[str, Any]:
        return {
            "strategy": self.name,
            "r": self.config.r,
            "assignments": [
                {"key": key, "reduce_index": self.reduce_index_of(b), "pair_count": self.bdm.pair_counts[b]}
                for b, key in enumerate(self.bdm.block_keys)
            ],
            "per_reduce_load": self.expected_loads(),
        }
