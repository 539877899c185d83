"""
Analysis job that computes the Block Distribution Matrix on the engine.
"""
import logging
from collections import Counter
from typing import Iterator, List, Sequence, Tuple

from core.entities import Entity, Partitions, validate_partitions
from engine.job import JobConfig, Record, run_job
from engine.keys import CompositeKey, pack_ints
from engine.partitioner import hash_partition

from .matrix import BlockDistributionMatrix

logger = logging.getLogger(__name__)


def _count_mapper(r: int):
    def map_task(partition_index: int, entities: Sequence[Entity]) -> Iterator[Record]:
        # Combine locally: one contribution per (key, partition)
        local = Counter(entity.key for entity in entities)
        for key in sorted(local, key=lambda k: k.encode("utf-8")):
            key_bytes = key.encode("utf-8")
            yield (
                CompositeKey(hash_partition(key_bytes, r), key_bytes, pack_ints(partition_index)),
                (partition_index, local[key]),
            )

    return map_task


def _count_reducer(m: int):
    def reduce_group(reduce_index: int, group: bytes, values: List[Tuple[int, int]]):
        counts = [0] * m
        for partition_index, count in values:
            counts[partition_index] += count
        yield group.decode("utf-8"), tuple(counts)

    return reduce_group


def compute_bdm(partitions: Partitions, config: JobConfig) -> BlockDistributionMatrix:
    """
    Run the analysis job and assemble the BDM.

    Args:
        partitions: Input partitions, exactly config.m of them
        config: Job shape; the analysis job uses its r and worker_count too

    Returns:
        BlockDistributionMatrix in canonical block order
    """
    validate_partitions(partitions, config.m)
    result = run_job(_count_mapper(config.r), _count_reducer(config.m), partitions, config)

    rows = [row for index in range(config.r) for row in result.outputs[index]]
    bdm = BlockDistributionMatrix.from_rows(rows, config.m)
    logger.info(f"BDM computed: {len(bdm)} blocks, {bdm.entity_total} entities, P={bdm.total_pairs}")
    return bdm
