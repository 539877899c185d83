"""
Brute-force oracles and dataset builders shared by the tests.
"""
import random
from collections import defaultdict
from typing import Iterable, List, Sequence, Set

from bdm.matrix import BlockDistributionMatrix
from core.entities import Entity, Pair


def make_partitions(keys_by_partition: Sequence[Sequence[str]], attr: str = "payload") -> List[List[Entity]]:
    """Partitions from per-partition key lists; ids are assigned in reading order."""
    partitions = []
    next_id = 0
    for index, keys in enumerate(keys_by_partition):
        partition = []
        for key in keys:
            partition.append(Entity(next_id, index, key, (f"{attr}-{key}-{next_id}",)))
            next_id += 1
        partitions.append(partition)
    return partitions


def random_partitions(rng: random.Random, n: int, distinct_keys: int, m: int) -> List[List[Entity]]:
    """Random keys, random placement, shuffled ids."""
    ids = list(range(n))
    rng.shuffle(ids)
    partitions = [[] for _ in range(m)]
    for entity_id in ids:
        partition = rng.randrange(m)
        key = f"k{rng.randrange(distinct_keys):03d}"
        partitions[partition].append(Entity(entity_id, partition, key, (f"v{rng.randrange(5)}abc",)))
    return partitions


def reshuffle(rng: random.Random, partitions: Sequence[Sequence[Entity]]) -> List[List[Entity]]:
    """Same entities (ids, keys, attrs) dealt to random partitions."""
    m = len(partitions)
    shuffled = [[] for _ in range(m)]
    for partition in partitions:
        for entity in partition:
            target = rng.randrange(m)
            shuffled[target].append(Entity(entity.id, target, entity.key, entity.attrs))
    return shuffled


def brute_force_pairs(partitions: Iterable[Iterable[Entity]]) -> Set[Pair]:
    """All within-block pairs by nested loops over canonically ordered members."""
    blocks = defaultdict(list)
    for partition in partitions:
        for entity in partition:
            blocks[entity.key].append(entity)
    pairs = set()
    for members in blocks.values():
        members.sort(key=lambda e: (e.partition, e.id))
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                pairs.add(Pair(members[x].id, members[y].id))
    return pairs


def sequential_bdm(partitions: Sequence[Sequence[Entity]]) -> BlockDistributionMatrix:
    """Counting pass without the engine."""
    m = len(partitions)
    counts = defaultdict(lambda: [0] * m)
    for index, partition in enumerate(partitions):
        for entity in partition:
            counts[entity.key][index] += 1
    return BlockDistributionMatrix.from_rows([(key, row) for key, row in counts.items()], m)


def random_bdm(rng: random.Random, max_blocks: int = 30, max_count: int = 20, max_m: int = 4) -> BlockDistributionMatrix:
    m = rng.randint(1, max_m)
    rows = [
        (f"b{b:03d}", [rng.randint(0, max_count) if rng.random() < 0.7 else 0 for _ in range(m)])
        for b in range(rng.randint(0, max_blocks))
    ]
    return BlockDistributionMatrix.from_rows(rows, m)


def compared_pairs(outputs) -> List[Pair]:
    """Pairs of every MatchDecision in a JobResult's outputs."""
    return [decision.pair for index in sorted(outputs) for decision in outputs[index]]
