"""
Domain model for entities, blocks and candidate pairs.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Set, Tuple

from .errors import DataError

Partitions = Sequence[Sequence["Entity"]]


@dataclass(frozen=True)
class Entity:
    """A record with an id, its input partition, a blocking key and an attribute payload."""

    id: int
    partition: int
    key: str
    attrs: Tuple[str, ...] = ()

    @property
    def sort_key(self) -> Tuple[int, int]:
        """Canonical in-block order: (partition, id)."""
        return (self.partition, self.id)

    @property
    def key_bytes(self) -> bytes:
        return self.key.encode("utf-8")


@dataclass(frozen=True)
class Pair:
    """Unordered candidate pair stored in canonical order (a precedes b)."""

    a: int
    b: int


@dataclass(frozen=True)
class Block:
    """All entities sharing one blocking key, in canonical order."""

    key: str
    members: Tuple[Entity, ...]

    def __post_init__(self):
        previous = None
        for entity in self.members:
            if entity.key != self.key:
                raise DataError(f"entity {entity.id} has key {entity.key!r}, not block key {self.key!r}")
            if previous is not None and entity.sort_key <= previous:
                raise DataError(f"block {self.key!r} members are not strictly ordered by (partition, id)")
            previous = entity.sort_key

    def __len__(self) -> int:
        return len(self.members)

    @property
    def member_ids(self) -> Tuple[int, ...]:
        return tuple(entity.id for entity in self.members)

    @classmethod
    def from_entities(cls, key: str, entities: Iterable[Entity]) -> "Block":
        """Build a block, sorting members into canonical order."""
        return cls(key=key, members=tuple(sorted(entities, key=lambda e: e.sort_key)))


def iter_entities(partitions: Partitions) -> Iterator[Entity]:
    """Yield every entity, partition by partition."""
    for partition in partitions:
        yield from partition


def entity_count(partitions: Partitions) -> int:
    return sum(len(partition) for partition in partitions)


def validate_partitions(partitions: Partitions, m: int) -> None:
    """
    Check that a dataset is well-formed for a job with m map partitions.

    Args:
        partitions: Input partitions of entities
        m: Declared number of map partitions

    Raises:
        DataError: On a partition count mismatch, a misfiled entity or a duplicate id
    """
    if len(partitions) != m:
        raise DataError(f"dataset has {len(partitions)} partitions but m={m}")

    seen: Set[int] = set()
    for index, partition in enumerate(partitions):
        for entity in partition:
            if entity.id < 0:
                raise DataError(f"entity id must be non-negative, got {entity.id}")
            if entity.partition != index:
                raise DataError(
                    f"entity {entity.id} declares partition {entity.partition} but is stored in partition {index}"
                )
            if entity.id in seen:
                raise DataError(f"duplicate entity id {entity.id}")
            seen.add(entity.id)


def canonical_block_order(partitions: Partitions) -> List[Block]:
    """
    Group a dataset into blocks ordered by blocking-key byte order.

    Args:
        partitions: Input partitions of entities

    Returns:
        Blocks ascending by UTF-8 key bytes, members in (partition, id) order
    """
    grouped: Dict[str, List[Entity]] = defaultdict(list)
    for entity in iter_entities(partitions):
        grouped[entity.key].append(entity)

    keys = sorted(grouped, key=lambda k: k.encode("utf-8"))
    return [Block.from_entities(key, grouped[key]) for key in keys]
