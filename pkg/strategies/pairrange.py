"""
PairRange: number all P pairs globally and give every reduce task one
contiguous range of pair indices.

Pairs of block b are numbered row-major over the upper triangle of its
canonical member order and shifted by the BDM offset of b, so pair (x, y)
of a block with n members has index offsets[b] + x*n - x(x+1)/2 + (y-x-1).
"""
import logging
from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass
from math import isqrt
from typing import Any, Dict, FrozenSet, Iterator, List, Sequence, Tuple

from bdm.matrix import BlockDistributionMatrix
from core.entities import Entity
from core.errors import ConfigurationError, InvariantViolation, StalePlanError
from engine.job import Record
from engine.keys import CompositeKey, pack_ints
from matching.matcher import MatchDecision

from .base import LoadBalancingStrategy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RangeTable:
    """r half-open ranges [s_k, e_k) of width w = ceil(P / r) covering [0, P)."""

    total_pairs: int
    r: int
    width: int
    boundaries: Tuple[Tuple[int, int], ...]

    def range_of(self, pair_index: int) -> int:
        if not 0 <= pair_index < self.total_pairs:
            raise InvariantViolation(f"pair index {pair_index} outside [0, {self.total_pairs})")
        return pair_index // self.width

    def to_dict(self) -> Dict[str, Any]:
        return {
            "strategy": "pairrange",
            "total_pairs": self.total_pairs,
            "r": self.r,
            "width": self.width,
            "boundaries": [list(bounds) for bounds in self.boundaries],
        }


@dataclass(frozen=True)
class PairCoordinate:
    block_index: int
    x: int
    y: int


def compute_ranges(total_pairs: int, r: int) -> RangeTable:
    """
    Divide [0, P) into r contiguous ranges.

    Args:
        total_pairs: P
        r: Number of reduce tasks

    Returns:
        RangeTable; trailing ranges are empty when P < r * w
    """
    if total_pairs < 0:
        raise ConfigurationError(f"P must be >= 0, got {total_pairs}")
    if r < 1:
        raise ConfigurationError(f"r must be >= 1, got {r}")
    width = -(-total_pairs // r)
    boundaries = tuple(
        (min(k * width, total_pairs), min((k + 1) * width, total_pairs)) for k in range(r)
    )
    return RangeTable(total_pairs, r, width, boundaries)


def _row_start(x: int, n: int) -> int:
    return x * n - x * (x + 1) // 2


def _row_of(local_index: int, n: int) -> int:
    """Row x with _row_start(x) <= local_index < _row_start(x + 1)."""
    root = isqrt((2 * n - 1) ** 2 - 8 * local_index)
    x = max(0, (2 * n - 1 - root) // 2)
    while x > 0 and _row_start(x, n) > local_index:
        x -= 1
    while _row_start(x + 1, n) <= local_index:
        x += 1
    return x


def global_pair_index(bdm: BlockDistributionMatrix, coord: PairCoordinate) -> int:
    """
    Global index of an in-block pair.

    Args:
        bdm: Block Distribution Matrix
        coord: Block index and member positions x < y

    Returns:
        Index in [0, P)
    """
    if not 0 <= coord.block_index < len(bdm):
        raise InvariantViolation(f"block index {coord.block_index} outside [0, {len(bdm)})")
    n = bdm.sizes[coord.block_index]
    if not 0 <= coord.x < coord.y < n:
        raise InvariantViolation(f"invalid pair coordinate {coord} for block of size {n}")
    return bdm.offsets[coord.block_index] + _row_start(coord.x, n) + (coord.y - coord.x - 1)


def pair_coordinate(bdm: BlockDistributionMatrix, pair_index: int) -> PairCoordinate:
    """Inverse of global_pair_index."""
    if not 0 <= pair_index < bdm.total_pairs:
        raise InvariantViolation(f"pair index {pair_index} outside [0, {bdm.total_pairs})")
    # Last block starting at or before the index; empty blocks share offsets with their successor
    b = bisect_right(bdm.offsets, pair_index) - 1
    n = bdm.sizes[b]
    local_index = pair_index - bdm.offsets[b]
    x = _row_of(local_index, n)
    y = local_index - _row_start(x, n) + x + 1
    return PairCoordinate(b, x, y)


def iter_pair_coordinates(bdm: BlockDistributionMatrix, start: int, stop: int) -> Iterator[PairCoordinate]:
    """Coordinates of the pairs with index in [start, stop), in index order."""
    if start >= stop:
        return
    coord = pair_coordinate(bdm, start)
    b, x, y = coord.block_index, coord.x, coord.y
    n = bdm.sizes[b]
    for _ in range(stop - start):
        yield PairCoordinate(b, x, y)
        y += 1
        if y == n:
            x += 1
            y = x + 1
            if y >= n:
                b += 1
                while b < len(bdm) and bdm.sizes[b] < 2:
                    b += 1
                x, y = 0, 1
                if b < len(bdm):
                    n = bdm.sizes[b]


def _first_column_at_least(offset: int, n: int, t: int, low: int, target: int) -> int:
    """Smallest x in [low, t) whose pair (x, t) has index >= target, or t."""
    high = t
    while low < high:
        mid = (low + high) // 2
        if offset + _row_start(mid, n) + (t - mid - 1) >= target:
            high = mid
        else:
            low = mid + 1
    return low


def entity_ranges(
    bdm: BlockDistributionMatrix,
    ranges: RangeTable,
    block_index: int,
    position: int,
) -> FrozenSet[int]:
    """
    Ranges holding at least one pair of the entity at `position`.

    The entity's pairs form one contiguous row segment (position, y) and a
    column (x, position) whose indices grow with x; the column is walked
    range by range, jumping with a binary search.

    Args:
        bdm: Block Distribution Matrix
        ranges: Range table
        block_index: Block of the entity
        position: Canonical position of the entity in its block

    Returns:
        Set of range indices
    """
    n = bdm.sizes[block_index]
    if not 0 <= position < n:
        raise InvariantViolation(f"position {position} outside block {block_index} of size {n}")
    if n < 2:
        return frozenset()

    offset = bdm.offsets[block_index]
    width = ranges.width
    touched = set()

    if position < n - 1:
        first = offset + _row_start(position, n)
        last = first + (n - position - 2)
        touched.update(range(first // width, last // width + 1))

    x = 0
    while x < position:
        k = (offset + _row_start(x, n) + (position - x - 1)) // width
        touched.add(k)
        x = _first_column_at_least(offset, n, position, x + 1, (k + 1) * width)
    return frozenset(touched)


def assign_block_positions(
    bdm: BlockDistributionMatrix,
    partition_index: int,
    entities: Sequence[Entity],
) -> Dict[int, Tuple[int, int]]:
    """
    Canonical (block_index, position) of every entity of one input partition.

    Entities of partition i come after those of partitions < i and are
    ordered by id among themselves.
    """
    by_key: Dict[str, List[Entity]] = defaultdict(list)
    for entity in entities:
        by_key[entity.key].append(entity)

    positions = {}
    for key, members in by_key.items():
        b = bdm.index_of(key)
        if len(members) != bdm.counts[b][partition_index]:
            raise StalePlanError(
                f"partition {partition_index} holds {len(members)} entities of {key!r}, "
                f"BDM counts {bdm.counts[b][partition_index]}"
            )
        base = bdm.partition_offset(b, partition_index)
        for rank, entity in enumerate(sorted(members, key=lambda e: e.id)):
            positions[entity.id] = (b, base + rank)
    return positions


def pairrange_map_emit(
    entity: Entity,
    bdm: BlockDistributionMatrix,
    ranges: RangeTable,
    position: int,
) -> List[Record]:
    """
    One record per range the entity takes part in.

    Args:
        entity: Entity to emit
        bdm: Broadcast BDM
        ranges: Range table
        position: Canonical position of the entity in its block

    Returns:
        Records keyed by (k, k, (block_index, position))
    """
    b = bdm.index_of(entity.key)
    return [
        (CompositeKey(k, pack_ints(k), pack_ints(b, position)), (b, position, entity))
        for k in sorted(entity_ranges(bdm, ranges, b, position))
    ]


def pairrange_reduce(
    k: int,
    values: Sequence[Tuple[int, int, Entity]],
    bdm: BlockDistributionMatrix,
    ranges: RangeTable,
    matcher,
) -> Iterator[MatchDecision]:
    """
    Compare exactly the pairs whose global index lies in range k.

    Args:
        k: Range index
        values: (block_index, position, entity) sorted by (block_index, position)
        bdm: Broadcast BDM
        ranges: Range table
        matcher: Pair comparator

    Returns:
        Iterator over MatchDecisions
    """
    delivered = {(b, position): entity for b, position, entity in values}
    start, stop = ranges.boundaries[k]
    for coord in iter_pair_coordinates(bdm, start, stop):
        a = delivered.get((coord.block_index, coord.x))
        b = delivered.get((coord.block_index, coord.y))
        if a is None or b is None:
            raise InvariantViolation(f"range {k} needs pair {coord} but an endpoint was not delivered")
        yield matcher.compare(a, b)


class PairRangeStrategy(LoadBalancingStrategy):
    """Every reduce task computes one equally wide range of pair indices."""

    name = "pairrange"

    def __init__(self, bdm: BlockDistributionMatrix, config, matcher=None):
        super().__init__(bdm, config, matcher)
        self.ranges = compute_ranges(bdm.total_pairs, config.r)
        logger.info(f"PairRange table: P={self.ranges.total_pairs} r={config.r} width={self.ranges.width}")

    def map_task(self, partition_index: int, entities: Sequence[Entity]) -> Iterator[Record]:
        positions = assign_block_positions(self.bdm, partition_index, entities)
        for entity in entities:
            _, position = positions[entity.id]
            yield from pairrange_map_emit(entity, self.bdm, self.ranges, position)

    def reduce_group(self, reduce_index: int, group: bytes, values: List[Tuple[int, int, Entity]]) -> Iterator[MatchDecision]:
        return pairrange_reduce(reduce_index, values, self.bdm, self.ranges, self.matcher)

    def expected_loads(self) -> List[int]:
        return [stop - start for start, stop in self.ranges.boundaries]

    def expected_records(self) -> List[int]:
        records = [0] * self.config.r
        for b, n in enumerate(self.bdm.sizes):
            if n < 2:
                continue
            for position in range(n):
                for k in entity_ranges(self.bdm, self.ranges, b, position):
                    records[k] += 1
        return records

    def plan_document(self) -> Dict[str, Any]:
        return self.ranges.to_dict()
