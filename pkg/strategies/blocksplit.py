"""
BlockSplit: split oversized blocks along the input partitions into match
tasks and assign the tasks to reduce tasks greedily, largest first.
"""
import heapq
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from bdm.matrix import BlockDistributionMatrix, average_workload
from core.entities import Entity
from core.errors import ConfigurationError, InvariantViolation, StalePlanError
from core.pairs import iter_entity_pairs, pairs_in_block
from engine.job import Record
from engine.keys import CompositeKey, pack_ints
from matching.matcher import MatchDecision

from .base import LoadBalancingStrategy

logger = logging.getLogger(__name__)

SINGLE = "single"
CROSS = "cross"

_WHOLE_CODE, _SINGLE_CODE, _CROSS_CODE = 0, 1, 2

TaskId = Tuple[int, Optional[int], Optional[int]]


@dataclass(frozen=True)
class MatchTask:
    """
    One unit of reduce-side work.

    i is None for the single task of an unsplit block; j is set only for
    cross tasks between sub-blocks i < j.
    """

    block_index: int
    i: Optional[int]
    j: Optional[int]
    pair_count: int
    assigned_reduce: int = -1

    @property
    def kind(self) -> str:
        return CROSS if self.j is not None else SINGLE

    @property
    def task_id(self) -> TaskId:
        return (self.block_index, self.i, self.j)

    @property
    def group(self) -> bytes:
        if self.i is None:
            code = _WHOLE_CODE
        else:
            code = _CROSS_CODE if self.j is not None else _SINGLE_CODE
        return pack_ints(self.block_index, code, self.i or 0, self.j or 0)

    @property
    def sort_key(self) -> Tuple[int, int, int, int, int]:
        # pair_count desc, block asc, single before cross, then (i, j)
        return (
            -self.pair_count,
            self.block_index,
            1 if self.kind == CROSS else 0,
            -1 if self.i is None else self.i,
            -1 if self.j is None else self.j,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "block_index": self.block_index,
            "kind": self.kind,
            "i": self.i,
            "j": self.j,
            "pair_count": self.pair_count,
            "assigned_reduce": self.assigned_reduce,
        }


@dataclass(frozen=True)
class MatchTaskPlan:
    """Match tasks with their reduce assignment and the resulting loads."""

    tasks: Tuple[MatchTask, ...]
    per_reduce_load: Tuple[int, ...]
    split_blocks: FrozenSet[int]
    unsplittable_blocks: Tuple[int, ...] = ()
    _by_id: Dict[TaskId, MatchTask] = field(init=False, repr=False, compare=False)
    _by_group: Dict[bytes, MatchTask] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {task.task_id: task for task in self.tasks})
        object.__setattr__(self, "_by_group", {task.group: task for task in self.tasks})

    @property
    def r(self) -> int:
        return len(self.per_reduce_load)

    def find(self, block_index: int, i: Optional[int] = None, j: Optional[int] = None) -> Optional[MatchTask]:
        return self._by_id.get((block_index, i, j))

    def task_for_group(self, group: bytes) -> MatchTask:
        try:
            return self._by_group[group]
        except KeyError:
            raise InvariantViolation(f"reduce group {group.hex()} matches no task of the plan")

    def to_dict(self, bdm: Optional[BlockDistributionMatrix] = None) -> Dict[str, Any]:
        tasks = []
        for task in self.tasks:
            entry = task.to_dict()
            if bdm is not None:
                entry["key"] = bdm.block_keys[task.block_index]
            tasks.append(entry)
        return {
            "strategy": "blocksplit",
            "r": self.r,
            "tasks": tasks,
            "per_reduce_load": list(self.per_reduce_load),
            "split_blocks": sorted(self.split_blocks),
            "unsplittable_blocks": list(self.unsplittable_blocks),
        }


def _block_tasks(bdm: BlockDistributionMatrix, b: int, split: bool) -> List[MatchTask]:
    if not split:
        return [MatchTask(b, None, None, bdm.pair_counts[b])]

    row = bdm.counts[b]
    nonempty = [i for i, count in enumerate(row) if count > 0]
    tasks = [MatchTask(b, i, None, pairs_in_block(row[i])) for i in nonempty]
    for x, i in enumerate(nonempty):
        for j in nonempty[x + 1:]:
            tasks.append(MatchTask(b, i, j, row[i] * row[j]))
    return [task for task in tasks if task.pair_count > 0]


def blocksplit_plan(bdm: BlockDistributionMatrix, m: int, r: int) -> MatchTaskPlan:
    """
    Build the BlockSplit plan.

    A block is split when its pair count exceeds P / r. Tasks are sorted by
    pair count (descending, deterministic tie-break) and each goes to the
    currently least-loaded reduce task, lowest index on ties.

    Args:
        bdm: Block Distribution Matrix
        m: Number of input partitions (must equal bdm.m)
        r: Number of reduce tasks

    Returns:
        MatchTaskPlan
    """
    if m != bdm.m:
        raise ConfigurationError(f"plan requested for m={m} but BDM has m={bdm.m}")
    if r < 1:
        raise ConfigurationError(f"r must be >= 1, got {r}")

    threshold = average_workload(bdm, r)
    tasks: List[MatchTask] = []
    split_blocks = set()
    unsplittable = []
    for b, pair_count in enumerate(bdm.pair_counts):
        if pair_count == 0:
            continue
        split = pair_count > threshold
        block_tasks = _block_tasks(bdm, b, split)
        if split:
            split_blocks.add(b)
            if max(task.pair_count for task in block_tasks) > threshold:
                unsplittable.append(b)
        tasks.extend(block_tasks)

    tasks.sort(key=lambda task: task.sort_key)

    loads = [0] * r
    heap = [(0, k) for k in range(r)]
    assigned = []
    for task in tasks:
        _, k = heapq.heappop(heap)
        assigned.append(replace(task, assigned_reduce=k))
        loads[k] += task.pair_count
        heapq.heappush(heap, (loads[k], k))

    logger.info(
        f"BlockSplit plan: {len(assigned)} tasks, {len(split_blocks)} split blocks, "
        f"max load {max(loads)} vs average {threshold:.1f}"
    )
    return MatchTaskPlan(
        tasks=tuple(assigned),
        per_reduce_load=tuple(loads),
        split_blocks=frozenset(split_blocks),
        unsplittable_blocks=tuple(unsplittable),
    )


def _record(task: MatchTask, side: int, entity: Entity) -> Record:
    order = pack_ints(side, entity.partition, entity.id)
    return CompositeKey(task.assigned_reduce, task.group, order), entity


def blocksplit_map_emit(entity: Entity, bdm: BlockDistributionMatrix, plan: MatchTaskPlan) -> List[Record]:
    """
    Route one entity to every match task it takes part in.

    Args:
        entity: Entity to emit
        bdm: BDM the plan was built from
        plan: BlockSplit plan

    Returns:
        Records keyed by (assigned reduce, task group, (side, partition, id))
    """
    b = bdm.index_of(entity.key)
    i = entity.partition
    row = bdm.counts[b]
    if i >= bdm.m or row[i] == 0:
        raise StalePlanError(f"BDM has no entity of block {entity.key!r} in partition {i}")

    if b not in plan.split_blocks:
        task = plan.find(b)
        if task is None:
            if bdm.pair_counts[b] > 0:
                raise StalePlanError(f"plan has no task for block {entity.key!r}")
            return []
        return [_record(task, 0, entity)]

    records = []
    single = plan.find(b, i)
    if single is not None:
        records.append(_record(single, 0, entity))
    for j, count in enumerate(row):
        if j == i or count == 0:
            continue
        low, high = min(i, j), max(i, j)
        task = plan.find(b, low, high)
        if task is None:
            raise StalePlanError(f"plan has no cross task {low}x{high} for block {entity.key!r}")
        records.append(_record(task, 0 if i == low else 1, entity))
    return records


def blocksplit_reduce(
    task: MatchTask,
    entities: Sequence[Entity],
    bdm: BlockDistributionMatrix,
    matcher,
) -> Iterator[MatchDecision]:
    """
    Compare the pairs of one match task.

    Args:
        task: Match task the group belongs to
        entities: Entities routed to the task, sorted by (side, partition, id)
        bdm: Broadcast BDM
        matcher: Pair comparator

    Returns:
        Iterator over MatchDecisions; exactly task.pair_count of them
    """
    row = bdm.counts[task.block_index]
    if task.kind == CROSS:
        left = [e for e in entities if e.partition == task.i]
        right = [e for e in entities if e.partition == task.j]
        if len(left) != row[task.i] or len(right) != row[task.j] or len(left) + len(right) != len(entities):
            raise InvariantViolation(
                f"cross task {task.task_id} received {len(left)}+{len(right)} of {len(entities)} entities, "
                f"BDM expects {row[task.i]}+{row[task.j]}"
            )
        for a in left:
            for b in right:
                yield matcher.compare(a, b)
        return

    expected = bdm.sizes[task.block_index] if task.i is None else row[task.i]
    if len(entities) != expected:
        raise InvariantViolation(f"task {task.task_id} received {len(entities)} entities, BDM expects {expected}")
    if task.i is not None and any(e.partition != task.i for e in entities):
        raise InvariantViolation(f"single task {task.task_id} received an entity from another partition")
    for a, b in iter_entity_pairs(entities):
        yield matcher.compare(a, b)


class BlockSplitStrategy(LoadBalancingStrategy):
    """Sub-blocks follow the m input partitions."""

    name = "blocksplit"

    def __init__(self, bdm: BlockDistributionMatrix, config, matcher=None):
        super().__init__(bdm, config, matcher)
        self.plan = blocksplit_plan(bdm, config.m, config.r)

    def map_task(self, partition_index: int, entities: Sequence[Entity]) -> Iterator[Record]:
        for entity in entities:
            yield from blocksplit_map_emit(entity, self.bdm, self.plan)

    def reduce_group(self, reduce_index: int, group: bytes, values: List[Entity]) -> Iterator[MatchDecision]:
        task = self.plan.task_for_group(group)
        if task.assigned_reduce != reduce_index:
            raise InvariantViolation(f"task {task.task_id} reached reduce {reduce_index}, planned {task.assigned_reduce}")
        return blocksplit_reduce(task, values, self.bdm, self.matcher)

    def expected_loads(self) -> List[int]:
        return list(self.plan.per_reduce_load)

    def expected_records(self) -> List[int]:
        records = [0] * self.config.r
        for task in self.plan.tasks:
            row = self.bdm.counts[task.block_index]
            if task.i is None:
                received = self.bdm.sizes[task.block_index]
            elif task.j is None:
                received = row[task.i]
            else:
                received = row[task.i] + row[task.j]
            records[task.assigned_reduce] += received
        return records

    def plan_document(self) -> Dict[str, Any]:
        return self.plan.to_dict(self.bdm)

    def notes(self) -> Dict[str, Any]:
        return {
            "split_blocks": len(self.plan.split_blocks),
            "unsplittable_blocks": [self.bdm.block_keys[b] for b in self.plan.unsplittable_blocks],
        }
