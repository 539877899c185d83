"""
Deterministic in-process MapReduce runtime.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Sequence, Tuple

from core.entities import Entity
from core.errors import ConfigurationError, DataError, InvariantViolation

from .keys import CompositeKey

logger = logging.getLogger(__name__)

Record = Tuple[CompositeKey, Any]
# A map task sees a whole input partition: (partition_index, entities) -> records
Mapper = Callable[[int, Sequence[Entity]], Iterable[Record]]
# A reducer sees one group: (reduce_index, group, values sorted by order) -> outputs
Reducer = Callable[[int, bytes, List[Any]], Iterable[Any]]
CostModel = Callable[[Any], float]


def unit_cost(output: Any) -> float:
    """Every reducer output costs one unit."""
    return 1.0


@dataclass(frozen=True)
class JobConfig:
    """Shape of a job: m map partitions, r reduce tasks, worker_count threads."""

    m: int
    r: int
    worker_count: int = 1

    def __post_init__(self):
        for name in ("m", "r", "worker_count"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class TaskMetrics:
    """Per-reduce-task workload as measured by the reduce wrapper."""

    reduce_index: int
    records_received: int
    comparisons_done: int
    cost_units: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reduce_index": self.reduce_index,
            "records_received": self.records_received,
            "comparisons_done": self.comparisons_done,
            "cost_units": self.cost_units,
        }


class JobResult(NamedTuple):
    outputs: Dict[int, List[Any]]
    metrics: List[TaskMetrics]
    records_emitted: int
    wall_time_ms: float


def _run_map_task(mapper: Mapper, index: int, partition: Sequence[Entity], r: int) -> List[Record]:
    records = []
    for key, value in mapper(index, partition):
        if not 0 <= key.reduce_index < r:
            raise InvariantViolation(
                f"map task {index} emitted key {key!r} with reduce_index outside [0, {r})"
            )
        records.append((key, value))
    return records


def _run_reduce_task(
    reducer: Reducer,
    index: int,
    records: List[Record],
    cost_model: CostModel,
) -> Tuple[List[Any], TaskMetrics]:
    # Stable sort keeps map emission order for equal (group, order) keys
    records = sorted(records, key=lambda record: (record[0].group, record[0].order))

    outputs: List[Any] = []
    cost = 0.0
    start = 0
    while start < len(records):
        group = records[start][0].group
        end = start
        while end < len(records) and records[end][0].group == group:
            end += 1
        values = [value for _, value in records[start:end]]
        for output in reducer(index, group, values):
            outputs.append(output)
            cost += cost_model(output)
        start = end

    metrics = TaskMetrics(
        reduce_index=index,
        records_received=len(records),
        comparisons_done=len(outputs),
        cost_units=cost,
    )
    return outputs, metrics


def run_job(
    mapper: Mapper,
    reducer: Reducer,
    partitions: Sequence[Sequence[Entity]],
    config: JobConfig,
    cost_model: CostModel = unit_cost,
) -> JobResult:
    """
    Execute one MapReduce job in-process.

    Map tasks run one per input partition and reduce tasks one per reduce
    index, both on a pool of config.worker_count threads. Results are
    collected by task index, so the outcome never depends on scheduling.

    Args:
        mapper: Map task function
        reducer: Group reduce function; every output counts as one comparison
        partitions: Input partitions, exactly config.m of them
        config: Job shape
        cost_model: Cost of one reducer output

    Returns:
        JobResult with outputs keyed by reduce index and per-task metrics
    """
    if len(partitions) != config.m:
        raise DataError(f"job expects {config.m} partitions, got {len(partitions)}")

    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
        map_outputs = list(
            pool.map(
                lambda index: _run_map_task(mapper, index, partitions[index], config.r),
                range(config.m),
            )
        )

        # Shuffle: partition order, then emission order
        buckets: List[List[Record]] = [[] for _ in range(config.r)]
        records_emitted = 0
        for records in map_outputs:
            records_emitted += len(records)
            for record in records:
                buckets[record[0].reduce_index].append(record)

        reduce_outputs = list(
            pool.map(
                lambda index: _run_reduce_task(reducer, index, buckets[index], cost_model),
                range(config.r),
            )
        )
    wall_time_ms = (time.perf_counter() - started) * 1000.0

    outputs = {index: result[0] for index, result in enumerate(reduce_outputs)}
    metrics = [result[1] for result in reduce_outputs]
    logger.info(
        f"Job finished: m={config.m} r={config.r} workers={config.worker_count} "
        f"records={records_emitted} outputs={sum(len(o) for o in outputs.values())}"
    )
    return JobResult(outputs, metrics, records_emitted, wall_time_ms)
