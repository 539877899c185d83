"""
Run reports: execute a strategy on the engine, or evaluate its analytic workload model.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional

from bdm.analysis import compute_bdm
from bdm.matrix import BlockDistributionMatrix
from core.entities import Partitions, entity_count, validate_partitions
from core.errors import InvariantViolation
from engine.job import CostModel, JobConfig, JobResult, TaskMetrics, run_job, unit_cost
from strategies import LoadBalancingStrategy, build_strategy

from .metrics import imbalance, simulated_makespan

logger = logging.getLogger(__name__)

EXECUTE = "execute"
ANALYTIC = "analytic"


@dataclass(frozen=True)
class RunReport:
    """Workload of one strategy run, per reduce task and in aggregate."""

    strategy: str
    mode: str
    m: int
    r: int
    worker_count: int
    matcher: str
    per_task: List[TaskMetrics]
    total_pairs: int
    entity_count: int
    paired_entity_count: int
    records_shuffled: int
    match_count: Optional[int] = None
    wall_time_ms: Optional[float] = None
    notes: Optional[Dict[str, Any]] = None

    @property
    def comparisons(self) -> List[int]:
        return [task.comparisons_done for task in self.per_task]

    @property
    def total_comparisons(self) -> int:
        return sum(self.comparisons)

    @property
    def imbalance(self) -> float:
        return imbalance(self.comparisons)

    @property
    def replication_factor(self) -> float:
        if self.entity_count == 0:
            return 0.0
        return self.records_shuffled / self.entity_count

    @property
    def pair_replication_factor(self) -> float:
        """Shuffled records per entity with at least one partner; never below 1.0 once there is a pair."""
        if self.paired_entity_count == 0:
            return 0.0
        return self.records_shuffled / self.paired_entity_count

    @property
    def simulated_makespan(self) -> float:
        return simulated_makespan([task.cost_units for task in self.per_task], self.worker_count)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """
        JSON-ready form.

        Args:
            include_timing: Add wall_time_ms (machine dependent, so off by default)

        Returns:
            Dictionary
        """
        data = {
            "strategy": self.strategy,
            "mode": self.mode,
            "config": {
                "m": self.m,
                "r": self.r,
                "worker_count": self.worker_count,
                "matcher": self.matcher,
            },
            "per_task": [task.to_dict() for task in self.per_task],
            "total_pairs": self.total_pairs,
            "total_comparisons": self.total_comparisons,
            "imbalance": self.imbalance,
            "replication_factor": self.replication_factor,
            "pair_replication_factor": self.pair_replication_factor,
            "simulated_makespan": self.simulated_makespan,
            "entity_count": self.entity_count,
            "paired_entity_count": self.paired_entity_count,
            "records_shuffled": self.records_shuffled,
            "match_count": self.match_count,
            "notes": self.notes,
        }
        if include_timing:
            data["wall_time_ms"] = self.wall_time_ms
        return data


class StrategyRun(NamedTuple):
    strategy: LoadBalancingStrategy
    result: JobResult


def execute_strategy(
    name: str,
    partitions: Partitions,
    config: JobConfig,
    matcher=None,
    cost_model: CostModel = unit_cost,
    bdm: Optional[BlockDistributionMatrix] = None,
) -> StrategyRun:
    """
    Run the analysis job (unless a BDM is given) and then the matching job.

    The executed per-task comparisons and records are checked against the
    strategy's analytic model.

    Args:
        name: Strategy name
        partitions: Input partitions
        config: Job shape
        matcher: Pair comparator (null matcher when None)
        cost_model: Cost of one comparison
        bdm: Precomputed BDM of the same dataset

    Returns:
        StrategyRun with the strategy instance and the job result
    """
    validate_partitions(partitions, config.m)
    if bdm is None:
        bdm = compute_bdm(partitions, config)
    strategy = build_strategy(name, bdm, config, matcher)
    result = run_job(strategy.map_task, strategy.reduce_group, partitions, config, cost_model)

    executed = [task.comparisons_done for task in result.metrics]
    expected = strategy.expected_loads()
    if executed != expected:
        raise InvariantViolation(f"{name}: executed comparisons {executed} differ from plan {expected}")
    if sum(executed) != bdm.total_pairs:
        raise InvariantViolation(f"{name}: {sum(executed)} comparisons but P={bdm.total_pairs}")
    received = [task.records_received for task in result.metrics]
    if received != strategy.expected_records():
        raise InvariantViolation(f"{name}: received records {received} differ from plan {strategy.expected_records()}")
    return StrategyRun(strategy, result)


def run_strategy(
    name: str,
    partitions: Partitions,
    config: JobConfig,
    matcher=None,
    cost_model: CostModel = unit_cost,
    bdm: Optional[BlockDistributionMatrix] = None,
) -> RunReport:
    """Execute a strategy and summarize it as a RunReport."""
    strategy, result = execute_strategy(name, partitions, config, matcher, cost_model, bdm)
    match_count = sum(1 for outputs in result.outputs.values() for decision in outputs if decision.is_match)
    report = RunReport(
        strategy=name,
        mode=EXECUTE,
        m=config.m,
        r=config.r,
        worker_count=config.worker_count,
        matcher=strategy.matcher.name,
        per_task=result.metrics,
        total_pairs=strategy.bdm.total_pairs,
        entity_count=entity_count(partitions),
        paired_entity_count=strategy.bdm.paired_entity_total,
        records_shuffled=result.records_emitted,
        match_count=match_count,
        wall_time_ms=result.wall_time_ms,
        notes=strategy.notes(),
    )
    logger.info(f"{name}: imbalance={report.imbalance:.3f} replication={report.replication_factor:.3f}")
    return report


def analyze_strategy(name: str, bdm: BlockDistributionMatrix, config: JobConfig) -> RunReport:
    """
    Evaluate a strategy's workload from the BDM alone, one unit per comparison.

    Args:
        name: Strategy name
        bdm: Block Distribution Matrix
        config: Job shape

    Returns:
        RunReport in analytic mode (no match count)
    """
    strategy = build_strategy(name, bdm, config)
    loads = strategy.expected_loads()
    records = strategy.expected_records()
    per_task = [
        TaskMetrics(reduce_index=k, records_received=records[k], comparisons_done=loads[k], cost_units=float(loads[k]))
        for k in range(config.r)
    ]
    return RunReport(
        strategy=name,
        mode=ANALYTIC,
        m=config.m,
        r=config.r,
        worker_count=config.worker_count,
        matcher=strategy.matcher.name,
        per_task=per_task,
        total_pairs=bdm.total_pairs,
        entity_count=bdm.entity_total,
        paired_entity_count=bdm.paired_entity_total,
        records_shuffled=sum(records),
        notes=strategy.notes(),
    )
