"""
Benchmark sweeps over strategies and reduce-task counts.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Union

import pandas as pd

from bdm.analysis import compute_bdm
from core.entities import Partitions
from core.errors import ConfigurationError
from datagen.generator import GenSpec, generate
from engine.job import JobConfig

from .report import ANALYTIC, EXECUTE, RunReport, analyze_strategy, run_strategy

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["strategy", "r", "imbalance", "replication", "makespan", "speedup"]


class BenchResult(NamedTuple):
    reports: List[RunReport]
    table: pd.DataFrame


def bench_sweep(
    dataset: Union[Partitions, GenSpec],
    strategies: Sequence[str],
    r_values: Sequence[int],
    worker_count: Optional[int] = None,
    matcher=None,
    mode: str = EXECUTE,
) -> BenchResult:
    """
    Run every (strategy, r) combination on one dataset.

    Speedup is makespan(r=1) / makespan(r) of the same strategy; r=1 is
    evaluated even when it is not requested.

    Args:
        dataset: Input partitions, or a GenSpec to generate them
        strategies: Strategy names
        r_values: Reduce-task counts
        worker_count: Simulated workers; None means r (one node per reduce task)
        matcher: Pair comparator for execute mode
        mode: "execute" runs the engine, "analytic" evaluates the workload model

    Returns:
        BenchResult with the reports (requested rows only) and the table
    """
    if mode not in (EXECUTE, ANALYTIC):
        raise ConfigurationError(f"mode must be {EXECUTE!r} or {ANALYTIC!r}, got {mode!r}")
    if not r_values or any(r < 1 for r in r_values):
        raise ConfigurationError(f"r values must be positive, got {list(r_values)}")
    if not strategies:
        raise ConfigurationError("at least one strategy is required")

    partitions = generate(dataset) if isinstance(dataset, GenSpec) else dataset
    m = len(partitions)
    bdm = compute_bdm(partitions, JobConfig(m=m, r=1, worker_count=1 if worker_count is None else worker_count))

    def evaluate(name: str, r: int) -> RunReport:
        config = JobConfig(m=m, r=r, worker_count=r if worker_count is None else worker_count)
        if mode == ANALYTIC:
            return analyze_strategy(name, bdm, config)
        return run_strategy(name, partitions, config, matcher, bdm=bdm)

    reports: List[RunReport] = []
    rows: List[Dict[str, object]] = []
    for name in strategies:
        evaluated = {r: evaluate(name, r) for r in dict.fromkeys(list(r_values) + [1])}
        baseline = evaluated[1].simulated_makespan
        for r in r_values:
            report = evaluated[r]
            makespan = report.simulated_makespan
            reports.append(report)
            rows.append(
                {
                    "strategy": name,
                    "r": r,
                    "imbalance": report.imbalance,
                    "replication": report.replication_factor,
                    "makespan": makespan,
                    "speedup": baseline / makespan if makespan > 0 else 1.0,
                }
            )
        logger.info(f"Bench {name}: r={list(r_values)} done")

    return BenchResult(reports, pd.DataFrame(rows, columns=BENCH_COLUMNS))
