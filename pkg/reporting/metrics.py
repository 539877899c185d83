"""
Workload balance metrics.
"""
import heapq
from typing import Sequence

from core.errors import ConfigurationError


def imbalance(loads: Sequence[float]) -> float:
    """
    Max over mean of per-task loads.

    Args:
        loads: One load per reduce task

    Returns:
        Ratio >= 1.0; 1.0 when every load is zero
    """
    if len(loads) == 0:
        raise ConfigurationError("imbalance needs at least one load")
    total = sum(loads)
    if total == 0:
        return 1.0
    return max(loads) / (total / len(loads))


def simulated_makespan(costs: Sequence[float], worker_count: int) -> float:
    """
    List scheduling in the given order: each task starts on the worker that
    becomes free first (lowest index on ties).

    Args:
        costs: Cost units per task, in scheduling order
        worker_count: Number of workers

    Returns:
        Completion time of the last worker
    """
    if worker_count < 1:
        raise ConfigurationError(f"worker_count must be >= 1, got {worker_count}")
    workers = [(0.0, w) for w in range(worker_count)]
    finish = 0.0
    for cost in costs:
        free_at, w = heapq.heappop(workers)
        done = free_at + cost
        finish = max(finish, done)
        heapq.heappush(workers, (done, w))
    return finish
