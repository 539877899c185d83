"""
Engine module initialization.
"""
from .job import CostModel, JobConfig, JobResult, Mapper, Record, Reducer, TaskMetrics, run_job, unit_cost
from .keys import CompositeKey, pack_ints, unpack_ints
from .partitioner import hash_partition, stable_hash

__all__ = [
    "CostModel",
    "JobConfig",
    "JobResult",
    "Mapper",
    "Record",
    "Reducer",
    "TaskMetrics",
    "run_job",
    "unit_cost",
    "CompositeKey",
    "pack_ints",
    "unpack_ints",
    "hash_partition",
    "stable_hash",
]
