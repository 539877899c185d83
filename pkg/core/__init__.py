"""
Core module initialization.
"""
from .entities import (
    Block,
    Entity,
    Pair,
    Partitions,
    canonical_block_order,
    entity_count,
    iter_entities,
    validate_partitions,
)
from .errors import (
    ConfigurationError,
    DataError,
    InvariantViolation,
    LoadBalancingError,
    StalePlanError,
)
from .pairs import enumerate_block_pairs, iter_entity_pairs, iter_upper_triangle, pairs_in_block

__all__ = [
    "Block",
    "Entity",
    "Pair",
    "Partitions",
    "canonical_block_order",
    "entity_count",
    "iter_entities",
    "validate_partitions",
    "ConfigurationError",
    "DataError",
    "InvariantViolation",
    "LoadBalancingError",
    "StalePlanError",
    "enumerate_block_pairs",
    "iter_entity_pairs",
    "iter_upper_triangle",
    "pairs_in_block",
]
