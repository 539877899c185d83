"""
Strategies module initialization.
"""
from typing import Dict, Type

from core.errors import ConfigurationError

from .base import LoadBalancingStrategy
from .basic import BasicStrategy, basic_map_emit, basic_reduce
from .blocksplit import (
    BlockSplitStrategy,
    MatchTask,
    MatchTaskPlan,
    blocksplit_map_emit,
    blocksplit_plan,
    blocksplit_reduce,
)
from .pairrange import (
    PairCoordinate,
    PairRangeStrategy,
    RangeTable,
    compute_ranges,
    entity_ranges,
    global_pair_index,
    pair_coordinate,
    pairrange_map_emit,
    pairrange_reduce,
)

STRATEGIES: Dict[str, Type[LoadBalancingStrategy]] = {
    BasicStrategy.name: BasicStrategy,
    BlockSplitStrategy.name: BlockSplitStrategy,
    PairRangeStrategy.name: PairRangeStrategy,
}


def build_strategy(name: str, bdm, config, matcher=None) -> LoadBalancingStrategy:
    """Instantiate a strategy by its CLI name."""
    try:
        strategy_class = STRATEGIES[name]
    except KeyError:
        raise ConfigurationError(f"unknown strategy {name!r}; expected one of {sorted(STRATEGIES)}")
    return strategy_class(bdm, config, matcher)


__all__ = [
    "STRATEGIES",
    "build_strategy",
    "LoadBalancingStrategy",
    "BasicStrategy",
    "basic_map_emit",
    "basic_reduce",
    "BlockSplitStrategy",
    "MatchTask",
    "MatchTaskPlan",
    "blocksplit_map_emit",
    "blocksplit_plan",
    "blocksplit_reduce",
    "PairCoordinate",
    "PairRangeStrategy",
    "RangeTable",
    "compute_ranges",
    "entity_ranges",
    "global_pair_index",
    "pair_coordinate",
    "pairrange_map_emit",
    "pairrange_reduce",
]
