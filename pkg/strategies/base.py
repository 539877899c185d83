"""
Common interface of the load balancing strategies.
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterator, List, Optional, Sequence

from bdm.matrix import BlockDistributionMatrix
from core.entities import Entity
from core.errors import ConfigurationError
from engine.job import JobConfig, Record
from matching.matcher import MatchDecision, NullMatcher


class LoadBalancingStrategy(ABC):
    """
    A strategy turns the broadcast BDM into a map task, a group reducer and
    an analytic model of the per-reduce-task workload it will produce.
    """

    name = ""

    def __init__(self, bdm: BlockDistributionMatrix, config: JobConfig, matcher=None):
        """
        Initialize the strategy.

        Args:
            bdm: Block Distribution Matrix of the dataset
            config: Job shape of the matching job
            matcher: Pair comparator; defaults to the null matcher
        """
        if bdm.m != config.m:
            raise ConfigurationError(f"BDM was computed for m={bdm.m}, job has m={config.m}")
        self.bdm = bdm
        self.config = config
        self.matcher = matcher if matcher is not None else NullMatcher()

    @abstractmethod
    def map_task(self, partition_index: int, entities: Sequence[Entity]) -> Iterator[Record]:
        """Emit the shuffle records of one input partition."""

    @abstractmethod
    def reduce_group(self, reduce_index: int, group: bytes, values: List[Any]) -> Iterator[MatchDecision]:
        """Compare the pairs one group is responsible for."""

    @abstractmethod
    def expected_loads(self) -> List[int]:
        """Comparisons per reduce task, derived from the BDM alone."""

    @abstractmethod
    def expected_records(self) -> List[int]:
        """Shuffled records per reduce task, derived from the BDM alone."""

    @abstractmethod
    def plan_document(self) -> Dict[str, Any]:
        """JSON-ready description of the plan."""

    def notes(self) -> Optional[Dict[str, Any]]:
        return None
