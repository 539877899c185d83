"""
Deterministic generation of datasets with Zipf-skewed blocking keys.
"""
import logging
from dataclasses import dataclass
from typing import List

import numpy as np

import config
from core.entities import Entity
from core.errors import ConfigurationError

logger = logging.getLogger(__name__)

ROUND_ROBIN = "round_robin"
CLUSTERED = "clustered"
PLACEMENTS = (ROUND_ROBIN, CLUSTERED)

_ALPHABET = np.array(list("abcdefghijklmnopqrstuvwxyz"))


@dataclass(frozen=True)
class GenSpec:
    """
    Parameters of a synthetic dataset.

    Attributes:
        n: Entity count
        distinct_keys: Number of possible blocking keys
        zipf_s: Skew exponent; 0 gives uniform keys
        m: Number of input partitions
        seed: Generator seed
        attr_len: Payload string length
        placement: round_robin, or clustered to keep same-key entities together
    """

    n: int
    distinct_keys: int = 100
    zipf_s: float = 1.0
    m: int = 4
    seed: int = 42
    attr_len: int = config.DEFAULT_ATTR_LEN
    placement: str = ROUND_ROBIN

    def __post_init__(self):
        if self.n < 0:
            raise ConfigurationError(f"n must be >= 0, got {self.n}")
        if self.distinct_keys < 1:
            raise ConfigurationError(f"distinct_keys must be >= 1, got {self.distinct_keys}")
        if self.zipf_s < 0:
            raise ConfigurationError(f"zipf_s must be >= 0, got {self.zipf_s}")
        if self.m < 1:
            raise ConfigurationError(f"m must be >= 1, got {self.m}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.attr_len < 0:
            raise ConfigurationError(f"attr_len must be >= 0, got {self.attr_len}")
        if self.placement not in PLACEMENTS:
            raise ConfigurationError(f"placement must be one of {PLACEMENTS}, got {self.placement!r}")


def zipf_ranks(rng: np.random.Generator, distinct_keys: int, zipf_s: float, n: int) -> np.ndarray:
    """
    Draw n key ranks in [0, distinct_keys) with P(rank k) proportional to (k+1)^-s.

    Inverse-CDF sampling over precomputed cumulative weights.
    """
    weights = np.power(np.arange(1, distinct_keys + 1, dtype=np.float64), -zipf_s)
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    ranks = np.searchsorted(cdf, rng.random(n), side="right")
    return np.minimum(ranks, distinct_keys - 1)


def key_name(rank: int, distinct_keys: int) -> str:
    """Zero-padded so that byte order follows rank order."""
    return f"k{rank:0{len(str(distinct_keys - 1))}d}"


def _payloads(rng: np.random.Generator, ranks: np.ndarray, spec: GenSpec) -> List[str]:
    # Per-key base string with random character mutations
    bases = rng.integers(0, len(_ALPHABET), size=(spec.distinct_keys, spec.attr_len))
    mutate = rng.random((spec.n, spec.attr_len)) < config.MUTATION_RATE
    replacement = rng.integers(0, len(_ALPHABET), size=(spec.n, spec.attr_len))
    letters = np.where(mutate, replacement, bases[ranks])
    return ["".join(_ALPHABET[row]) for row in letters]


def generate(spec: GenSpec) -> List[List[Entity]]:
    """
    Generate a dataset.

    Args:
        spec: Generation parameters

    Returns:
        spec.m input partitions; entity ids are 0..n-1 in generation order
    """
    rng = np.random.default_rng(spec.seed)
    ranks = zipf_ranks(rng, spec.distinct_keys, spec.zipf_s, spec.n)
    payloads = _payloads(rng, ranks, spec)

    partitions: List[List[Entity]] = [[] for _ in range(spec.m)]
    if spec.placement == ROUND_ROBIN:
        order = range(spec.n)
        assign = [entity_id % spec.m for entity_id in order]
    else:
        order = np.argsort(ranks, kind="stable").tolist()
        assign = [position * spec.m // spec.n for position in range(spec.n)]

    for entity_id, partition in zip(order, assign):
        partitions[partition].append(
            Entity(
                id=int(entity_id),
                partition=partition,
                key=key_name(int(ranks[entity_id]), spec.distinct_keys),
                attrs=(payloads[entity_id],),
            )
        )

    logger.info(
        f"Generated {spec.n} entities over {spec.m} partitions "
        f"(keys={spec.distinct_keys}, s={spec.zipf_s}, placement={spec.placement}, seed={spec.seed})"
    )
    return partitions
