"""
Block Distribution Matrix: per-block, per-partition entity counts and derived pair offsets.
"""
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Any, Dict, Sequence, Tuple

from core.errors import ConfigurationError, DataError, StalePlanError
from core.pairs import pairs_in_block


@dataclass(frozen=True)
class BlockDistributionMatrix:
    """
    Key distribution computed by the analysis job.

    Attributes:
        block_keys: Blocking keys in canonical (byte) order
        counts: counts[b][i] = entities of block b in input partition i
        sizes: Per-block entity totals
        pair_counts: Per-block pair counts n(n-1)/2
        offsets: Exclusive prefix sums of pair_counts
        total_pairs: P, the number of pairs over all blocks
        m: Number of input partitions
        entity_total: Number of entities
    """

    block_keys: Tuple[str, ...]
    counts: Tuple[Tuple[int, ...], ...]
    m: int
    sizes: Tuple[int, ...] = field(init=False)
    pair_counts: Tuple[int, ...] = field(init=False)
    offsets: Tuple[int, ...] = field(init=False)
    total_pairs: int = field(init=False)
    entity_total: int = field(init=False)
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.block_keys) != len(self.counts):
            raise DataError("BDM needs exactly one counts row per block key")
        for key, row in zip(self.block_keys, self.counts):
            if len(row) != self.m:
                raise DataError(f"BDM row for {key!r} has {len(row)} columns, expected m={self.m}")
            if any(count < 0 for count in row):
                raise DataError(f"BDM row for {key!r} has a negative count")
        byte_keys = [key.encode("utf-8") for key in self.block_keys]
        if byte_keys != sorted(set(byte_keys)):
            raise DataError("BDM block keys must be unique and in byte order")

        sizes = tuple(sum(row) for row in self.counts)
        pair_counts = tuple(pairs_in_block(n) for n in sizes)
        offsets = tuple(accumulate(pair_counts, initial=0))
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "pair_counts", pair_counts)
        object.__setattr__(self, "offsets", offsets[:-1])
        object.__setattr__(self, "total_pairs", offsets[-1])
        object.__setattr__(self, "entity_total", sum(sizes))
        object.__setattr__(self, "_index", {key: b for b, key in enumerate(self.block_keys)})

    def __len__(self) -> int:
        return len(self.block_keys)

    @property
    def paired_entity_total(self) -> int:
        """Entities in blocks of two or more, i.e. entities that take part in at least one pair."""
        return sum(n for n in self.sizes if n >= 2)

    def index_of(self, key: str) -> int:
        """Block index of a key; unknown keys mean the BDM is stale."""
        try:
            return self._index[key]
        except KeyError:
            raise StalePlanError(f"blocking key {key!r} is not in the BDM")

    def partition_offset(self, block_index: int, partition: int) -> int:
        """Position of the first entity of `partition` within its block."""
        return sum(self.counts[block_index][:partition])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "keys": list(self.block_keys),
            "counts": [list(row) for row in self.counts],
            "sizes": list(self.sizes),
            "pair_counts": list(self.pair_counts),
            "offsets": list(self.offsets),
            "total_pairs": self.total_pairs,
            "entity_total": self.entity_total,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BlockDistributionMatrix":
        """
        Rebuild a BDM from its JSON form; derived fields are recomputed and checked.

        Args:
            data: Dictionary produced by to_dict

        Returns:
            BlockDistributionMatrix
        """
        try:
            bdm = cls(
                block_keys=tuple(data["keys"]),
                counts=tuple(tuple(int(c) for c in row) for row in data["counts"]),
                m=int(data["m"]),
            )
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise DataError(f"malformed BDM document: {e}")
        if "total_pairs" in data and data["total_pairs"] != bdm.total_pairs:
            raise DataError(f"BDM document total_pairs {data['total_pairs']} disagrees with counts ({bdm.total_pairs})")
        return bdm

    @classmethod
    def from_rows(cls, rows: Sequence[Tuple[str, Sequence[int]]], m: int) -> "BlockDistributionMatrix":
        """Build from unordered (key, counts) rows."""
        ordered = sorted(rows, key=lambda row: row[0].encode("utf-8"))
        return cls(
            block_keys=tuple(key for key, _ in ordered),
            counts=tuple(tuple(counts) for _, counts in ordered),
            m=m,
        )


def average_workload(bdm: BlockDistributionMatrix, r: int) -> float:
    """
    Average reduce workload P / r.

    Returned as a double (true division, round-half-even to the nearest
    representable value); P is exact, so P / r is exact whenever r divides P.
    """
    if r < 1:
        raise ConfigurationError(f"r must be >= 1, got {r}")
    return bdm.total_pairs / r
