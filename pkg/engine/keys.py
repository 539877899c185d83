"""
Composite shuffle keys and their byte encoding.
"""
import struct
from dataclasses import dataclass
from typing import Tuple

_UINT64 = struct.Struct(">Q")


def pack_ints(*values: int) -> bytes:
    """Encode non-negative integers so that byte order equals tuple order."""
    return b"".join(_UINT64.pack(value) for value in values)


def unpack_ints(data: bytes) -> Tuple[int, ...]:
    return tuple(value for (value,) in _UINT64.iter_unpack(data))


@dataclass(frozen=True)
class CompositeKey:
    """
    Shuffle key carrying a strategy's repartitioning decision.

    Partitioning looks at reduce_index only, grouping at (reduce_index, group)
    and the within-group sort at order.
    """

    reduce_index: int
    group: bytes
    order: bytes = b""
