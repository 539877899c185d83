"""
Pair counting and the canonical row-major enumeration of in-block pairs.
"""
from typing import Iterator, List, Sequence, Tuple

from .entities import Block, Entity, Pair


def pairs_in_block(n: int) -> int:
    """Number of unordered pairs in a block of n entities."""
    if n < 2:
        return 0
    return n * (n - 1) // 2


def iter_upper_triangle(n: int) -> Iterator[Tuple[int, int]]:
    """Positions (x, y), x < y, in row-major upper-triangle order."""
    for x in range(n - 1):
        for y in range(x + 1, n):
            yield x, y


def iter_entity_pairs(members: Sequence[Entity]) -> Iterator[Tuple[Entity, Entity]]:
    for x, y in iter_upper_triangle(len(members)):
        yield members[x], members[y]


def enumerate_block_pairs(block: Block) -> List[Pair]:
    """
    Enumerate all pairs of a block.

    Args:
        block: Block with members in canonical order

    Returns:
        Pairs (0,1),(0,2),...,(n-2,n-1) over member positions
    """
    return [Pair(a.id, b.id) for a, b in iter_entity_pairs(block.members)]
