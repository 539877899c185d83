"""
Pairwise comparators: the reduce-side work the strategies balance.
"""
from dataclasses import dataclass
from typing import FrozenSet, Optional

from core.entities import Entity, Pair
from core.errors import ConfigurationError


@dataclass(frozen=True)
class MatchDecision:
    """Outcome of comparing one pair."""

    pair: Pair
    similarity: float
    is_match: bool
    flagged: bool = False


def trigrams(text: str) -> FrozenSet[str]:
    """
    Character trigrams of a string.

    Strings shorter than three characters yield themselves as the only
    token, so short values can still match exactly.
    """
    if len(text) < 3:
        return frozenset([text]) if text else frozenset()
    return frozenset(text[i:i + 3] for i in range(len(text) - 2))


def jaccard(a: FrozenSet[str], b: FrozenSet[str]) -> float:
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


class JaccardTrigramMatcher:
    """Jaccard similarity over the character trigrams of one designated attribute."""

    name = "jaccard"

    def __init__(self, attribute: int = 0, threshold: float = 0.8):
        """
        Initialize the matcher.

        Args:
            attribute: Index of the compared attribute in Entity.attrs
            threshold: Minimum similarity of a match
        """
        if not 0.0 <= threshold <= 1.0:
            raise ConfigurationError(f"threshold must lie in [0, 1], got {threshold}")
        if attribute < 0:
            raise ConfigurationError(f"attribute index must be >= 0, got {attribute}")
        self.attribute = attribute
        self.threshold = threshold

    def _value(self, entity: Entity) -> Optional[str]:
        if self.attribute >= len(entity.attrs):
            return None
        return entity.attrs[self.attribute]

    def compare(self, a: Entity, b: Entity) -> MatchDecision:
        """
        Compare two entities.

        Args:
            a: Entity preceding b in canonical order
            b: Second entity

        Returns:
            MatchDecision; a missing attribute gives similarity 0 and flagged=True
        """
        pair = Pair(a.id, b.id)
        left, right = self._value(a), self._value(b)
        if left is None or right is None:
            return MatchDecision(pair, 0.0, False, flagged=True)

        if left == right:
            similarity = 1.0
        else:
            similarity = jaccard(trigrams(left), trigrams(right))
        return MatchDecision(pair, similarity, similarity >= self.threshold)


class NullMatcher:
    """Constant-cost matcher for pure load-balancing runs: never a match."""

    name = "null"
    threshold = 1.0

    def compare(self, a: Entity, b: Entity) -> MatchDecision:
        return MatchDecision(Pair(a.id, b.id), 0.0, False)


def build_matcher(name: str, threshold: float = 0.8, attribute: int = 0):
    """Create a matcher by CLI name."""
    if name == "jaccard":
        return JaccardTrigramMatcher(attribute=attribute, threshold=threshold)
    if name == "null":
        return NullMatcher()
    raise ConfigurationError(f"unknown matcher {name!r}")
