import random

import pytest

from core import ConfigurationError, Entity
from engine import JobConfig
from matching import JaccardTrigramMatcher, NullMatcher, build_matcher, jaccard, trigrams
from reporting import execute_strategy
from tests.helpers import random_partitions


def _entity(entity_id, *attrs):
    return Entity(entity_id, 0, "k", attrs)


@pytest.mark.parametrize(
    "left, right, expected",
    [("smith", "smith", 1.0), ("abc", "xyz", 0.0), ("abcd", "abce", 1 / 3)],
)
def test_jaccard_similarity(left, right, expected):
    decision = JaccardTrigramMatcher().compare(_entity(0, left), _entity(1, right))
    assert decision.similarity == pytest.approx(expected)
    assert decision.is_match == (expected >= 0.8)
    assert not decision.flagged


def test_comparison_is_symmetric():
    matcher = JaccardTrigramMatcher()
    words = ["jonathan", "jonathon", "jon", "jo", "", "nathan"]
    for left in words:
        for right in words:
            forward = matcher.compare(_entity(0, left), _entity(1, right))
            backward = matcher.compare(_entity(1, right), _entity(0, left))
            assert forward.similarity == backward.similarity


def test_short_strings_are_single_tokens():
    assert trigrams("ab") == {"ab"}
    assert trigrams("") == frozenset()
    assert jaccard(frozenset(), frozenset()) == 0.0


def test_missing_attribute_is_flagged():
    decision = JaccardTrigramMatcher(attribute=1).compare(_entity(3, "x", "y"), _entity(4, "x"))
    assert decision.similarity == 0.0
    assert not decision.is_match
    assert decision.flagged
    assert (decision.pair.a, decision.pair.b) == (3, 4)


def test_threshold_decides_match():
    strict = JaccardTrigramMatcher(threshold=0.9)
    loose = JaccardTrigramMatcher(threshold=0.3)
    a, b = _entity(0, "abcd"), _entity(1, "abce")
    assert not strict.compare(a, b).is_match
    assert loose.compare(a, b).is_match


def test_null_matcher():
    decision = NullMatcher().compare(_entity(0, "same"), _entity(1, "same"))
    assert decision.similarity == 0.0
    assert not decision.is_match


def test_build_matcher():
    assert isinstance(build_matcher("jaccard", 0.5), JaccardTrigramMatcher)
    assert isinstance(build_matcher("null"), NullMatcher)
    with pytest.raises(ConfigurationError):
        build_matcher("levenshtein")
    with pytest.raises(ConfigurationError):
        build_matcher("jaccard", 1.5)


def test_decisions_do_not_depend_on_strategy():
    partitions = random_partitions(random.Random(51), 250, 10, 3)
    matcher = JaccardTrigramMatcher(threshold=0.5)
    decisions = []
    for name in ("basic", "blocksplit", "pairrange"):
        run = execute_strategy(name, partitions, JobConfig(m=3, r=5), matcher)
        decisions.append({d.pair: d for outputs in run.result.outputs.values() for d in outputs})
    assert decisions[0] == decisions[1] == decisions[2]
    assert any(d.is_match for d in decisions[0].values())
