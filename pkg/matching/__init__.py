"""
Matching module initialization.
"""
from .matcher import JaccardTrigramMatcher, MatchDecision, NullMatcher, build_matcher, jaccard, trigrams

__all__ = ["JaccardTrigramMatcher", "MatchDecision", "NullMatcher", "build_matcher", "jaccard", "trigrams"]
