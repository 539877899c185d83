import random

import pytest

from tests.helpers import make_partitions


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def small_dataset():
    """Two partitions: keys [a, a, b] and [a, b, b, c]."""
    return make_partitions([["a", "a", "b"], ["a", "b", "b", "c"]])
