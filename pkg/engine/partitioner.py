"""
Stable hash partitioner used by the analysis job and the basic strategy.
"""
import hashlib

import config
from core.errors import ConfigurationError


def stable_hash(key: bytes, seed: int = config.HASH_SEED) -> int:
    """
    Seeded 64-bit hash: keyed BLAKE2b with an 8-byte digest, read big-endian.

    The value depends only on the key bytes and the seed, not on the
    interpreter's hash randomization.
    """
    digest = hashlib.blake2b(
        key,
        digest_size=config.HASH_DIGEST_BYTES,
        key=seed.to_bytes(8, "big"),
    ).digest()
    return int.from_bytes(digest, "big")


def hash_partition(key: bytes, r: int, seed: int = config.HASH_SEED) -> int:
    """
    Map a key to a reduce task.

    Args:
        key: Key bytes
        r: Number of reduce tasks
        seed: Hash seed

    Returns:
        Reduce index in [0, r)
    """
    if r < 1:
        raise ConfigurationError(f"r must be >= 1, got {r}")
    return stable_hash(key, seed) % r
