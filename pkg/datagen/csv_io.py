"""
CSV ingestion and export of datasets.
"""
import logging
import warnings
from typing import List, TextIO, Union

import pandas as pd

from core.entities import Entity, Partitions, iter_entities
from core.errors import ConfigurationError, DataError

logger = logging.getLogger(__name__)


def load_csv(path: str, key_column: str, m: int) -> List[List[Entity]]:
    """
    Load a CSV file as a dataset.

    Rows are dealt round-robin into m partitions in file order and get
    sequential ids; every column other than key_column becomes an attribute.

    Args:
        path: CSV file with a header row (UTF-8, comma separated)
        key_column: Column holding the blocking key
        m: Number of input partitions

    Returns:
        m input partitions
    """
    if m < 1:
        raise ConfigurationError(f"m must be >= 1, got {m}")
    try:
        with warnings.catch_warnings():
            # Without an index column pandas only warns about rows longer than the header
            warnings.simplefilter("error", pd.errors.ParserWarning)
            df = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8", index_col=False)
    except FileNotFoundError:
        raise DataError(f"CSV file not found: {path}")
    except pd.errors.ParserWarning:
        raise DataError(f"malformed row in {path}: more fields than the header")
    except pd.errors.EmptyDataError:
        raise DataError(f"CSV file {path} has no header row")
    except pd.errors.ParserError as e:
        raise DataError(f"malformed row in {path}: {e}")
    except UnicodeDecodeError as e:
        raise DataError(f"CSV file {path} is not valid UTF-8: {e}")
    except OSError as e:
        raise DataError(f"cannot read CSV file {path}: {e}")

    if key_column not in df.columns:
        raise DataError(f"CSV file {path} has no column {key_column!r} (columns: {list(df.columns)})")

    incomplete = df.isna().any(axis=1)
    if incomplete.any():
        # Header is line 1
        line = int(incomplete.to_numpy().nonzero()[0][0]) + 2
        raise DataError(f"malformed row in {path} at line {line}: expected {len(df.columns)} fields")

    attr_columns = [column for column in df.columns if column != key_column]
    keys = df[key_column].tolist()
    attrs = df[attr_columns].itertuples(index=False, name=None)

    partitions: List[List[Entity]] = [[] for _ in range(m)]
    for entity_id, (key, values) in enumerate(zip(keys, attrs)):
        partition = entity_id % m
        partitions[partition].append(Entity(entity_id, partition, key, tuple(values)))

    logger.info(f"Loaded {len(keys)} rows from {path} into {m} partitions")
    return partitions


def write_csv(partitions: Partitions, path: Union[str, TextIO], key_column: str = "key") -> None:
    """
    Write a dataset as CSV, one row per entity in id order.

    Args:
        partitions: Input partitions
        path: Output file path or open text stream
        key_column: Header of the blocking key column
    """
    entities = sorted(iter_entities(partitions), key=lambda e: e.id)
    width = max((len(e.attrs) for e in entities), default=1)
    columns = [key_column] + [f"attr{i}" for i in range(width)]
    rows = [[e.key] + list(e.attrs) + [""] * (width - len(e.attrs)) for e in entities]
    pd.DataFrame(rows, columns=columns).to_csv(path, index=False, encoding="utf-8")
    logger.info(f"Wrote {len(rows)} rows to {path}")
