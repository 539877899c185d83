"""
Datagen module initialization.
"""
from .csv_io import load_csv, write_csv
from .generator import CLUSTERED, PLACEMENTS, ROUND_ROBIN, GenSpec, generate, key_name, zipf_ranks

__all__ = [
    "load_csv",
    "write_csv",
    "CLUSTERED",
    "PLACEMENTS",
    "ROUND_ROBIN",
    "GenSpec",
    "generate",
    "key_name",
    "zipf_ranks",
]
