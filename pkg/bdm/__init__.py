"""
BDM module initialization.
"""
from .analysis import compute_bdm
from .matrix import BlockDistributionMatrix, average_workload

__all__ = ["BlockDistributionMatrix", "average_workload", "compute_bdm"]
