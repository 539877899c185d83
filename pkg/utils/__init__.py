"""
Utilities module initialization.
"""
from .formatter import ReportFormatter

__all__ = ["ReportFormatter"]
