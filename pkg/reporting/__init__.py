"""
Reporting module initialization.
"""
from .bench import BENCH_COLUMNS, BenchResult, bench_sweep
from .metrics import imbalance, simulated_makespan
from .report import ANALYTIC, EXECUTE, RunReport, StrategyRun, analyze_strategy, execute_strategy, run_strategy

__all__ = [
    "BENCH_COLUMNS",
    "BenchResult",
    "bench_sweep",
    "imbalance",
    "simulated_makespan",
    "ANALYTIC",
    "EXECUTE",
    "RunReport",
    "StrategyRun",
    "analyze_strategy",
    "execute_strategy",
    "run_strategy",
]
