"""
Formatting utilities for BDMs, plans, run reports and bench tables.
"""
import json
from typing import Any, Dict

import pandas as pd

import config
from bdm.matrix import BlockDistributionMatrix


class ReportFormatter:
    """Renders engine artifacts as JSON, CSV or console tables."""

    @staticmethod
    def to_json(data: Dict[str, Any]) -> str:
        """
        Serialize a document deterministically.

        Args:
            data: JSON-ready dictionary

        Returns:
            Indented JSON with sorted keys and a trailing newline
        """
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def bench_csv(table: pd.DataFrame) -> str:
        """Plot-ready CSV of a bench table."""
        return table.to_csv(index=False, float_format="%.6f", lineterminator="\n")

    @staticmethod
    def bdm_frame(bdm: BlockDistributionMatrix, limit: int = config.MAX_CONSOLE_ROWS) -> pd.DataFrame:
        """
        Largest blocks of a BDM as a DataFrame.

        Args:
            bdm: Block Distribution Matrix
            limit: Maximum number of rows

        Returns:
            DataFrame with key, per-partition counts, size, pairs and pair share
        """
        columns = ["key"] + [f"p{i}" for i in range(bdm.m)] + ["size", "pairs", "share"]
        if len(bdm) == 0:
            return pd.DataFrame(columns=columns)

        df = pd.DataFrame(list(bdm.counts), columns=columns[1:bdm.m + 1])
        df.insert(0, "key", list(bdm.block_keys))
        df["size"] = list(bdm.sizes)
        df["pairs"] = list(bdm.pair_counts)
        df["share"] = df["pairs"] / bdm.total_pairs if bdm.total_pairs else 0.0
        df = df.sort_values(["pairs", "key"], ascending=[False, True], kind="stable")
        return df.head(limit).reset_index(drop=True)

    @staticmethod
    def report_summary(report) -> str:
        """One-screen text summary of a RunReport."""
        lines = [
            f"strategy={report.strategy} mode={report.mode} m={report.m} r={report.r} workers={report.worker_count}",
            f"pairs={report.total_pairs} comparisons={report.total_comparisons} matches={report.match_count}",
            f"imbalance={report.imbalance:.4f} replication={report.replication_factor:.4f} "
            f"makespan={report.simulated_makespan:.1f}",
        ]
        per_task = pd.DataFrame([task.to_dict() for task in report.per_task])
        if not per_task.empty:
            lines.append(per_task.head(config.MAX_CONSOLE_ROWS).to_string(index=False))
            if len(per_task) > config.MAX_CONSOLE_ROWS:
                lines.append("... (more tasks not shown)")
        return "\n".join(lines)
