"""Readers for the frozen CSV formats a simulator run writes.

This tool trusts the files as the interface: column sets are pinned here
and a missing column fails fast with the column's name. Extra columns are
tolerated so the producer can append fields without breaking old readers.
"""

import csv
import json
from pathlib import Path

METRICS_COLUMNS = (
    "tick",
    "spot_price",
    "s_token",
    "s_assets",
    "lambda",
    "gini_utility",
    "dominance_index",
    "retention",
    "bot_capture",
    "liquidity",
)
EVENT_COLUMNS = ("tick", "agent_id", "event_type", "payload")
SUMMARY_COLUMNS = ("cell", "death_spiral", "price_peak_ratio", "final_lambda", "final_retention")

_METRIC_FLOATS = (
    "spot_price",
    "s_token",
    "lambda",
    "gini_utility",
    "dominance_index",
    "retention",
    "bot_capture",
    "liquidity",
)


class SchemaMismatch(Exception):
    """A required input column is absent from a CSV header."""

    def __init__(self, filename: str, column: str):
        self.filename = filename
        self.column = column
        super().__init__(f"{filename}: missing column {column!r}")


def _read_rows(path: Path, required: tuple[str, ...]) -> list[dict]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or ()
        for column in required:
            if column not in header:
                raise SchemaMismatch(path.name, column)
        return list(reader)


def read_metrics(path: str | Path) -> list[dict]:
    """Per-tick metric rows with tick/s_assets as ints, the rest floats."""
    out = []
    for row in _read_rows(Path(path), METRICS_COLUMNS):
        parsed = {"tick": int(row["tick"]), "s_assets": int(row["s_assets"])}
        for column in _METRIC_FLOATS:
            parsed[column] = float(row[column])
        out.append(parsed)
    return out


def read_events(path: str | Path) -> list[dict]:
    """Event rows with the JSON payload column decoded."""
    return [
        {
            "tick": int(row["tick"]),
            "agent_id": row["agent_id"],
            "event_type": row["event_type"],
            "payload": json.loads(row["payload"]),
        }
        for row in _read_rows(Path(path), EVENT_COLUMNS)
    ]


def read_summary(path: str | Path) -> list[dict]:
    """Ablation summary rows, one per toggle cell."""
    return [
        {
            "cell": row["cell"],
            "death_spiral": row["death_spiral"] == "true",
            "price_peak_ratio": float(row["price_peak_ratio"]),
            "final_lambda": float(row["final_lambda"]),
            "final_retention": float(row["final_retention"]),
        }
        for row in _read_rows(Path(path), SUMMARY_COLUMNS)
    ]
