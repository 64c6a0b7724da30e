"""Run-output writers: metrics.csv, events.csv, meta.json.

Files are written to a temporary name in the destination directory and
renamed into place, so a crashed run never leaves a partial file behind.
Floats serialize as their shortest round-trip decimal form, which makes
byte-identity across reruns well-defined.
"""

import csv
import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator

from .economy import Event
from .metrics import MetricsFrame

EVENT_COLUMNS = ("tick", "agent_id", "event_type", "payload")


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@contextmanager
def atomic_write(path: Path) -> Iterator[Any]:
    """Open a temp file beside path, renaming over it on clean exit."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            yield handle
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def payload_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def write_metrics(path: str | Path, frames: Iterable[MetricsFrame]) -> None:
    with atomic_write(Path(path)) as handle:
        writer = csv.writer(handle)
        writer.writerow(MetricsFrame.CSV_COLUMNS)
        for frame in frames:
            writer.writerow([format_cell(v) for v in frame.csv_row()])


def write_events(path: str | Path, events: Iterable[Event]) -> None:
    with atomic_write(Path(path)) as handle:
        writer = csv.writer(handle)
        writer.writerow(EVENT_COLUMNS)
        for event in events:
            writer.writerow(
                [event.tick, event.agent_id, event.event_type, payload_json(event.payload)]
            )


class EventStream:
    """Streaming events.csv writer usable as a simulation event sink."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            dir=self.path.parent, prefix=self.path.name + ".", suffix=".tmp"
        )
        self._tmp = Path(tmp_name)
        self._handle = os.fdopen(fd, "w", newline="")
        self._writer = csv.writer(self._handle)
        self._writer.writerow(EVENT_COLUMNS)

    def __call__(self, event: Event) -> None:
        self._writer.writerow(
            [event.tick, event.agent_id, event.event_type, payload_json(event.payload)]
        )

    def close(self) -> None:
        if self._handle.closed:
            return
        self._handle.close()
        os.replace(self._tmp, self.path)

    def abort(self) -> None:
        if not self._handle.closed:
            self._handle.close()
        self._tmp.unlink(missing_ok=True)

    def __enter__(self) -> "EventStream":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if exc_type is None:
            self.close()
        else:
            self.abort()


def write_meta(path: str | Path, meta: dict) -> None:
    with atomic_write(Path(path)) as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_summary(path: str | Path, rows: Iterable[dict], columns: tuple[str, ...]) -> None:
    with atomic_write(Path(path)) as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row[c]) for c in columns])
