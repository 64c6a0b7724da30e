"""Frozen-format readers: typed parsing and fail-fast column checks."""

import pytest
from conftest import (
    EVENTS_HEADER,
    METRICS_HEADER,
    SUMMARY_HEADER,
    metric_row,
    sample_row,
    summary_rows,
    write_csv,
)

from ogesim_figures.schema import (
    SchemaMismatch,
    read_events,
    read_metrics,
    read_summary,
)


def test_read_metrics_types(tmp_path):
    path = write_csv(tmp_path / "metrics.csv", METRICS_HEADER,
                     [metric_row(0), metric_row(1, price=2.5)])
    rows = read_metrics(path)
    assert [r["tick"] for r in rows] == [0, 1]
    assert isinstance(rows[0]["s_assets"], int)
    assert rows[1]["spot_price"] == 2.5
    assert rows[0]["lambda"] == 1.0


def test_read_events_decodes_payload(tmp_path):
    path = write_csv(tmp_path / "events.csv", EVENTS_HEADER,
                     [sample_row(3, "tick", 0.85, 0.85)])
    (event,) = read_events(path)
    assert event["tick"] == 3
    assert event["event_type"] == "utility_sample"
    assert event["payload"]["phase"] == "tick"
    assert event["payload"]["u_eff"] == 0.85


def test_read_summary_booleans(tmp_path):
    path = write_csv(tmp_path / "summary.csv", SUMMARY_HEADER, summary_rows(3))
    rows = read_summary(path)
    assert [r["cell"] for r in rows] == ["full_on", "full_off", "no_mechanism_0"]
    assert [r["death_spiral"] for r in rows] == [False, True, True]
    assert rows[0]["price_peak_ratio"] == pytest.approx(0.9)


@pytest.mark.parametrize("dropped", ["lambda", "tick", "retention"])
def test_metrics_missing_column_named(tmp_path, dropped):
    """The error carries the file and the first absent column."""
    header = [c for c in METRICS_HEADER if c != dropped]
    idx = METRICS_HEADER.index(dropped)
    row = [v for i, v in enumerate(metric_row(0)) if i != idx]
    path = write_csv(tmp_path / "metrics.csv", header, [row])
    with pytest.raises(SchemaMismatch) as excinfo:
        read_metrics(path)
    assert excinfo.value.column == dropped
    assert "metrics.csv" in str(excinfo.value)
    assert dropped in str(excinfo.value)


def test_events_missing_payload_column(tmp_path):
    path = write_csv(tmp_path / "events.csv", EVENTS_HEADER[:-1],
                     [[0, "trace", "utility_sample"]])
    with pytest.raises(SchemaMismatch, match="payload"):
        read_events(path)


def test_summary_missing_cell_column(tmp_path):
    path = write_csv(tmp_path / "summary.csv", SUMMARY_HEADER[1:],
                     [row[1:] for row in summary_rows(2)])
    with pytest.raises(SchemaMismatch, match="cell"):
        read_summary(path)


def test_extra_columns_tolerated(tmp_path):
    """Producers may append columns without breaking this reader."""
    path = write_csv(tmp_path / "metrics.csv", METRICS_HEADER + ["debug"],
                     [metric_row(0) + ["x"]])
    assert read_metrics(path)[0]["tick"] == 0
