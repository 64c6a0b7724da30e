"""Command line behavior: exit codes, written files, error messages."""

import pytest
from conftest import (
    EVENTS_HEADER,
    METRICS_HEADER,
    SUMMARY_HEADER,
    metric_row,
    summary_rows,
    trace_event_rows,
    write_csv,
)

from ogesim_figures.cli import EXIT_INPUT, EXIT_IO, EXIT_OK, main

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture
def run_dir(tmp_path):
    d = tmp_path / "run"
    d.mkdir()
    write_csv(d / "metrics.csv", METRICS_HEADER, [metric_row(t) for t in range(5)])
    write_csv(d / "events.csv", EVENTS_HEADER, trace_event_rows())
    write_csv(d / "summary.csv", SUMMARY_HEADER, summary_rows(7))
    return d


@pytest.mark.parametrize("kind", ["utility_curves", "timeseries", "ablation_bars"])
def test_render_writes_png(kind, run_dir, tmp_path):
    out = tmp_path / f"{kind}.png"
    code = main(["render", "--kind", kind, "--input", str(run_dir), "--out", str(out)])
    assert code == EXIT_OK
    data = out.read_bytes()
    assert data.startswith(PNG_MAGIC)
    assert len(data) > 1000


def test_render_is_deterministic(run_dir, tmp_path):
    out_a, out_b = tmp_path / "a.png", tmp_path / "b.png"
    for out in (out_a, out_b):
        assert main(["render", "--kind", "timeseries",
                     "--input", str(run_dir), "--out", str(out)]) == EXIT_OK
    assert out_a.read_bytes() == out_b.read_bytes()


def test_schema_mismatch_names_column(run_dir, tmp_path, capsys):
    header = [c for c in METRICS_HEADER if c != "lambda"]
    idx = METRICS_HEADER.index("lambda")
    write_csv(run_dir / "metrics.csv", header,
              [[v for i, v in enumerate(metric_row(0)) if i != idx]])
    code = main(["render", "--kind", "timeseries",
                 "--input", str(run_dir), "--out", str(tmp_path / "x.png")])
    assert code == EXIT_INPUT
    err = capsys.readouterr().err
    assert "lambda" in err
    assert "metrics.csv" in err


def test_missing_input_file(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code = main(["render", "--kind", "ablation_bars",
                 "--input", str(empty), "--out", str(tmp_path / "x.png")])
    assert code == EXIT_INPUT
    assert "summary.csv" in capsys.readouterr().err


def test_unwritable_output_is_io_error(run_dir, tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("file, not a directory")
    code = main(["render", "--kind", "timeseries", "--input", str(run_dir),
                 "--out", str(blocker / "fig.png")])
    assert code == EXIT_IO
    assert capsys.readouterr().err


def test_unknown_kind_rejected_by_parser(run_dir, tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["render", "--kind", "pie", "--input", str(run_dir),
              "--out", str(tmp_path / "x.png")])
    assert excinfo.value.code == 2


def test_missing_subcommand_rejected():
    with pytest.raises(SystemExit):
        main([])
