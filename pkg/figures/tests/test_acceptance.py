"""End-to-end gate: renders from real simulator artifacts.

The run inputs are produced by invoking the simulator CLI in a separate
process; the only shared surface is the frozen CSV files.
"""

import subprocess
import sys

import pytest
from conftest import SUMMARY_HEADER, summary_rows, write_csv

from ogesim_figures.cli import EXIT_OK, main
from ogesim_figures.render import build

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture(scope="module")
def trace_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("trace") / "run"
    proc = subprocess.run(
        [sys.executable, "-m", "ogesim", "trace-cliff", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return out


def test_gate_11_utility_curves_show_transfer_cliff(trace_dir, tmp_path):
    """Rendering the scripted transfer trace exits 0 and the extracted
    series is discontinuous at tick 5 with exactly a 0.5 ratio."""
    out = tmp_path / "utility.png"
    code = main(["render", "--kind", "utility_curves",
                 "--input", str(trace_dir), "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_bytes().startswith(PNG_MAGIC)

    fig = build("utility_curves", trace_dir)
    origin, secondary = [l for l in fig.axes[0].lines
                         if not l.get_label().startswith("_")]
    assert list(origin.get_xdata())[-1] == 5
    assert list(secondary.get_xdata())[0] == 5
    assert secondary.get_ydata()[0] / origin.get_ydata()[-1] == 0.5


def test_gate_11_ablation_bars_seven_cells(tmp_path):
    run = tmp_path / "ablation"
    run.mkdir()
    write_csv(run / "summary.csv", SUMMARY_HEADER, summary_rows(7))
    out = tmp_path / "bars.png"
    code = main(["render", "--kind", "ablation_bars",
                 "--input", str(run), "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_bytes().startswith(PNG_MAGIC)
    assert len(build("ablation_bars", run).axes[0].patches) == 7


def test_gate_11_all_kinds_exit_zero_on_conformant_inputs(trace_dir, tmp_path):
    run = tmp_path / "full"
    run.mkdir()
    (run / "metrics.csv").write_bytes((trace_dir / "metrics.csv").read_bytes())
    (run / "events.csv").write_bytes((trace_dir / "events.csv").read_bytes())
    write_csv(run / "summary.csv", SUMMARY_HEADER, summary_rows(7))
    for kind in ("utility_curves", "timeseries", "ablation_bars"):
        code = main(["render", "--kind", kind, "--input", str(run),
                     "--out", str(tmp_path / f"{kind}.png")])
        assert code == EXIT_OK, kind
