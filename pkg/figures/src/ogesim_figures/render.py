"""Turn a run or ablation directory into image files."""

from dataclasses import dataclass
from pathlib import Path

from matplotlib.figure import Figure

from . import plots, schema

KINDS = ("utility_curves", "timeseries", "ablation_bars")

# which file inside the input directory each kind consumes
INPUT_FILE = {
    "utility_curves": "events.csv",
    "timeseries": "metrics.csv",
    "ablation_bars": "summary.csv",
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str  # one of KINDS
    input_dir: Path
    out_path: Path


def build(kind: str, input_dir: Path) -> Figure:
    """Read the kind's input file and return the built Figure."""
    if kind == "utility_curves":
        return plots.utility_curves(schema.read_events(input_dir / "events.csv"))
    if kind == "timeseries":
        return plots.timeseries(schema.read_metrics(input_dir / "metrics.csv"))
    if kind == "ablation_bars":
        return plots.ablation_bars(schema.read_summary(input_dir / "summary.csv"))
    raise ValueError(f"unknown figure kind {kind!r}")


def render(spec: FigureSpec) -> Path:
    """Build and write one raster image; returns the written path."""
    fig = build(spec.kind, Path(spec.input_dir))
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    # pin the metadata so rerenders of the same inputs are byte-stable
    # across matplotlib patch versions
    fig.savefig(out, dpi=plots.DPI, metadata={"Software": "ogesim-figures"})
    return out
