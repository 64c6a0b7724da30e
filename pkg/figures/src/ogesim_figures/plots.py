"""Figure builders.

Each builder takes parsed rows and returns a matplotlib Figure; saving
and closing are the caller's job. Figures are constructed directly (no
pyplot state machine) so batch rendering stays deterministic and leak
free.
"""

from matplotlib.figure import Figure

DPI = 150  # committed raster resolution; tests rely on it

TIMESERIES_PANELS = (
    ("spot_price", "spot price"),
    ("s_token", "token supply"),
    ("lambda", "verified-human share"),
    ("retention", "retention"),
)


def utility_curves(events: list[dict]) -> Figure:
    """Effective utility of a traced asset against time.

    The trace marks its ownership transfer with a pre/post sample pair at
    one tick. The two ownership segments are drawn as separate lines so
    the drop stays a genuine discontinuity instead of a steep ramp.
    """
    samples = [e for e in events if e["event_type"] == "utility_sample"]
    if not samples:
        raise ValueError("no utility_sample events in input")
    samples.sort(key=lambda e: (e["tick"], e["payload"]["phase"] == "post"))
    cuts = [e["tick"] for e in samples if e["payload"]["phase"] == "pre"]
    cut = min(cuts) if cuts else samples[-1]["tick"] + 1
    first = [
        (e["tick"], e["payload"]["u_eff"])
        for e in samples
        if e["tick"] < cut or e["payload"]["phase"] == "pre"
    ]
    second = [
        (e["tick"], e["payload"]["u_eff"])
        for e in samples
        if e["tick"] > cut or e["payload"]["phase"] == "post"
    ]
    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.add_subplot()
    ax.plot(*zip(*first), marker="o", label="origin holder")
    if second:
        ax.plot(*zip(*second), marker="o", label="secondary holder")
        ax.axvline(cut, color="0.7", linestyle="--", linewidth=1)
    ax.set_xlabel("tick")
    ax.set_ylabel("effective utility")
    ax.set_title("asset utility across an ownership transfer")
    ax.legend()
    return fig


def timeseries(frames: list[dict]) -> Figure:
    """Price, supply, verified-human share and retention, one panel each."""
    ticks = [f["tick"] for f in frames]
    fig = Figure(figsize=(9.0, 6.0))
    axes = fig.subplots(2, 2)
    for ax, (column, label) in zip(axes.ravel(), TIMESERIES_PANELS):
        ax.plot(ticks, [f[column] for f in frames])
        ax.set_xlabel("tick")
        ax.set_ylabel(label)
    fig.tight_layout()
    return fig


def ablation_bars(rows: list[dict]) -> Figure:
    """One bar per toggle cell: end-of-run price against its running peak.

    Cells that ended in collapse are drawn grey, survivors blue.
    """
    fig = Figure(figsize=(7.0, 4.0))
    ax = fig.add_subplot()
    positions = range(len(rows))
    heights = [r["price_peak_ratio"] for r in rows]
    colors = ["#9a9a9a" if r["death_spiral"] else "#2a7fba" for r in rows]
    ax.bar(positions, heights, color=colors)
    ax.set_xticks(list(positions))
    ax.set_xticklabels([r["cell"] for r in rows], rotation=30, ha="right")
    ax.set_ylabel("final price / peak price")
    ax.set_title("mechanism ablation")
    fig.tight_layout()
    return fig
