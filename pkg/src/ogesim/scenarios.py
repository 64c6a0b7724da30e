"""Scenario documents, the shipped case-study fixtures, and the ablation driver."""

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import assets as asset_engine
from .config import ScenarioConfig, load_config
from .errors import ParseError, ValidationError
from .identity import AuthStatus, IdentityRegistry
from .mechanisms import ALL_OFF, ALL_ON, TOGGLE_NAMES, MechanismToggles
from .metrics import MetricsFrame
from .sim import RunResult, run_scenario

_FIXTURE_PACKAGE = "ogesim.fixtures"


def parse_scenario(doc: dict) -> ScenarioConfig:
    """Validate a plain-dict scenario document into a config."""
    if not isinstance(doc, dict):
        raise ValidationError("document", "top level must be a mapping")
    return load_config(doc)


def load_scenario_file(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ParseError(f"{path}: {err}") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from err
    return parse_scenario(doc)


def save_scenario(cfg: ScenarioConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")


def builtin_names() -> list[str]:
    root = resources.files(_FIXTURE_PACKAGE)
    names = [
        entry.name[: -len(".json")]
        for entry in root.iterdir()
        if entry.name.endswith(".json")
    ]
    return sorted(names)


def builtin_scenarios() -> list[ScenarioConfig]:
    """All shipped scenario fixtures, sorted by name."""
    out = []
    root = resources.files(_FIXTURE_PACKAGE)
    for name in builtin_names():
        doc = json.loads(root.joinpath(name + ".json").read_text())
        out.append(parse_scenario(doc))
    return out


def builtin(name: str) -> ScenarioConfig:
    root = resources.files(_FIXTURE_PACKAGE)
    entry = root.joinpath(name + ".json")
    if not entry.is_file():
        available = ", ".join(builtin_names())
        raise ValidationError("scenario", f"unknown scenario {name!r}; available: {available}")
    return parse_scenario(json.loads(entry.read_text()))


# --- ablation ---


@dataclass(frozen=True)
class AblationCell:
    name: str
    toggles: MechanismToggles


@dataclass
class CellResult:
    cell: AblationCell
    result: RunResult
    fired: bool

    def summary_row(self) -> dict:
        frames = self.result.frames
        final = frames[-1]
        peak = max(f.spot_price for f in frames)
        ratio = final.spot_price / peak if peak > 0 else 0.0
        return {
            "cell": self.cell.name,
            "death_spiral": self.fired,
            "price_peak_ratio": ratio,
            "final_lambda": final.lambda_coeff,
            "final_retention": final.retention,
        }


SUMMARY_COLUMNS = ("cell", "death_spiral", "price_peak_ratio", "final_lambda", "final_retention")


def default_cells() -> list[AblationCell]:
    """The two full cells plus one leave-one-out cell per mechanism."""
    cells = [AblationCell("full_on", ALL_ON), AblationCell("full_off", ALL_OFF)]
    for name in sorted(TOGGLE_NAMES):
        cells.append(AblationCell(f"no_{name}", ALL_ON.without(name)))
    return cells


def run_ablation(
    cfg: ScenarioConfig,
    cells: list[AblationCell] | None = None,
    collect_events: bool = False,
) -> list[CellResult]:
    """Run one simulation per toggle cell on the scenario's seed.

    Cells are independent; each run uses the identical seed and roster so
    any divergence is attributable to the toggles alone.
    """
    if cells is None:
        cells = default_cells()
    out = []
    for cell in cells:
        cell_cfg = cfg.with_toggles(cell.toggles)
        result = run_scenario(cell_cfg, collect_events=collect_events)
        out.append(CellResult(cell=cell, result=result, fired=result.death_spiral()))
    return out


# --- scripted single-asset transfer trace ---


@dataclass(frozen=True)
class TraceSample:
    tick: int
    phase: str  # "tick" start-of-tick sample; "pre"/"post" straddle the transfer
    u_eff: float
    durability: float


def utility_cliff_trace(
    ticks: int = 10,
    transfer_tick: int = 5,
    alpha: float = 0.05,
    base_utility: float = 1.0,
) -> list[TraceSample]:
    """Single asset, time-decay only, sold to a second holder mid-run.

    Produces a start-of-tick effective-utility series with an extra pre/post
    pair at the transfer tick. The post/pre ratio at the transfer is exactly
    one half (the attribution factor is a power of two), and successive
    per-tick differences equal alpha times base utility on the origin side
    and half that on the secondary side.
    """
    registry = IdentityRegistry()
    origin = registry.register(b"trace-origin-seed", 0, human=True)
    buyer = registry.register(b"trace-buyer-seed", 0, human=True)
    asset = asset_engine.Asset(
        asset_id=1, class_id="traced", hash_origin=origin, current_owner=origin,
        base_utility=base_utility,
    )
    params = asset_engine.DegradationParams(alpha=alpha, beta=0.0)
    samples: list[TraceSample] = []

    def u() -> float:
        return asset_engine.effective_utility(asset, AuthStatus.FRESH, ALL_ON)

    for tick in range(ticks):
        if tick == transfer_tick:
            samples.append(TraceSample(tick, "pre", u(), asset.durability))
            asset_engine.transfer(asset, buyer, tick, registry)
            samples.append(TraceSample(tick, "post", u(), asset.durability))
        else:
            samples.append(TraceSample(tick, "tick", u(), asset.durability))
        asset_engine.apply_degradation(asset, 1.0, 0.0, params, circulating_supply=1.0)
    return samples


def trace_frames(samples: list[TraceSample]) -> list[MetricsFrame]:
    """Schema-conformant placeholder frames for a scripted trace directory.

    The trace has no market or population; every column the trace does not
    exercise is pinned to its neutral value so downstream readers of the
    frozen schema see a well-formed file.
    """
    ticks = sorted({s.tick for s in samples})
    return [
        MetricsFrame(
            tick=t,
            spot_price=1.0,
            s_token=0.0,
            s_assets=1,
            lambda_coeff=1.0,
            gini_utility=0.0,
            dominance_index=0.0,
            retention=1.0,
            bot_capture=0.0,
            liquidity=1.0,
        )
        for t in ticks
    ]
