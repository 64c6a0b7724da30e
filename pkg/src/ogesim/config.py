"""Scenario configuration: typed dataclasses plus strict dict (de)serialization.

Configs travel as nested key-value documents (JSON on disk). Loading is
strict: unknown keys are rejected, types are checked, and range violations
raise ValidationError naming the offending field path. A config
serializes back to an equal document, so resolved configs can be embedded
in run metadata and reloaded bit-for-bit.
"""

import math
from dataclasses import MISSING, asdict, dataclass, field, fields, replace
from typing import Any

from .errors import ValidationError
from .mechanisms import MechanismToggles


@dataclass(frozen=True)
class EconomyConfig:
    emission_rate: float = 1.0      # tokens minted per unit of play effort
    harvest_rate: float = 0.0       # tokens minted per unit of active effective utility
    alpha: float = 0.0              # durability loss per tick held
    beta: float = 0.0               # durability loss per use
    supply_scale: float = 1.0       # strength of supply-scaled wear
    supply_ref: float = 100.0       # asset supply at which scaled wear doubles
    grace_period: int = 14
    min_activity: int = 10
    min_lock: int = 10
    mint_fee: float = 0.0           # tokens, burned
    fee_rate: float = 0.003
    repair_rate: float = 0.02       # durability restored per material
    material_price: float = 1.0     # tokens per material bought from the system, burned
    yield_floor: float = 0.02       # materials per activity at skill 0
    yield_slope: float = 0.5        # extra materials per activity per skill point
    lapse_penalty: float = 0.5
    asset_class: str = "gear"
    asset_base_utility: float = 1.0


@dataclass(frozen=True)
class PoolConfig:
    reserve_numeraire: float
    reserve_token: float


@dataclass(frozen=True)
class InflowConfig:
    """Exogenous numeraire buying the token each tick (speculator demand)."""

    per_tick: float = 0.0
    start: int = 0
    until: int = 0                  # exclusive; no inflow when until <= start


@dataclass(frozen=True)
class HonestConfig:
    count: int = 0
    entry_initial: int = -1         # -1: everyone enters at tick 0
    entry_per_tick: int = 0
    skill: float = 0.5
    effort_per_tick: int = 1
    churn_threshold: float = 0.0
    p2w_tolerance: float = math.inf
    sell_fraction: float = 0.8
    asset_target: int = 1
    ask_price: float = 0.0          # tokens; 0 disables listing
    repair_threshold: float = 0.5
    churn_window: int = 10


@dataclass(frozen=True)
class FarmConfig:
    target_accounts: int
    seeds_held: int = 1
    op_cost: float = 0.0
    effort_per_tick: int = 1
    patience: int = 3


@dataclass(frozen=True)
class RingConfig:
    scholar_count: int
    revenue_share: float = 0.5
    scholars_use_own_seeds: bool = False
    scholar_skill: float = 0.3
    effort_per_tick: int = 1
    defect_prob: float = 0.0
    defect_prob_tethered: float = 0.0


@dataclass(frozen=True)
class WhaleConfig:
    capital: float
    entry_price: float
    exit_price: float
    fleet_target: int
    slippage_margin: float = 1.2


@dataclass(frozen=True)
class DetectorConfig:
    window: int = 10
    price_drop: float = 0.9
    liquidity_floor: float = 0.1


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    seed: int
    ticks: int
    toggles: MechanismToggles = field(default_factory=MechanismToggles)
    economy: EconomyConfig = field(default_factory=EconomyConfig)
    pool: PoolConfig = field(default_factory=lambda: PoolConfig(1000.0, 1000.0))
    inflow: InflowConfig = field(default_factory=InflowConfig)
    honest: HonestConfig = field(default_factory=HonestConfig)
    farms: tuple[FarmConfig, ...] = ()
    rings: tuple[RingConfig, ...] = ()
    whales: tuple[WhaleConfig, ...] = ()
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    description: str = ""

    def with_toggles(self, toggles: MechanismToggles) -> "ScenarioConfig":
        return replace(self, toggles=toggles)

    def to_dict(self) -> dict[str, Any]:
        doc = asdict(self)
        for key in ("farms", "rings", "whales"):
            doc[key] = list(doc[key])
        # Infinities do not survive strict JSON; encode as the string "inf".
        if math.isinf(doc["honest"]["p2w_tolerance"]):
            doc["honest"]["p2w_tolerance"] = "inf"
        return doc


# --- strict loading ---

_RANGE_CHECKS: dict[str, Any] = {
    "seed": lambda v: v >= 0,
    "ticks": lambda v: v > 0,
    "economy.emission_rate": lambda v: v >= 0,
    "economy.harvest_rate": lambda v: v >= 0,
    "economy.alpha": lambda v: v >= 0,
    "economy.beta": lambda v: v >= 0,
    "economy.supply_scale": lambda v: v >= 0,
    "economy.supply_ref": lambda v: v > 0,
    "economy.grace_period": lambda v: v >= 0,
    "economy.min_activity": lambda v: v >= 0,
    "economy.min_lock": lambda v: v >= 0,
    "economy.mint_fee": lambda v: v >= 0,
    "economy.fee_rate": lambda v: 0 <= v < 1,
    "economy.repair_rate": lambda v: v > 0,
    "economy.material_price": lambda v: v >= 0,
    "economy.yield_floor": lambda v: v >= 0,
    "economy.yield_slope": lambda v: v >= 0,
    "economy.lapse_penalty": lambda v: 0 < v <= 1,
    "economy.asset_base_utility": lambda v: v > 0,
    "pool.reserve_numeraire": lambda v: v > 0,
    "pool.reserve_token": lambda v: v > 0,
    "inflow.per_tick": lambda v: v >= 0,
    "honest.count": lambda v: v >= 0,
    "honest.entry_per_tick": lambda v: v >= 0,
    "honest.skill": lambda v: 0 <= v <= 1,
    "honest.effort_per_tick": lambda v: v >= 0,
    "honest.churn_threshold": lambda v: v >= 0,
    "honest.sell_fraction": lambda v: 0 <= v <= 1,
    "honest.asset_target": lambda v: v >= 0,
    "honest.ask_price": lambda v: v >= 0,
    "honest.repair_threshold": lambda v: 0 <= v <= 1,
    "honest.churn_window": lambda v: v > 0,
    "farms.target_accounts": lambda v: v >= 0,
    "farms.seeds_held": lambda v: v >= 1,
    "farms.op_cost": lambda v: v >= 0,
    "farms.patience": lambda v: v >= 1,
    "rings.scholar_count": lambda v: v >= 0,
    "rings.revenue_share": lambda v: 0 <= v <= 1,
    "rings.scholar_skill": lambda v: 0 <= v <= 1,
    "rings.defect_prob": lambda v: 0 <= v <= 1,
    "rings.defect_prob_tethered": lambda v: 0 <= v <= 1,
    "whales.capital": lambda v: v >= 0,
    "whales.entry_price": lambda v: v >= 0,
    "whales.exit_price": lambda v: 0 <= v <= 1,
    "whales.fleet_target": lambda v: v >= 0,
    "whales.slippage_margin": lambda v: v >= 1,
    "detector.window": lambda v: v > 0,
    "detector.price_drop": lambda v: 0 < v < 1,
    "detector.liquidity_floor": lambda v: 0 < v < 1,
}


def _check_range(path: str, value: Any) -> None:
    # Strip list indices: farms[2].op_cost checks as farms.op_cost.
    key = ".".join(p.split("[")[0] for p in path.split("."))
    check = _RANGE_CHECKS.get(key)
    if check is not None and not check(value):
        raise ValidationError(path, f"value {value!r} out of range")


def _coerce(path: str, value: Any, target_type: type) -> Any:
    if target_type is bool:
        if isinstance(value, bool):
            return value
        raise ValidationError(path, f"expected bool, got {type(value).__name__}")
    if target_type is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        raise ValidationError(path, f"expected int, got {type(value).__name__}")
    if target_type is float:
        if value == "inf":
            return math.inf
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise ValidationError(path, f"expected number, got {type(value).__name__}")
    if target_type is str:
        if isinstance(value, str):
            return value
        raise ValidationError(path, f"expected string, got {type(value).__name__}")
    raise ValidationError(path, f"unsupported type {target_type}")


_SCALARS = (bool, int, float, str)

_NESTED = (
    MechanismToggles,
    EconomyConfig,
    PoolConfig,
    InflowConfig,
    HonestConfig,
    DetectorConfig,
)

_LIST_ITEM: dict[tuple[type, str], type] = {
    (ScenarioConfig, "farms"): FarmConfig,
    (ScenarioConfig, "rings"): RingConfig,
    (ScenarioConfig, "whales"): WhaleConfig,
}


def _load_dataclass(cls: type, doc: Any, path: str) -> Any:
    if not isinstance(doc, dict):
        raise ValidationError(path or cls.__name__, "expected a mapping")
    spec_fields = {f.name: f for f in fields(cls)}
    unknown = set(doc) - set(spec_fields)
    if unknown:
        raise ValidationError(
            f"{path + '.' if path else ''}{sorted(unknown)[0]}", "unknown field"
        )
    kwargs = {}
    for name, f in spec_fields.items():
        sub_path = f"{path}.{name}" if path else name
        if name not in doc:
            if f.default is MISSING and f.default_factory is MISSING:  # type: ignore[misc]
                raise ValidationError(sub_path, "required field missing")
            continue
        raw = doc[name]
        if f.type in _SCALARS:
            value = _coerce(sub_path, raw, f.type)
            _check_range(sub_path, value)
        elif f.type in _NESTED:
            value = _load_dataclass(f.type, raw, sub_path)
        elif (cls, name) in _LIST_ITEM:
            if not isinstance(raw, list):
                raise ValidationError(sub_path, "expected a list")
            item_cls = _LIST_ITEM[(cls, name)]
            value = tuple(
                _load_dataclass(item_cls, item, f"{sub_path}[{i}]")
                for i, item in enumerate(raw)
            )
        else:
            raise ValidationError(sub_path, "unsupported field")
        kwargs[name] = value
    return cls(**kwargs)


def load_config(doc: dict[str, Any]) -> ScenarioConfig:
    """Build a ScenarioConfig from a plain document, strictly validated."""
    return _load_dataclass(ScenarioConfig, doc, "")
