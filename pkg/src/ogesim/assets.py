"""Asset engine: minting, utility, transfers, durability, repair.

Assets are minted against recorded play effort and carry their minter's
account id as a permanent origin mark. Effective utility composes four
multiplicative factors:

    attribution x lapse x durability x base_utility

* attribution is 0.5 while the holder differs from the origin account
  (asymmetric decay toggle); it snaps back to 1.0 if the asset ever
  returns to its origin. Only the origin matters, not the path.
* lapse is a configurable penalty (default 0.5) while the owner's
  authentication has lapsed (identity toggle).
* durability scales utility linearly (entropy toggle); a fully worn asset
  is worth nothing even to its creator.

Durability loses alpha per tick held plus beta per use. With supply
scaling on, both rates grow affinely with circulating asset supply, so a
glut accelerates wear instead of piling up forever.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import (
    ForeignAsset,
    InsufficientEffort,
    LapsedIdentity,
    SelfTransfer,
    TimeLockActive,
    UnknownIdentity,
)
from .identity import AuthStatus, IdentityRegistry
from .mechanisms import MechanismToggles
from .units import MATERIAL_UNIT

SECONDARY_HOLDER_FACTOR = 0.5  # utility multiplier away from the origin account
DEFAULT_LAPSE_PENALTY = 0.5


@dataclass
class Asset:
    asset_id: int
    class_id: str
    hash_origin: str      # account that minted it; never changes
    current_owner: str
    base_utility: float
    durability: float = 1.0
    transfer_count: int = 0
    minted_tick: int = 0


@dataclass(frozen=True)
class PopeReceipt:
    """Record of play effort backing a mint request."""

    worker: str
    activity_ticks: int
    time_lock_start: int
    skill_score: float


@dataclass
class RepairMaterial:
    """Stack of repair materials, quantity on the integer material grid."""

    quantity: int
    producer: str = ""


@dataclass(frozen=True)
class MintPolicy:
    min_activity: int = 10
    min_lock: int = 10


@dataclass(frozen=True)
class DegradationParams:
    alpha: float            # durability loss per tick held
    beta: float             # durability loss per use
    supply_scaling: bool = False
    scale_factor: float = 1.0   # strength of the supply term
    supply_ref: float = 100.0   # supply at which the scaled rate doubles (at factor 1)


# --- minting ---

def mint_pope(
    receipt: PopeReceipt,
    class_id: str,
    base_utility: float,
    policy: MintPolicy,
    tick: int,
    worker_status: AuthStatus,
    asset_id: int,
) -> Asset:
    """Mint a fresh asset against a play-effort receipt.

    The receipt must carry at least the policy's minimum activity, the time
    lock must have run out, and the worker's authentication must not have
    lapsed. The new asset starts at full durability with origin and owner
    both set to the worker.
    """
    if worker_status is AuthStatus.LAPSED:
        raise LapsedIdentity(receipt.worker)
    if receipt.activity_ticks < policy.min_activity:
        raise InsufficientEffort(
            f"{receipt.activity_ticks} activity ticks, {policy.min_activity} required"
        )
    if tick - receipt.time_lock_start < policy.min_lock:
        raise TimeLockActive(
            f"lock started at {receipt.time_lock_start}, {policy.min_lock} ticks required"
        )
    return Asset(
        asset_id=asset_id,
        class_id=class_id,
        hash_origin=receipt.worker,
        current_owner=receipt.worker,
        base_utility=base_utility,
        durability=1.0,
        transfer_count=0,
        minted_tick=tick,
    )


# --- utility ---

def effective_utility(
    asset: Asset,
    owner_status: AuthStatus,
    toggles: MechanismToggles,
    lapse_penalty: float = DEFAULT_LAPSE_PENALTY,
) -> float:
    """Utility the current owner actually gets from the asset, per tick active."""
    attribution = 1.0
    if toggles.asymmetric_decay and asset.current_owner != asset.hash_origin:
        attribution = SECONDARY_HOLDER_FACTOR
    lapse = 1.0
    if toggles.identity_enforced and owner_status is AuthStatus.LAPSED:
        lapse = lapse_penalty
    durability_factor = asset.durability if toggles.entropy_enabled else 1.0
    return attribution * lapse * durability_factor * asset.base_utility


# --- transfer ---

def transfer(
    asset: Asset,
    new_owner: str,
    tick: int,
    registry: IdentityRegistry | None = None,
) -> Asset:
    """Move ownership. Durability is untouched; the origin mark never moves.

    The asset comes back deactivated for the new owner (activation is
    recomputed per owner each tick). Passing a registry enforces that the
    receiving account exists.
    """
    if new_owner == asset.current_owner:
        raise SelfTransfer(asset.current_owner)
    if registry is not None and not registry.is_registered(new_owner):
        raise UnknownIdentity(new_owner)
    asset.current_owner = new_owner
    asset.transfer_count += 1
    return asset


# --- durability ---

def scaled_rates(params: DegradationParams, circulating_supply: float) -> tuple[float, float]:
    """Per-tick and per-use wear rates after optional supply scaling."""
    if not params.supply_scaling:
        return params.alpha, params.beta
    scale = 1.0 + params.scale_factor * (circulating_supply / params.supply_ref)
    return params.alpha * scale, params.beta * scale


def degradation_step(
    delta_t: float,
    delta_n: float,
    params: DegradationParams,
    circulating_supply: float = 0.0,
) -> float:
    """Raw durability loss for a holding interval: alpha*dt + beta*dn (pre-clamp)."""
    alpha, beta = scaled_rates(params, circulating_supply)
    return alpha * delta_t + beta * delta_n

def apply_degradation(
    asset: Asset,
    delta_t: float,
    delta_n: float,
    params: DegradationParams,
    circulating_supply: float = 0.0,
) -> Asset:
    """Apply wear for time held and uses; durability clamps to [0, 1]."""
    loss = degradation_step(delta_t, delta_n, params, circulating_supply)
    durability = asset.durability - loss
    if durability < 0.0:
        durability = 0.0
    elif durability > 1.0:
        durability = 1.0
    asset.durability = durability
    return asset


# --- repair ---

def repair(asset: Asset, materials: RepairMaterial, rate: float) -> tuple[Asset, RepairMaterial]:
    """Consume materials to restore durability at `rate` durability per material.

    Consumes no more than needed to reach full durability and no more than
    the stack holds; returns the asset and the remaining stack.
    """
    if asset.durability >= 1.0 or materials.quantity <= 0 or rate <= 0:
        return asset, materials
    missing = 1.0 - asset.durability
    # Material units needed, rounded up so a full repair actually reaches 1.0.
    needed_units = math.ceil(missing / rate * MATERIAL_UNIT)
    consumed = min(materials.quantity, needed_units)
    restored = rate * (consumed / MATERIAL_UNIT)
    asset.durability = min(1.0, asset.durability + restored)
    materials.quantity -= consumed
    return asset, materials


def produce_repair_materials(
    receipt: PopeReceipt,
    yield_curve: Callable[[float], float],
    worker_status: AuthStatus = AuthStatus.FRESH,
) -> RepairMaterial:
    """Turn recorded play into repair materials, weighted by skill.

    quantity = yield_curve(skill) * activity, on the material grid. The
    yield curve must be monotone in skill; its floor at skill zero is meant
    to under-yield maintenance cost so pure grinding cannot sustain gear.
    """
    if worker_status is AuthStatus.LAPSED:
        raise LapsedIdentity(receipt.worker)
    per_activity = yield_curve(receipt.skill_score)
    if per_activity < 0:
        raise ValueError("yield curve must be non-negative")
    quantity = round(per_activity * receipt.activity_ticks * MATERIAL_UNIT)
    return RepairMaterial(quantity=quantity, producer=receipt.worker)


# --- activation ---

def activate_set(
    holdings: Iterable[Asset],
    requested: Iterable[int],
    single_slot: bool,
    utilities: Mapping[int, float],
) -> set[int]:
    """Pick which of the requested assets may be active for one account.

    With single slot off, every requested asset activates. With it on, at
    most one asset per class activates: the requested asset with the highest
    effective utility, ties broken by the lowest asset id.
    """
    held = {a.asset_id: a for a in holdings}
    requested = set(requested)
    foreign = requested - held.keys()
    if foreign:
        raise ForeignAsset(f"not held: {sorted(foreign)}")
    if not single_slot:
        return requested
    best: dict[str, int] = {}
    for asset_id in sorted(requested):
        asset = held[asset_id]
        current = best.get(asset.class_id)
        if current is None:
            best[asset.class_id] = asset_id
            continue
        u_new, u_cur = utilities[asset_id], utilities[current]
        if u_new > u_cur:  # strict: equal utility keeps the lower id
            best[asset.class_id] = asset_id
    return set(best.values())
