"""Economy state: the conserved token ledger and the emission/burn taps.

All token movement funnels through the helpers here. Because balances,
reserves and cumulative counters are integers on the same grid, the supply
identity

    pool.reserve_token + sum(balances) == cumulative_minted - cumulative_burned

holds exactly at every tick; `check_supply_identity` asserts it after each
phase-complete tick. Minting is gated on authentication when identity
enforcement is on. Burns are the only sinks: mint fees and repair-material
purchases. Retiring a fully worn asset removes the asset, never tokens.
"""

from dataclasses import dataclass, field
from typing import Any

from .assets import Asset
from .errors import InsufficientBalance, LapsedIdentity, NonPositiveAmount, UnknownIdentity
from .identity import AuthStatus, IdentityRegistry
from .market import LiquidityPool, ListingBook
from .mechanisms import MechanismToggles
from .units import TOKEN_UNIT


@dataclass
class Event:
    tick: int
    agent_id: str
    event_type: str
    payload: dict[str, Any] = field(default_factory=dict)


@dataclass
class EconomyState:
    registry: IdentityRegistry
    pool: LiquidityPool
    book: ListingBook
    run_seed: int
    tick: int = 0
    assets: dict[int, Asset] = field(default_factory=dict)
    holdings: dict[str, list[int]] = field(default_factory=dict)   # account -> asset ids
    balances: dict[str, int] = field(default_factory=dict)         # token grid units
    num_balances: dict[str, int] = field(default_factory=dict)     # numeraire grid units
    materials: dict[str, int] = field(default_factory=dict)        # material grid units
    cumulative_minted: int = 0
    cumulative_burned: int = 0
    materials_produced: int = 0
    materials_consumed: int = 0
    emitted_by: dict[str, int] = field(default_factory=dict)       # cumulative mint per account
    last_action_tick: dict[str, int] = field(default_factory=dict)
    active_sets: dict[str, set[int]] = field(default_factory=dict)
    next_asset_id: int = 1

    def genesis_pool_mint(self) -> None:
        """Book the initial pool token reserve as minted supply so the
        conservation identity starts true."""
        self.cumulative_minted += self.pool.reserve_token

    # --- conserved-token taps ---

    def credit_mint(self, account: str, units: int) -> None:
        if units < 0:
            raise NonPositiveAmount(str(units))
        self.balances[account] = self.balances.get(account, 0) + units
        self.cumulative_minted += units
        self.emitted_by[account] = self.emitted_by.get(account, 0) + units

    def burn(self, account: str, units: int) -> None:
        if units < 0:
            raise NonPositiveAmount(str(units))
        held = self.balances.get(account, 0)
        if held < units:
            raise InsufficientBalance(f"{account} holds {held}, burn {units}")
        self.balances[account] = held - units
        self.cumulative_burned += units

    def supply(self) -> int:
        """Outstanding token supply in grid units (minted minus burned)."""
        return self.cumulative_minted - self.cumulative_burned

    def supply_tokens(self) -> float:
        return self.supply() / TOKEN_UNIT

    def check_supply_identity(self) -> None:
        held = self.pool.reserve_token + sum(self.balances.values())
        if held != self.supply():
            raise AssertionError(
                f"supply identity broken at tick {self.tick}: "
                f"held {held} != minted-burned {self.supply()}"
            )

    # --- views ---

    def live_asset_count(self) -> int:
        return len(self.assets)

    def touch(self, account: str) -> None:
        self.last_action_tick[account] = self.tick

    def active_accounts(self, window: int = 10) -> list[str]:
        """Accounts that acted within the trailing window, sorted for determinism."""
        floor = self.tick - window
        return sorted(a for a, t in self.last_action_tick.items() if t > floor)


def token_emission(
    state: EconomyState,
    worker: str,
    activity: int,
    rate_units: int,
    toggles: MechanismToggles,
    status: AuthStatus,
) -> int:
    """Mint activity * rate to a worker. Lapsed workers mint nothing while
    identity enforcement is on. Returns the minted grid units."""
    if not state.registry.is_registered(worker):
        raise UnknownIdentity(worker)
    if toggles.identity_enforced and status is AuthStatus.LAPSED:
        raise LapsedIdentity(worker)
    minted = activity * rate_units
    state.credit_mint(worker, minted)
    return minted
