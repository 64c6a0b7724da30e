"""Agent archetypes and their decision rules.

Policies see an Observation built from public data only: prices, published
aggregate indices, the agent's own balances, assets and authentication
state. The simulator's ground-truth human flags are never in it, so no
policy can branch on information a real player would not have.

decide() is deterministic given (policy state, observation, substream).
Stochastic choices (scholar defection) draw from a counter-based substream
keyed by agent and tick, so adding or removing one agent never disturbs
another agent's draws.

Archetypes:

* HonestPlayer: plays, keeps gear repaired, cashes out a fraction of
  earnings, and quits for good after a sustained stretch of worthless
  rewards or a pay-to-win index beyond tolerance.
* BotFarm: runs as many accounts as it can register, sells every reward
  immediately, never re-authenticates, abandons unprofitable accounts.
* ManagerRing: funds scholar accounts that play and remit a revenue share
  to the manager, who cashes out. Scholars may defect and keep their
  earnings; defection is more likely when assets are identity-tethered.
* Whale: waits for a price signal, swaps in capital sized to buy a fleet
  off the book, harvests passively, and dumps everything on a trailing
  stop.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Union

import numpy as np

from .errors import NoHumanPlayers
from .identity import AuthStatus
from .mechanisms import MechanismToggles
from .units import MATERIAL_UNIT, TOKEN_UNIT

# --- actions ---


@dataclass(frozen=True)
class Play:
    activity: int


@dataclass(frozen=True)
class Authenticate:
    pass


@dataclass(frozen=True)
class Mint:
    class_id: str


@dataclass(frozen=True)
class List:
    asset_id: int
    price: int  # token grid units


@dataclass(frozen=True)
class Buy:
    class_id: str
    max_price: int  # token grid units


@dataclass(frozen=True)
class SwapIn:
    amount: int  # numeraire grid units


@dataclass(frozen=True)
class SwapOut:
    amount: int | None  # token grid units; None sells the full balance


@dataclass(frozen=True)
class Repair:
    asset_id: int
    quantity: int  # material grid units to apply


@dataclass(frozen=True)
class Remit:
    to_account: str
    amount: int  # token grid units


@dataclass(frozen=True)
class Exit:
    pass


AgentAction = Union[Play, Authenticate, Mint, List, Buy, SwapIn, SwapOut, Repair, Remit, Exit]

# (account, action) pairs; one agent may steer many accounts.
AccountAction = tuple[str, AgentAction]


class Archetype(Enum):
    HONEST = "honest"
    BOT = "bot"
    SCHOLAR = "scholar"
    MANAGER = "manager"
    WHALE = "whale"
    SYSTEM = "system"


CAPITAL_ARCHETYPES = frozenset({Archetype.MANAGER, Archetype.WHALE})


# --- observation (public data only) ---


@dataclass(frozen=True)
class AssetView:
    asset_id: int
    class_id: str
    durability: float
    u_eff: float
    active: bool
    listed: bool


@dataclass
class AccountView:
    account: str
    registered: bool
    status: AuthStatus | None
    balance: int            # token grid units
    numeraire: int          # numeraire grid units
    materials: int          # material grid units
    mint_progress: int
    last_mint_tick: int
    last_emission: int      # token grid units minted to this account last tick
    assets: list[AssetView] = field(default_factory=list)


@dataclass
class Observation:
    tick: int
    spot: float
    peak_spot: float
    dominance: float        # last published pay-to-win index
    toggles: MechanismToggles
    grace_period: int
    min_activity: int
    min_lock: int
    mint_fee: int           # token grid units
    material_price: float   # tokens per material
    repair_rate: float      # durability per material
    best_asks: dict[str, int]   # class -> cheapest listed ask, token grid units
    accounts: list[AccountView] = field(default_factory=list)


def _should_auth(obs: Observation, view: AccountView) -> bool:
    return (
        obs.toggles.identity_enforced
        and view.registered
        and view.status is AuthStatus.IN_GRACE
    )


def _token_value(units: int, spot: float) -> float:
    return units / TOKEN_UNIT * spot


# --- honest player ---


@dataclass
class HonestPlayer:
    agent_id: str
    skill: float = 0.5
    effort_per_tick: int = 1
    churn_threshold: float = 0.0    # numeraire value per unit effort
    p2w_tolerance: float = math.inf
    sell_fraction: float = 0.8
    asset_target: int = 1
    asset_class: str = "gear"
    surplus_cap: int = 2            # unsold listings tolerated before pausing mints
    ask_price: int = 0              # token grid units for surplus listings; 0 = never list
    repair_threshold: float = 0.5
    churn_window: int = 10
    archetype = Archetype.HONEST

    exited: bool = False
    low_streak: int = 0
    _played: bool = field(default=False, repr=False)

    def decide(self, obs: Observation, rng: np.random.Generator) -> list[AccountAction]:
        if self.exited:
            return []
        view = obs.accounts[0]
        if not view.registered:
            return []
        acct = view.account

        # Quit for good when rewards stay worthless or the game is pay-to-win.
        if self._played:
            per_effort = _token_value(view.last_emission, obs.spot) / max(1, self.effort_per_tick)
            self.low_streak = self.low_streak + 1 if per_effort < self.churn_threshold else 0
        if self.low_streak >= self.churn_window or obs.dominance > self.p2w_tolerance:
            self.exited = True
            actions: list[AccountAction] = []
            if view.balance > 0:
                actions.append((acct, SwapOut(None)))
            actions.append((acct, Exit()))
            return actions

        actions = []
        if _should_auth(obs, view):
            actions.append((acct, Authenticate()))
        actions.append((acct, Play(self.effort_per_tick)))
        self._played = True

        held = view.assets
        unlisted = [a for a in held if not a.listed]
        listed_count = len(held) - len(unlisted)
        class_id = held[0].class_id if held else None

        # Mint when the effort receipt and time lock allow it, unless unsold
        # surplus is already piling up.
        want_more = len(unlisted) < self.asset_target or (
            self.ask_price > 0 and listed_count < self.surplus_cap
        )
        if (
            want_more
            and view.mint_progress >= obs.min_activity
            and obs.tick - view.last_mint_tick >= obs.min_lock
            and view.balance >= obs.mint_fee
        ):
            actions.append((acct, Mint(self.asset_class)))

        # Keep the best assets, list the rest.
        repair_cost_units = 0
        if unlisted:
            keep = sorted(unlisted, key=lambda a: (-a.durability, a.asset_id))[: self.asset_target]
            keep_ids = {a.asset_id for a in keep}
            if self.ask_price > 0:
                for view_a in unlisted:
                    if view_a.asset_id not in keep_ids:
                        actions.append((acct, List(view_a.asset_id, self.ask_price)))
            for view_a in keep:
                if view_a.durability < self.repair_threshold:
                    needed = math.ceil(
                        (1.0 - view_a.durability) / obs.repair_rate * MATERIAL_UNIT
                    )
                    actions.append((acct, Repair(view_a.asset_id, needed)))
                    shortfall = max(0, needed - view.materials)
                    repair_cost_units += round(
                        shortfall / MATERIAL_UNIT * obs.material_price * TOKEN_UNIT
                    )

        # Cash out a slice of what is not earmarked for fees and repairs.
        reserve = obs.mint_fee + repair_cost_units
        sellable = view.balance - reserve
        if sellable > 0:
            amount = int(sellable * self.sell_fraction)
            if amount > 0:
                actions.append((acct, SwapOut(amount)))
        return actions


# --- bot farm ---


@dataclass
class BotFarm:
    agent_id: str
    target_accounts: int
    seeds_held: int = 1
    op_cost: float = 0.0        # numeraire per account per tick
    effort_per_tick: int = 1
    patience: int = 3
    archetype = Archetype.BOT

    abandoned: set[str] = field(default_factory=set)
    _streaks: dict[str, int] = field(default_factory=dict)

    def decide(self, obs: Observation, rng: np.random.Generator) -> list[AccountAction]:
        actions: list[AccountAction] = []
        for view in obs.accounts:
            acct = view.account
            if not view.registered or acct in self.abandoned:
                continue
            value = _token_value(view.last_emission, obs.spot)
            streak = self._streaks.get(acct, 0)
            streak = streak + 1 if value < self.op_cost else 0
            self._streaks[acct] = streak
            if streak >= self.patience:
                self.abandoned.add(acct)
                if view.balance > 0:
                    actions.append((acct, SwapOut(None)))
                continue
            actions.append((acct, Play(self.effort_per_tick)))
            if view.balance > 0:
                actions.append((acct, SwapOut(None)))
        return actions


# --- manager/scholar ring ---


@dataclass
class ManagerRing:
    agent_id: str
    scholar_count: int
    revenue_share: float = 0.5
    scholars_use_own_seeds: bool = False
    scholar_skill: float = 0.3
    effort_per_tick: int = 1
    defect_prob: float = 0.0            # per scholar per tick, identity off
    defect_prob_tethered: float = 0.0   # per scholar per tick, identity on
    archetype = Archetype.MANAGER

    defected: set[str] = field(default_factory=set)

    def decide(self, obs: Observation, rng: np.random.Generator) -> list[AccountAction]:
        if not obs.accounts:
            return []
        manager = obs.accounts[0]
        scholars = obs.accounts[1:]
        actions: list[AccountAction] = []

        prob = (
            self.defect_prob_tethered
            if obs.toggles.identity_enforced
            else self.defect_prob
        )
        # One vector of draws per tick; position i belongs to scholar i, so
        # one scholar's defection never shifts another's future draws.
        draws = rng.random(len(scholars)) if prob > 0 and scholars else None

        for i, view in enumerate(scholars):
            acct = view.account
            if not view.registered:
                continue
            if acct not in self.defected and draws is not None and draws[i] < prob:
                self.defected.add(acct)
            if _should_auth(obs, view) and self.scholars_use_own_seeds:
                actions.append((acct, Authenticate()))
            actions.append((acct, Play(self.effort_per_tick)))
            if view.balance <= 0:
                continue
            if acct in self.defected:
                actions.append((acct, SwapOut(None)))
            else:
                cut = int(view.balance * self.revenue_share)
                if cut > 0:
                    actions.append((acct, Remit(manager.account, cut)))
                rest = view.balance - cut
                if rest > 0:
                    actions.append((acct, SwapOut(rest)))
        if manager.registered and manager.balance > 0:
            actions.append((manager.account, SwapOut(None)))
        return actions


# --- whale ---


@dataclass
class Whale:
    agent_id: str
    capital: float              # numeraire bankroll granted at entry
    entry_price: float          # enter once spot reaches this
    exit_price: float           # trailing stop: exit at exit_price * peak
    fleet_target: int
    asset_class: str = ""
    slippage_margin: float = 1.2
    archetype = Archetype.WHALE

    entered: bool = False
    exited: bool = False
    peak_seen: float = 0.0

    def decide(self, obs: Observation, rng: np.random.Generator) -> list[AccountAction]:
        if self.exited:
            return []
        view = obs.accounts[0]
        if not view.registered:
            return []
        acct = view.account
        actions: list[AccountAction] = []

        if self.entered:
            self.peak_seen = max(self.peak_seen, obs.spot)
            if obs.spot <= self.exit_price * self.peak_seen:
                self.exited = True
                if view.balance > 0:
                    actions.append((acct, SwapOut(None)))
                actions.append((acct, Exit()))
                return actions

        if _should_auth(obs, view):
            actions.append((acct, Authenticate()))

        if not self.entered:
            if obs.spot >= self.entry_price and self.asset_class in obs.best_asks:
                self.entered = True
                self.peak_seen = obs.spot
            else:
                return actions

        missing = self.fleet_target - len(view.assets)
        if missing > 0:
            ask = obs.best_asks.get(self.asset_class)
            if ask is not None:
                need_units = missing * ask
                deficit = need_units - view.balance
                if deficit > 0 and view.numeraire > 0:
                    cost = int(deficit / TOKEN_UNIT * obs.spot * self.slippage_margin * TOKEN_UNIT)
                    cost = min(view.numeraire, max(cost, 1))
                    actions.append((acct, SwapIn(cost)))
                # Generous price cap; actual affordability is checked at
                # execution, after the swap above has settled.
                for _ in range(missing):
                    actions.append((acct, Buy(self.asset_class, view.balance + need_units)))
        if view.assets:
            actions.append((acct, Play(0)))  # log in and harvest, zero effort
        return actions


AgentPolicy = Union[HonestPlayer, BotFarm, ManagerRing, Whale]


def decide(
    policy: AgentPolicy, observation: Observation, rng: np.random.Generator
) -> list[AccountAction]:
    """Dispatch to the policy's decision rule."""
    return policy.decide(observation, rng)


# --- pay-to-win measurement ---


def dominance_index(
    active_utility: Mapping[str, float],
    archetypes: Mapping[str, Archetype],
) -> float:
    """Mean active effective utility of capital accounts over honest accounts.

    0.0 when capital-archetype accounts hold no active utility (or none
    exist); infinity when capital holds utility but honest players hold
    none. Raises NoHumanPlayers when there is no honest account at all.
    """
    honest = [a for a, kind in archetypes.items() if kind is Archetype.HONEST]
    if not honest:
        raise NoHumanPlayers("dominance index needs at least one honest account")
    capital = [a for a, kind in archetypes.items() if kind in CAPITAL_ARCHETYPES]
    capital_mean = (
        sum(active_utility.get(a, 0.0) for a in capital) / len(capital) if capital else 0.0
    )
    if capital_mean == 0.0:
        return 0.0
    honest_mean = sum(active_utility.get(a, 0.0) for a in honest) / len(honest)
    if honest_mean == 0.0:
        return math.inf
    return capital_mean / honest_mean
