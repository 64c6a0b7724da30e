"""Simulation driver: roster bootstrap, the tick loop, and frame capture.

One tick runs fixed phases in a fixed order:

  0. entries        agents scheduled for this tick register accounts
  1. liveness       Authenticate actions update last-auth marks
  2. effort         activation pass, Play emission + harvest + materials,
                    Mint against accumulated effort receipts
  3. market         exogenous inflow, then List/Buy/SwapIn/SwapOut/Remit/Exit
                    in agent-id order (stable within an agent)
  4. wear           active assets lose durability; worn-out assets retire
  5. repairs        Repair actions consume held materials, buying any
                    shortfall from the system for burned tokens
  6. measurement    a MetricsFrame is appended; supply identity asserted

Per-action rejections become events; a tick never aborts. All iteration
orders are explicit (sorted ids or roster order), never dict order, so a
rerun with the same config and seed replays byte-identically.
"""

from dataclasses import dataclass, field
from typing import Any, Callable

from . import agents as agent_mod
from . import assets as asset_engine
from . import market as market_mod
from . import metrics as metrics_mod
from .agents import (
    AccountAction,
    Archetype,
    Authenticate,
    Buy,
    Exit,
    List,
    Mint,
    Play,
    Remit,
    Repair,
    SwapIn,
    SwapOut,
)
from .config import ScenarioConfig
from .economy import EconomyState, Event, token_emission
from .errors import InsufficientBalance, SimError
from .hashing import HASH_FUNCTION, h256, tag
from .identity import (
    AuthStatus,
    IdentityRegistry,
    identity_labor_coefficient,
    make_proof_token,
)
from .market import LiquidityPool, ListingBook
from .metrics import MetricsFrame
from .rng import RNG_NAME, substream
from .units import (
    MATERIAL_UNIT,
    NUMERAIRE_UNIT,
    TOKEN_UNIT,
    to_numeraire_units,
    to_token_units,
)

ACTIVITY_WINDOW = 10  # ticks an account counts as active after acting
SPECULATOR_ID = "_speculators"
SYSTEM_ID = "system"


@dataclass
class AgentRuntime:
    agent_id: str
    policy: agent_mod.AgentPolicy
    entry_tick: int
    planned: list[tuple[bytes | None, bool]]  # (seed or None for synthetic, human flag)
    archetype_by_slot: list[Archetype]
    accounts: list[str] = field(default_factory=list)
    entered: bool = False
    finished: bool = False
    numeraire_grant: int = 0  # credited to the first account at entry


@dataclass
class RunResult:
    config: ScenarioConfig
    frames: list[MetricsFrame]
    events: list[Event] | None
    meta: dict[str, Any]
    state: EconomyState
    roster: list[AgentRuntime]

    def price_series(self) -> list[float]:
        return [f.spot_price for f in self.frames]

    def liquidity_series(self) -> list[float]:
        return [f.liquidity for f in self.frames]

    def death_spiral(self) -> bool:
        d = self.config.detector
        return metrics_mod.death_spiral(
            self.price_series(),
            self.liquidity_series(),
            window=d.window,
            price_drop=d.price_drop,
            liquidity_floor=d.liquidity_floor,
        )


def _seed_bytes(run_seed: int, *parts: str) -> bytes:
    return h256(tag("agent-seed"), str(run_seed).encode(), *(p.encode() for p in parts))


def _synthetic_seed(run_seed: int, agent_id: str, slot: int) -> bytes:
    return h256(tag("synthetic-seed"), str(run_seed).encode(), agent_id.encode(), str(slot).encode())


def build_roster(cfg: ScenarioConfig) -> list[AgentRuntime]:
    """Instantiate policies and their planned accounts from a config.

    Seeds are ground truth: a human brings exactly one distinct seed. Farms
    hold seeds_held bought seeds and otherwise reuse them; rings without
    own-seeded scholars hold only the manager's seed. Under identity
    enforcement reused seeds are rejected at registration; with it off,
    registration falls back to fresh synthetic seeds (identity creation is
    frictionless), which is what the toggle means.
    """
    roster: list[AgentRuntime] = []
    ask_units = to_token_units(cfg.honest.ask_price)
    h = cfg.honest
    initial = h.count if h.entry_initial < 0 else min(h.entry_initial, h.count)
    for i in range(h.count):
        agent_id = f"honest_{i:04d}"
        if i < initial:
            entry = 0
        elif h.entry_per_tick > 0:
            entry = (i - initial) // h.entry_per_tick + 1
        else:
            entry = 2**31  # staged entry disabled: never enters

        policy = agent_mod.HonestPlayer(
            agent_id=agent_id,
            skill=h.skill,
            effort_per_tick=h.effort_per_tick,
            churn_threshold=h.churn_threshold,
            p2w_tolerance=h.p2w_tolerance,
            sell_fraction=h.sell_fraction,
            asset_target=h.asset_target,
            asset_class=cfg.economy.asset_class,
            ask_price=ask_units,
            repair_threshold=h.repair_threshold,
            churn_window=h.churn_window,
        )
        roster.append(
            AgentRuntime(
                agent_id=agent_id,
                policy=policy,
                entry_tick=entry,
                planned=[(_seed_bytes(cfg.seed, "human", agent_id), True)],
                archetype_by_slot=[Archetype.HONEST],
            )
        )
    for i, fc in enumerate(cfg.farms):
        agent_id = f"farm_{i:02d}"
        planned = []
        for slot in range(fc.target_accounts):
            # Reused seeds past seeds_held model the farm's missing humans.
            seed = _seed_bytes(cfg.seed, "farmseed", agent_id, str(slot % fc.seeds_held))
            planned.append((seed, False))
        policy = agent_mod.BotFarm(
            agent_id=agent_id,
            target_accounts=fc.target_accounts,
            seeds_held=fc.seeds_held,
            op_cost=fc.op_cost,
            effort_per_tick=fc.effort_per_tick,
            patience=fc.patience,
        )
        roster.append(
            AgentRuntime(
                agent_id=agent_id,
                policy=policy,
                entry_tick=0,
                planned=planned,
                archetype_by_slot=[Archetype.BOT] * len(planned),
            )
        )
    for i, rc in enumerate(cfg.rings):
        agent_id = f"ring_{i:02d}"
        manager_seed = _seed_bytes(cfg.seed, "manager", agent_id)
        planned = [(manager_seed, True)]
        kinds = [Archetype.MANAGER]
        for s in range(rc.scholar_count):
            if rc.scholars_use_own_seeds:
                planned.append((_seed_bytes(cfg.seed, "scholar", agent_id, str(s)), True))
            else:
                # No human behind the account; the ring reuses its one seed.
                planned.append((manager_seed, False))
            kinds.append(Archetype.SCHOLAR)
        policy = agent_mod.ManagerRing(
            agent_id=agent_id,
            scholar_count=rc.scholar_count,
            revenue_share=rc.revenue_share,
            scholars_use_own_seeds=rc.scholars_use_own_seeds,
            scholar_skill=rc.scholar_skill,
            effort_per_tick=rc.effort_per_tick,
            defect_prob=rc.defect_prob,
            defect_prob_tethered=rc.defect_prob_tethered,
        )
        roster.append(
            AgentRuntime(
                agent_id=agent_id,
                policy=policy,
                entry_tick=0,
                planned=planned,
                archetype_by_slot=kinds,
            )
        )
    for i, wc in enumerate(cfg.whales):
        agent_id = f"whale_{i:02d}"
        policy = agent_mod.Whale(
            agent_id=agent_id,
            capital=wc.capital,
            entry_price=wc.entry_price,
            exit_price=wc.exit_price,
            fleet_target=wc.fleet_target,
            asset_class=cfg.economy.asset_class,
            slippage_margin=wc.slippage_margin,
        )
        roster.append(
            AgentRuntime(
                agent_id=agent_id,
                policy=policy,
                entry_tick=0,
                planned=[(_seed_bytes(cfg.seed, "whale", agent_id), True)],
                archetype_by_slot=[Archetype.WHALE],
                numeraire_grant=to_numeraire_units(wc.capital),
            )
        )
    return roster


class Simulation:
    """Owns one run: state, roster, frames, and the event stream."""

    def __init__(
        self,
        cfg: ScenarioConfig,
        collect_events: bool = True,
        event_sink: Callable[[Event], None] | None = None,
    ):
        self.cfg = cfg
        self.toggles = cfg.toggles
        self.econ = cfg.economy
        registry = IdentityRegistry()
        pool = LiquidityPool.from_amounts(
            cfg.pool.reserve_numeraire, cfg.pool.reserve_token, cfg.economy.fee_rate
        )
        self.state = EconomyState(registry=registry, pool=pool, book=ListingBook(),
                                  run_seed=cfg.seed)
        self.state.genesis_pool_mint()
        self.roster = build_roster(cfg)
        self.frames: list[MetricsFrame] = []
        self.events: list[Event] | None = [] if collect_events and event_sink is None else None
        self.event_sink = event_sink
        self.peak_spot = market_mod.spot_price(pool)
        self.rate_units = to_token_units(cfg.economy.emission_rate)
        self.degradation = asset_engine.DegradationParams(
            alpha=cfg.economy.alpha,
            beta=cfg.economy.beta,
            supply_scaling=cfg.toggles.supply_scaled_entropy,
            scale_factor=cfg.economy.supply_scale,
            supply_ref=cfg.economy.supply_ref,
        )
        self.mint_policy = asset_engine.MintPolicy(
            min_activity=cfg.economy.min_activity, min_lock=cfg.economy.min_lock
        )
        self.mint_fee_units = to_token_units(cfg.economy.mint_fee)
        # Per-account effort bookkeeping for mint receipts.
        self.mint_progress: dict[str, int] = {}
        self.last_mint: dict[str, int] = {}
        self.skill: dict[str, float] = {}
        self.archetype: dict[str, Archetype] = {}
        self.account_agent: dict[str, str] = {}
        self.last_emission: dict[str, int] = {}
        self._seed_by_account: dict[str, bytes] = {}

    # --- event plumbing ---

    def emit(self, agent_id: str, event_type: str, **payload: Any) -> None:
        event = Event(self.state.tick, agent_id, event_type, payload)
        if self.event_sink is not None:
            self.event_sink(event)
        elif self.events is not None:
            self.events.append(event)

    def reject(self, agent_id: str, action: str, err: SimError) -> None:
        self.emit(agent_id, f"{action}_rejected", code=err.code)

    # --- helpers ---

    def yield_curve(self, skill: float) -> float:
        return self.econ.yield_floor + self.econ.yield_slope * skill

    def _status(self, account: str) -> AuthStatus:
        return self.state.registry.auth_status(
            account, self.state.tick, self.econ.grace_period
        )

    def _u_eff(self, asset: asset_engine.Asset, status: AuthStatus) -> float:
        return asset_engine.effective_utility(
            asset, status, self.toggles, self.econ.lapse_penalty
        )

    def account_active_utility(self) -> dict[str, float]:
        """Sum of effective utility over each account's active assets."""
        out: dict[str, float] = {}
        state = self.state
        for account in sorted(state.active_sets):
            ids = state.active_sets[account]
            if not ids:
                continue
            status = self._status(account)
            total = 0.0
            for aid in sorted(ids):
                asset = state.assets.get(aid)
                if asset is not None and asset.current_owner == account:
                    total += self._u_eff(asset, status)
            out[account] = total
        return out

    # --- tick phases ---

    def _phase_entries(self) -> None:
        tick = self.state.tick
        registry = self.state.registry
        for agent in self.roster:
            if agent.entered or agent.entry_tick != tick:
                continue
            agent.entered = True
            for slot, (seed, human) in enumerate(agent.planned):
                use_seed = seed
                if not self.toggles.identity_enforced:
                    # Frictionless account creation: no seed check, mint a
                    # synthetic identity for every requested account.
                    use_seed = _synthetic_seed(self.cfg.seed, agent.agent_id, slot)
                try:
                    account = registry.register(use_seed, tick, human=human)
                except SimError as err:
                    self.reject(agent.agent_id, "register", err)
                    continue
                agent.accounts.append(account)
                self.archetype[account] = agent.archetype_by_slot[slot]
                self.account_agent[account] = agent.agent_id
                self.skill[account] = getattr(agent.policy, "skill", None) or getattr(
                    agent.policy, "scholar_skill", 0.0
                )
                self.mint_progress[account] = 0
                self.last_mint[account] = tick
                self._seed_by_account[account] = use_seed
                if slot == 0 and agent.numeraire_grant:
                    self.state.num_balances[account] = (
                        self.state.num_balances.get(account, 0) + agent.numeraire_grant
                    )
                self.state.touch(account)
                self.emit(agent.agent_id, "register", account=account[:12], slot=slot)

    def _observe(self, agent: AgentRuntime, dominance: float,
                 best_asks: dict[str, int], spot: float) -> agent_mod.Observation:
        state = self.state
        views = []
        for account in agent.accounts:
            registered = state.registry.is_registered(account)
            status = self._status(account) if registered else None
            asset_views = []
            for aid in sorted(state.holdings.get(account, ())):
                asset = state.assets.get(aid)
                if asset is None:
                    continue
                asset_views.append(
                    agent_mod.AssetView(
                        asset_id=aid,
                        class_id=asset.class_id,
                        durability=asset.durability,
                        u_eff=self._u_eff(asset, status) if status else 0.0,
                        active=aid in state.active_sets.get(account, ()),
                        listed=aid in state.book,
                    )
                )
            views.append(
                agent_mod.AccountView(
                    account=account,
                    registered=registered,
                    status=status,
                    balance=state.balances.get(account, 0),
                    numeraire=state.num_balances.get(account, 0),
                    materials=state.materials.get(account, 0),
                    mint_progress=self.mint_progress.get(account, 0),
                    last_mint_tick=self.last_mint.get(account, 0),
                    last_emission=self.last_emission.get(account, 0),
                    assets=asset_views,
                )
            )
        return agent_mod.Observation(
            tick=state.tick,
            spot=spot,
            peak_spot=self.peak_spot,
            dominance=dominance,
            toggles=self.toggles,
            grace_period=self.econ.grace_period,
            min_activity=self.econ.min_activity,
            min_lock=self.econ.min_lock,
            mint_fee=self.mint_fee_units,
            material_price=self.econ.material_price,
            repair_rate=self.econ.repair_rate,
            best_asks=best_asks,
            accounts=views,
        )

    def _collect_actions(self) -> list[tuple[str, str, Any]]:
        state = self.state
        spot = market_mod.spot_price(state.pool)
        self.peak_spot = max(self.peak_spot, spot)
        dominance = self.frames[-1].dominance_index if self.frames else 0.0
        best_asks: dict[str, int] = {}
        for listing in state.book.listings():
            asset = state.assets.get(listing.asset_id)
            if asset is None or asset.current_owner != listing.seller:
                continue
            cur = best_asks.get(asset.class_id)
            if cur is None or listing.ask_price < cur:
                best_asks[asset.class_id] = listing.ask_price
        envelopes: list[tuple[str, str, Any]] = []
        for agent in self.roster:
            if not agent.entered or agent.finished:
                continue
            obs = self._observe(agent, dominance, best_asks, spot)
            rng = substream(self.cfg.seed, agent.agent_id, state.tick)
            for account, action in agent.policy.decide(obs, rng):
                envelopes.append((agent.agent_id, account, action))
        return envelopes

    def _phase_liveness(self, envelopes: list[tuple[str, str, Any]]) -> None:
        state = self.state
        for agent_id, account, action in envelopes:
            if not isinstance(action, Authenticate):
                continue
            try:
                seed = self._seed_by_account.get(account)
                if seed is None:
                    continue
                # Liveness re-auth presents a fresh proof for this tick.
                token = make_proof_token(seed, state.tick)
                if not state.registry.verify_zk_poi(account, token, state.tick):
                    continue
                state.registry.record_liveness(account, state.tick)
                state.touch(account)
                self.emit(agent_id, "auth", account=account[:12])
            except SimError as err:
                self.reject(agent_id, "auth", err)

    def _activation_pass(self) -> None:
        """Recompute each account's active set from current holdings."""
        state = self.state
        active: dict[str, set[int]] = {}
        for account in sorted(state.holdings):
            ids = state.holdings[account]
            if not ids:
                continue
            held = [state.assets[a] for a in ids if a in state.assets]
            if not held:
                continue
            status = self._status(account)
            utilities = {a.asset_id: self._u_eff(a, status) for a in held}
            active[account] = asset_engine.activate_set(
                held, [a.asset_id for a in held], self.toggles.single_slot, utilities
            )
        state.active_sets = active

    def _phase_effort(self, envelopes: list[tuple[str, str, Any]]) -> dict[str, int]:
        state = self.state
        uses: dict[str, int] = {}
        harvest_rate = self.econ.harvest_rate
        for agent_id, account, action in envelopes:
            if isinstance(action, Play):
                if not state.registry.is_registered(account):
                    continue
                status = self._status(account)
                try:
                    labor = token_emission(
                        state, account, action.activity, self.rate_units,
                        self.toggles, status,
                    )
                except SimError as err:
                    self.reject(agent_id, "emission", err)
                    continue
                harvest = 0
                if harvest_rate > 0.0:
                    total_u = 0.0
                    for aid in sorted(state.active_sets.get(account, ())):
                        asset = state.assets.get(aid)
                        if asset is not None:
                            total_u += self._u_eff(asset, status)
                    if total_u > 0.0:
                        harvest = round(harvest_rate * total_u * TOKEN_UNIT)
                        state.credit_mint(account, harvest)
                if action.activity > 0:
                    receipt = asset_engine.PopeReceipt(
                        worker=account,
                        activity_ticks=action.activity,
                        time_lock_start=self.last_mint.get(account, 0),
                        skill_score=self.skill.get(account, 0.0),
                    )
                    gate = status if self.toggles.identity_enforced else AuthStatus.FRESH
                    stack = asset_engine.produce_repair_materials(
                        receipt, self.yield_curve, gate
                    )
                    if stack.quantity > 0:
                        state.materials[account] = (
                            state.materials.get(account, 0) + stack.quantity
                        )
                        state.materials_produced += stack.quantity
                    self.mint_progress[account] = (
                        self.mint_progress.get(account, 0) + action.activity
                    )
                self.last_emission[account] = labor + harvest
                if state.active_sets.get(account):
                    uses[account] = uses.get(account, 0) + max(1, action.activity)
                state.touch(account)
                self.emit(
                    agent_id, "emission",
                    account=account[:12], labor=labor, harvest=harvest,
                )
            elif isinstance(action, Mint):
                if not state.registry.is_registered(account):
                    continue
                status = self._status(account)
                gate_status = status if self.toggles.identity_enforced else AuthStatus.FRESH
                receipt = asset_engine.PopeReceipt(
                    worker=account,
                    activity_ticks=self.mint_progress.get(account, 0),
                    time_lock_start=self.last_mint.get(account, 0),
                    skill_score=self.skill.get(account, 0.0),
                )
                try:
                    if state.balances.get(account, 0) < self.mint_fee_units:
                        raise InsufficientBalance("mint fee")
                    asset = asset_engine.mint_pope(
                        receipt,
                        action.class_id or self.econ.asset_class,
                        self.econ.asset_base_utility,
                        self.mint_policy,
                        state.tick,
                        gate_status,
                        state.next_asset_id,
                    )
                except SimError as err:
                    self.reject(agent_id, "mint", err)
                    continue
                if self.mint_fee_units:
                    state.burn(account, self.mint_fee_units)
                state.next_asset_id += 1
                state.assets[asset.asset_id] = asset
                state.holdings.setdefault(account, []).append(asset.asset_id)
                self.mint_progress[account] = 0
                self.last_mint[account] = state.tick
                state.touch(account)
                self.emit(
                    agent_id, "mint",
                    account=account[:12], asset_id=asset.asset_id,
                    class_id=asset.class_id, fee=self.mint_fee_units,
                )
        return uses

    def _exogenous_inflow(self) -> None:
        inflow = self.cfg.inflow
        tick = self.state.tick
        if inflow.per_tick <= 0 or not (inflow.start <= tick < inflow.until):
            return
        amount = to_numeraire_units(inflow.per_tick)
        if amount <= 0:
            return
        out = market_mod.swap_numeraire_for_token(self.state.pool, amount)
        balances = self.state.balances
        balances[SPECULATOR_ID] = balances.get(SPECULATOR_ID, 0) + out
        self.emit(SPECULATOR_ID, "swap_in", numeraire_in=amount, token_out=out)

    def _phase_market(self, envelopes: list[tuple[str, str, Any]]) -> None:
        state = self.state
        self._exogenous_inflow()
        ordered = [
            (agent_id, account, action)
            for agent_id, account, action in envelopes
            if isinstance(action, (List, Buy, SwapIn, SwapOut, Remit, Exit))
        ]
        ordered.sort(key=lambda e: e[0])  # agent-id order; stable within an agent
        for agent_id, account, action in ordered:
            try:
                if isinstance(action, List):
                    asset = state.assets.get(action.asset_id)
                    if asset is None:
                        continue
                    market_mod.list_asset(state.book, asset, account, action.price, state.tick)
                    state.touch(account)
                    self.emit(agent_id, "list", asset_id=action.asset_id, ask=action.price)
                elif isinstance(action, Buy):
                    trade = market_mod.buy_asset(
                        state.book, state.assets, state.balances,
                        account, action.class_id, action.max_price, state.tick,
                        state.registry,
                    )
                    if trade is None:
                        continue
                    seller_holdings = state.holdings.get(trade.seller)
                    if seller_holdings and trade.asset_id in seller_holdings:
                        seller_holdings.remove(trade.asset_id)
                    state.holdings.setdefault(account, []).append(trade.asset_id)
                    # Transfer deactivates: the buyer re-activates next tick.
                    state.active_sets.get(trade.seller, set()).discard(trade.asset_id)
                    state.touch(account)
                    self.emit(
                        agent_id, "trade",
                        asset_id=trade.asset_id, seller=trade.seller[:12],
                        buyer=account[:12], price=trade.price,
                    )
                elif isinstance(action, SwapIn):
                    have = state.num_balances.get(account, 0)
                    if action.amount > have:
                        raise InsufficientBalance(f"numeraire {have} < {action.amount}")
                    out = market_mod.swap_numeraire_for_token(state.pool, action.amount)
                    state.num_balances[account] = have - action.amount
                    state.balances[account] = state.balances.get(account, 0) + out
                    state.touch(account)
                    self.emit(agent_id, "swap_in", numeraire_in=action.amount, token_out=out)
                elif isinstance(action, SwapOut):
                    have = state.balances.get(account, 0)
                    amount = have if action.amount is None else action.amount
                    if amount <= 0:
                        continue
                    if amount > have:
                        raise InsufficientBalance(f"tokens {have} < {amount}")
                    out = market_mod.swap_token_for_numeraire(state.pool, amount)
                    state.balances[account] = have - amount
                    state.num_balances[account] = state.num_balances.get(account, 0) + out
                    state.touch(account)
                    self.emit(agent_id, "swap_out", token_in=amount, numeraire_out=out)
                elif isinstance(action, Remit):
                    have = state.balances.get(account, 0)
                    amount = min(action.amount, have)
                    if amount <= 0:
                        continue
                    state.balances[account] = have - amount
                    state.balances[action.to_account] = (
                        state.balances.get(action.to_account, 0) + amount
                    )
                    state.touch(account)
                    self.emit(
                        agent_id, "transfer",
                        src=account[:12], dst=action.to_account[:12], amount=amount,
                    )
                elif isinstance(action, Exit):
                    self.emit(agent_id, "exit", account=account[:12])
                    agent = self._agent_by_id(agent_id)
                    if agent is not None and len(agent.accounts) <= 1:
                        # Multi-account policies manage per-account abandonment
                        # themselves; single-account agents leave the roster.
                        agent.finished = True
            except SimError as err:
                self.reject(agent_id, type(action).__name__.lower(), err)

    def _agent_by_id(self, agent_id: str) -> AgentRuntime | None:
        for agent in self.roster:
            if agent.agent_id == agent_id:
                return agent
        return None

    def _phase_wear(self, uses: dict[str, int]) -> None:
        if not self.toggles.entropy_enabled:
            return
        state = self.state
        circulating = float(len(state.assets))
        retired: list[tuple[str, int]] = []
        for account in sorted(state.active_sets):
            for aid in sorted(state.active_sets[account]):
                asset = state.assets.get(aid)
                if asset is None or asset.current_owner != account:
                    continue
                asset_engine.apply_degradation(
                    asset, 1.0, float(uses.get(account, 0)), self.degradation, circulating
                )
                if asset.durability <= 0.0:
                    retired.append((account, aid))
        for account, aid in retired:
            state.assets.pop(aid, None)
            holdings = state.holdings.get(account)
            if holdings and aid in holdings:
                holdings.remove(aid)
            state.book.remove(aid)
            state.active_sets.get(account, set()).discard(aid)
            self.emit(self.account_agent.get(account, SYSTEM_ID), "retire",
                      account=account[:12], asset_id=aid)

    def _phase_repairs(self, envelopes: list[tuple[str, str, Any]]) -> None:
        state = self.state
        price = self.econ.material_price
        for agent_id, account, action in envelopes:
            if not isinstance(action, Repair):
                continue
            asset = state.assets.get(action.asset_id)
            if asset is None or asset.current_owner != account:
                continue
            if action.quantity <= 0 or asset.durability >= 1.0:
                continue
            held = state.materials.get(account, 0)
            want = action.quantity
            shortfall = max(0, want - held)
            bought = 0
            if shortfall > 0 and price > 0:
                unit_cost = price * TOKEN_UNIT / MATERIAL_UNIT  # token units per material unit
                balance = state.balances.get(account, 0)
                affordable = int(balance / unit_cost) if unit_cost > 0 else 0
                bought = min(shortfall, affordable)
                if bought > 0:
                    cost = min(balance, round(bought * unit_cost))
                    state.burn(account, cost)
                    state.materials_produced += bought
                    held += bought
                    self.emit(
                        agent_id, "material_purchase",
                        account=account[:12], units=bought, cost=cost,
                    )
            elif shortfall > 0 and price == 0:
                bought = shortfall
                held += bought
                state.materials_produced += bought
            stack = asset_engine.RepairMaterial(quantity=min(want, held), producer=account)
            before = stack.quantity
            asset, stack = asset_engine.repair(asset, stack, self.econ.repair_rate)
            consumed = before - stack.quantity
            state.materials[account] = held - consumed
            state.materials_consumed += consumed
            if consumed > 0:
                state.touch(account)
                self.emit(
                    agent_id, "repair",
                    asset_id=asset.asset_id, units=consumed,
                    durability=asset.durability,
                )

    def _phase_frame(self) -> None:
        state = self.state
        spot = market_mod.spot_price(state.pool)
        active_accounts = state.active_accounts(ACTIVITY_WINDOW)
        if active_accounts:
            lam = identity_labor_coefficient(state.registry, active_accounts)
        else:
            lam = 1.0
        active_utility = self.account_active_utility()
        registered_accounts = sorted(self.archetype)
        utilities = [active_utility.get(a, 0.0) for a in registered_accounts]
        try:
            dom = agent_mod.dominance_index(active_utility, self.archetype)
        except SimError:
            dom = 0.0
        entered = sum(
            1 for ag in self.roster
            if isinstance(ag.policy, agent_mod.HonestPlayer) and ag.entered
        )
        active_honest = sum(
            1 for ag in self.roster
            if isinstance(ag.policy, agent_mod.HonestPlayer)
            and ag.entered
            and not ag.policy.exited
        )
        frame = MetricsFrame(
            tick=state.tick,
            spot_price=spot,
            s_token=state.supply_tokens(),
            s_assets=len(state.assets),
            lambda_coeff=lam,
            gini_utility=metrics_mod.gini(utilities),
            dominance_index=dom,
            retention=metrics_mod.retention_rate(active_honest, entered),
            bot_capture=metrics_mod.bot_capture_share(state.emitted_by, state.registry),
            liquidity=state.pool.reserve_numeraire / NUMERAIRE_UNIT,
        )
        self.frames.append(frame)

    def step(self) -> None:
        """Run one full tick."""
        self._phase_entries()
        envelopes = self._collect_actions()
        self._phase_liveness(envelopes)
        self._activation_pass()
        uses = self._phase_effort(envelopes)
        self._phase_market(envelopes)
        self._phase_wear(uses)
        self._phase_repairs(envelopes)
        self._phase_frame()
        self.state.check_supply_identity()
        self.state.tick += 1

    def run(self) -> RunResult:
        for _ in range(self.cfg.ticks):
            self.step()
        meta = run_meta(self.cfg)
        return RunResult(
            config=self.cfg,
            frames=self.frames,
            events=self.events,
            meta=meta,
            state=self.state,
            roster=self.roster,
        )


def run_meta(cfg: ScenarioConfig, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    from . import __version__

    return {
        "artifact": "ogesim",
        "version": __version__,
        "hash_function": HASH_FUNCTION,
        "rng": RNG_NAME,
        "seed": cfg.seed,
        "overrides": overrides or {},
        "config": cfg.to_dict(),
    }


def run_scenario(
    cfg: ScenarioConfig,
    collect_events: bool = True,
    event_sink: Callable[[Event], None] | None = None,
) -> RunResult:
    return Simulation(cfg, collect_events=collect_events, event_sink=event_sink).run()
