"""Agent policies: decision rules in isolation, sybil bounds, the firewall."""

import dataclasses

import pytest

from ogesim.agents import (
    AccountView,
    Archetype,
    AssetView,
    Authenticate,
    Buy,
    Exit,
    HonestPlayer,
    Mint,
    Observation,
    Play,
    SwapIn,
    SwapOut,
    Whale,
    decide,
    dominance_index,
)
from ogesim.config import load_config
from ogesim.errors import NoHumanPlayers
from ogesim.identity import AuthStatus
from ogesim.mechanisms import ALL_OFF, ALL_ON
from ogesim.rng import substream
from ogesim.sim import Simulation, run_scenario
from ogesim.units import TOKEN_UNIT


def view(account="acct", status=AuthStatus.FRESH, balance=0, numeraire=0,
         materials=0, mint_progress=0, last_mint_tick=0, last_emission=0, assets=()):
    return AccountView(
        account=account, registered=True, status=status, balance=balance,
        numeraire=numeraire, materials=materials, mint_progress=mint_progress,
        last_mint_tick=last_mint_tick, last_emission=last_emission,
        assets=list(assets),
    )


def observation(accounts, tick=0, spot=1.0, dominance=0.0, toggles=ALL_ON,
                best_asks=None, peak=None):
    return Observation(
        tick=tick, spot=spot, peak_spot=peak if peak is not None else spot,
        dominance=dominance, toggles=toggles, grace_period=5,
        min_activity=10, min_lock=10, mint_fee=TOKEN_UNIT,
        material_price=1.0, repair_rate=0.02,
        best_asks=best_asks or {}, accounts=accounts,
    )


def rng():
    return substream(0, "test", 0)


# --- honest player ---

def test_honest_authenticates_in_grace():
    player = HonestPlayer(agent_id="h")
    obs = observation([view(status=AuthStatus.IN_GRACE)])
    actions = [a for _, a in decide(player, obs, rng())]
    assert any(isinstance(a, Authenticate) for a in actions)
    assert any(isinstance(a, Play) for a in actions)


def test_honest_skips_auth_when_identity_off():
    player = HonestPlayer(agent_id="h")
    obs = observation([view(status=AuthStatus.IN_GRACE)], toggles=ALL_OFF)
    actions = [a for _, a in decide(player, obs, rng())]
    assert not any(isinstance(a, Authenticate) for a in actions)


def test_honest_mints_when_receipt_and_fee_ready():
    player = HonestPlayer(agent_id="h")
    ready = view(balance=2 * TOKEN_UNIT, mint_progress=10, last_mint_tick=0)
    actions = [a for _, a in decide(player, observation([ready], tick=10), rng())]
    assert any(isinstance(a, Mint) for a in actions)
    # Same state one tick earlier: the lock still runs, no mint attempt.
    player2 = HonestPlayer(agent_id="h")
    actions = [a for _, a in decide(player2, observation([ready], tick=9), rng())]
    assert not any(isinstance(a, Mint) for a in actions)


def test_honest_quits_after_sustained_worthless_rewards():
    """Ten straight ticks under the churn threshold trigger a final cash-out
    and exit; the exit is absorbing."""
    player = HonestPlayer(agent_id="h", churn_threshold=0.5, churn_window=10)
    exited = False
    for tick in range(30):
        obs = observation([view(balance=TOKEN_UNIT, last_emission=0)], tick=tick)
        actions = [a for _, a in decide(player, obs, rng())]
        if any(isinstance(a, Exit) for a in actions):
            assert any(isinstance(a, SwapOut) for a in actions)  # sells first
            exited = True
            break
    assert exited
    assert player.exited
    assert decide(player, observation([view()]), rng()) == []


def test_honest_quits_on_pay_to_win():
    player = HonestPlayer(agent_id="h", p2w_tolerance=5.0)
    obs = observation([view()], dominance=6.0)
    actions = [a for _, a in decide(player, obs, rng())]
    assert any(isinstance(a, Exit) for a in actions)


def test_honest_tolerates_dominance_within_bound():
    player = HonestPlayer(agent_id="h", p2w_tolerance=5.0)
    actions = [a for _, a in decide(player, observation([view()], dominance=4.9), rng())]
    assert not any(isinstance(a, Exit) for a in actions)


def test_honest_sells_a_fraction_of_surplus():
    player = HonestPlayer(agent_id="h", sell_fraction=0.5)
    obs = observation([view(balance=11 * TOKEN_UNIT)])
    swap = [a for _, a in decide(player, obs, rng()) if isinstance(a, SwapOut)]
    # Reserve is the mint fee (1); half of the remaining 10 goes to market.
    assert swap and swap[0].amount == 5 * TOKEN_UNIT


# --- whale ---

def asks(price=4 * TOKEN_UNIT):
    return {"gear": price}


def make_whale():
    return Whale(agent_id="w", capital=1000.0, entry_price=1.0,
                 exit_price=0.5, fleet_target=3, asset_class="gear")


def test_whale_waits_for_entry_signal():
    whale = make_whale()
    no_listings = observation([view(numeraire=10**15)], spot=1.2)
    assert decide(whale, no_listings, rng()) == []
    low_price = observation([view(numeraire=10**15)], spot=0.8, best_asks=asks())
    assert decide(whale, low_price, rng()) == []
    assert not whale.entered


def test_whale_enters_swaps_and_buys_fleet():
    whale = make_whale()
    obs = observation([view(numeraire=10**15)], spot=1.2, best_asks=asks())
    actions = [a for _, a in decide(whale, obs, rng())]
    assert whale.entered
    assert any(isinstance(a, SwapIn) for a in actions)
    assert sum(isinstance(a, Buy) for a in actions) == 3
    # Zero-effort harvesting starts only once the fleet exists.
    assert not any(isinstance(a, Play) for a in actions)
    fleet = [AssetView(asset_id=1, class_id="gear", durability=1.0,
                       u_eff=0.5, active=True, listed=False)]
    later = observation([view(assets=fleet)], spot=1.5, best_asks=asks())
    follow = [a for _, a in decide(whale, later, rng())]
    assert any(isinstance(a, Play) and a.activity == 0 for a in follow)


def test_whale_trailing_stop_micro_scenario():
    """Price runs 1.2 -> 2.0 -> 1.05: the stop arms off the 2.0 peak and a
    drop through exit_price * peak (1.0) fires the full dump."""
    whale = make_whale()
    decide(whale, observation([view(numeraire=10**15)], spot=1.2, best_asks=asks()), rng())
    assert whale.entered
    decide(whale, observation([view(balance=TOKEN_UNIT)], spot=2.0, best_asks=asks()), rng())
    assert whale.peak_seen == 2.0
    hold = decide(whale, observation([view(balance=TOKEN_UNIT)], spot=1.05), rng())
    assert not any(isinstance(a, Exit) for _, a in hold)
    dump = [a for _, a in decide(whale, observation([view(balance=TOKEN_UNIT)], spot=0.99), rng())]
    assert any(isinstance(a, Exit) for a in dump)
    assert any(isinstance(a, SwapOut) and a.amount is None for a in dump)
    assert whale.exited
    assert decide(whale, observation([view()]), rng()) == []


# --- dominance index ---

def test_dominance_index_oracle():
    archetypes = {"h1": Archetype.HONEST, "h2": Archetype.HONEST, "w": Archetype.WHALE}
    utility = {"h1": 1.0, "h2": 3.0, "w": 6.0}
    assert dominance_index(utility, archetypes) == pytest.approx(3.0)


def test_dominance_index_zero_when_capital_idle():
    archetypes = {"h1": Archetype.HONEST, "w": Archetype.WHALE}
    assert dominance_index({"h1": 2.0}, archetypes) == 0.0


def test_dominance_index_requires_honest_accounts():
    with pytest.raises(NoHumanPlayers):
        dominance_index({}, {"w": Archetype.WHALE})


# --- roster-level properties ---

def tiny_scenario(**overrides):
    doc = {
        "name": "tiny",
        "seed": 9,
        "ticks": 12,
        "toggles": {
            "identity_enforced": True,
            "asymmetric_decay": True,
            "single_slot": True,
            "entropy_enabled": True,
            "supply_scaled_entropy": False,
        },
        "economy": {"emission_rate": 0.1, "grace_period": 5},
        "pool": {"reserve_numeraire": 1000.0, "reserve_token": 1000.0},
        "honest": {"count": 2, "skill": 0.5},
    }
    doc.update(overrides)
    return load_config(doc)


def test_farm_sybil_bound_one_seed():
    """A farm with 1000 account slots but a single seed registers exactly one
    account under enforcement, and all 1000 without it."""
    cfg = tiny_scenario(farms=[{
        "target_accounts": 1000, "seeds_held": 1, "op_cost": 0.0, "patience": 3,
    }], ticks=2)
    sim = Simulation(cfg, collect_events=True)
    sim.step()
    farm = next(a for a in sim.roster if a.agent_id.startswith("farm"))
    assert len(farm.accounts) == 1
    rejected = [e for e in sim.events if e.event_type == "register_rejected"]
    assert len(rejected) == 999

    open_cfg = dataclasses.replace(cfg, toggles=ALL_OFF)
    sim2 = Simulation(open_cfg, collect_events=False)
    sim2.step()
    farm2 = next(a for a in sim2.roster if a.agent_id.startswith("farm"))
    assert len(farm2.accounts) == 1000


def test_ground_truth_flags_never_steer_the_run():
    """Flipping every human flag changes measurements, never behavior: the
    event streams match action for action."""
    cfg = tiny_scenario(ticks=10, farms=[{
        "target_accounts": 3, "seeds_held": 3, "op_cost": 0.0, "patience": 5,
    }])
    straight = Simulation(cfg, collect_events=True)
    flipped = Simulation(cfg, collect_events=True)
    for runtime in flipped.roster:
        runtime.planned = [(seed, not human) for seed, human in runtime.planned]
    for _ in range(cfg.ticks):
        straight.step()
        flipped.step()
    assert straight.events == flipped.events
    lam_a = [f.lambda_coeff for f in straight.frames]
    lam_b = [f.lambda_coeff for f in flipped.frames]
    assert lam_a != lam_b  # the measurement channel does see the flip
    for fa, fb in zip(straight.frames, flipped.frames):
        assert fa.spot_price == fb.spot_price
        assert fa.s_token == fb.s_token


def test_substream_isolation_across_agents():
    """Changing the honest roster leaves the ring's defection draws alone:
    substreams are keyed per (agent, tick), never shared. Remit amounts are
    labor-derived tokens, so the whole remit timeline must match."""
    cfg = tiny_scenario(ticks=8, rings=[{
        "scholar_count": 4, "revenue_share": 0.5, "scholars_use_own_seeds": True,
        "scholar_skill": 0.3, "defect_prob": 0.5, "defect_prob_tethered": 0.5,
    }])
    base = run_scenario(cfg, collect_events=True)
    pruned_cfg = dataclasses.replace(cfg, honest=dataclasses.replace(cfg.honest, count=1))
    pruned = run_scenario(pruned_cfg, collect_events=True)

    def remits(result):
        return [
            (e.tick, e.agent_id, e.payload["src"], e.payload["amount"])
            for e in result.events
            if e.event_type == "transfer" and e.agent_id.startswith("ring")
        ]

    assert remits(base) == remits(pruned)
    assert len(remits(base)) > 0
