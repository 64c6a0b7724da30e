"""Run health measurements: per-tick frames and the collapse detector.

Everything here is a pure function of a state snapshot; frames carry no
hidden coupling to the loop that produced them, so recomputing a frame from
the same snapshot reproduces it bit for bit. This module is the only
permitted reader of the registry's ground-truth human flags.
"""

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .identity import IdentityRegistry


@dataclass(frozen=True)
class MetricsFrame:
    tick: int
    spot_price: float
    s_token: float          # outstanding token supply
    s_assets: int           # live (unretired) asset count
    lambda_coeff: float     # verified-human share of active accounts
    gini_utility: float
    dominance_index: float
    retention: float
    bot_capture: float
    liquidity: float        # pool numeraire reserve

    CSV_COLUMNS = (
        "tick",
        "spot_price",
        "s_token",
        "s_assets",
        "lambda",
        "gini_utility",
        "dominance_index",
        "retention",
        "bot_capture",
        "liquidity",
    )

    def csv_row(self) -> tuple:
        return (
            self.tick,
            self.spot_price,
            self.s_token,
            self.s_assets,
            self.lambda_coeff,
            self.gini_utility,
            self.dominance_index,
            self.retention,
            self.bot_capture,
            self.liquidity,
        )


def gini(values: Sequence[float]) -> float:
    """Mean absolute difference over twice the mean; 0 for an empty or
    all-zero distribution, scale invariant otherwise."""
    n = len(values)
    if n == 0:
        return 0.0
    total = math.fsum(values)
    if total == 0.0:
        return 0.0
    ordered = sorted(values)
    # Sum of |xi - xj| over all ordered pairs via the sorted prefix form.
    weighted = math.fsum((2 * i - n + 1) * x for i, x in enumerate(ordered))
    return weighted / (n * total)


def bot_capture_share(
    emitted_by: Mapping[str, int],
    registry: IdentityRegistry,
) -> float:
    """Share of all minted tokens that went to accounts without a human
    behind them. 0 when nothing has been minted to any account yet."""
    total = 0
    bots = 0
    for account in sorted(emitted_by):
        amount = emitted_by[account]
        total += amount
        if registry.is_registered(account) and not registry.ground_truth_human(account):
            bots += amount
    if total == 0:
        return 0.0
    return bots / total


def retention_rate(active_honest: int, entered_honest: int) -> float:
    """Active honest players over all honest players that ever entered."""
    if entered_honest == 0:
        return 1.0
    return active_honest / entered_honest


def death_spiral(
    prices: Sequence[float],
    liquidity: Sequence[float],
    window: int = 10,
    price_drop: float = 0.9,
    liquidity_floor: float = 0.1,
) -> bool:
    """True when price sits >= price_drop below its running peak while pool
    liquidity sits <= liquidity_floor of its running peak, with both
    conditions holding for at least `window` consecutive ticks."""
    if len(prices) != len(liquidity):
        raise ValueError("price and liquidity series must align")
    if window <= 0:
        raise ValueError("window must be positive")
    peak_p = -math.inf
    peak_l = -math.inf
    run = 0
    for p, l in zip(prices, liquidity):
        peak_p = max(peak_p, p)
        peak_l = max(peak_l, l)
        collapsed = p <= (1.0 - price_drop) * peak_p and l <= liquidity_floor * peak_l
        run = run + 1 if collapsed else 0
        if run >= window:
            return True
    return False
