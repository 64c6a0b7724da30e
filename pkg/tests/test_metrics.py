"""Measurement functions: gini, capture share, retention, collapse detector."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ogesim.identity import IdentityRegistry
from ogesim.metrics import (
    MetricsFrame,
    bot_capture_share,
    death_spiral,
    gini,
    retention_rate,
)


def brute_force_gini(values):
    """Mean absolute pairwise difference over twice the mean."""
    n = len(values)
    total = sum(values)
    if n == 0 or total == 0:
        return 0.0
    diff = sum(abs(a - b) for a in values for b in values)
    return diff / (2 * n * total)


# --- gini ---

def test_gini_oracle_single_winner():
    assert abs(gini([0, 0, 0, 1]) - 0.75) <= 1e-12
    assert abs(gini([0, 0, 0, 1]) - brute_force_gini([0, 0, 0, 1])) <= 1e-12


def test_gini_known_values():
    assert gini([1, 1, 1, 1]) == 0.0
    assert abs(gini([1, 2, 3, 4]) - 0.25) <= 1e-12
    assert gini([]) == 0.0
    assert gini([0.0, 0.0]) == 0.0


@settings(max_examples=200)
@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=30))
def test_gini_matches_brute_force(values):
    assert abs(gini(values) - brute_force_gini(values)) <= 1e-9


@settings(max_examples=200)
@given(
    st.lists(st.floats(0, 1e3, allow_nan=False), min_size=1, max_size=30),
    st.floats(1e-3, 1e3, allow_nan=False),
)
def test_gini_scale_invariant(values, scale):
    scaled = [v * scale for v in values]
    assert abs(gini(values) - gini(scaled)) <= 1e-9


def test_gini_bounded():
    rng = np.random.default_rng(0)
    for _ in range(50):
        values = rng.uniform(0, 100, size=rng.integers(1, 40)).tolist()
        assert 0.0 <= gini(values) < 1.0


# --- capture share ---

def test_bot_capture_share_oracle():
    registry = IdentityRegistry()
    h = registry.register(b"h", 0, human=True)
    b = registry.register(b"b", 0, human=False)
    assert bot_capture_share({h: 30, b: 70}, registry) == pytest.approx(0.7)
    assert bot_capture_share({h: 10}, registry) == 0.0
    assert bot_capture_share({b: 10}, registry) == 1.0
    assert bot_capture_share({}, registry) == 0.0


def test_bot_capture_ignores_unregistered_recipients():
    registry = IdentityRegistry()
    b = registry.register(b"b", 0, human=False)
    # The exogenous buyer bucket is not a registered account: counts as the
    # denominator only, never as capture.
    assert bot_capture_share({b: 50, "_speculators": 50}, registry) == pytest.approx(0.5)


# --- retention ---

def test_retention_oracle():
    assert retention_rate(3, 4) == 0.75
    assert retention_rate(0, 4) == 0.0
    assert retention_rate(4, 4) == 1.0
    assert retention_rate(0, 0) == 1.0  # nobody entered, nobody lost


# --- death-spiral detector ---

def flat(n, level=1.0):
    return [level] * n


def test_detector_fires_on_joint_collapse():
    prices = flat(5) + [0.05] * 10
    liquidity = flat(5) + [0.05] * 10
    assert death_spiral(prices, liquidity, window=10, price_drop=0.9, liquidity_floor=0.1)


def test_detector_needs_both_conditions():
    crash_price_only = (flat(5) + [0.05] * 10, flat(15))
    crash_liq_only = (flat(15), flat(5) + [0.05] * 10)
    for prices, liquidity in (crash_price_only, crash_liq_only):
        assert not death_spiral(prices, liquidity, window=10)


def test_detector_85_percent_drawdown_does_not_fire_at_90():
    """Deep but not deep enough: 85% off peak stays under a 0.9 threshold."""
    prices = flat(5) + [0.15] * 20
    liquidity = flat(5) + [0.05] * 20
    assert not death_spiral(prices, liquidity, window=10, price_drop=0.9)
    assert death_spiral(prices, liquidity, window=10, price_drop=0.85)


def test_detector_boundary_is_inclusive():
    """Series sitting exactly on both thresholds counts as collapsed.

    Dyadic thresholds so (1 - price_drop) * peak is float-exact.
    """
    prices = flat(5) + [0.25] * 10  # exactly (1 - 0.75) * peak
    liquidity = flat(5) + [0.25] * 10  # exactly 0.25 * peak
    assert death_spiral(prices, liquidity, window=10, price_drop=0.75, liquidity_floor=0.25)
    # One ulp above either threshold and the tick no longer counts.
    eps = math.ulp(0.25)
    assert not death_spiral(
        flat(5) + [0.25 + eps] * 10, liquidity, window=10, price_drop=0.75, liquidity_floor=0.25
    )
    assert not death_spiral(
        prices, flat(5) + [0.25 + eps] * 10, window=10, price_drop=0.75, liquidity_floor=0.25
    )


def test_detector_window_must_be_consecutive():
    """A one-tick recovery above threshold resets the run length."""
    prices = flat(5) + [0.05] * 9 + [1.0] + [0.05] * 9
    liquidity = flat(5) + [0.05] * 19
    assert not death_spiral(prices, liquidity, window=10)
    prices = flat(5) + [0.05] * 10 + [1.0] + [0.05] * 9
    liquidity = flat(5) + [0.05] * 20
    assert death_spiral(prices, liquidity, window=10)


def test_detector_threshold_monotonicity():
    """Anything that fires at a lax threshold fires at every laxer one."""
    rng = np.random.default_rng(7)
    walk = np.abs(np.cumsum(rng.normal(0, 0.3, size=120))) + 0.01
    prices = list(walk)
    liquidity = list(np.sqrt(walk))
    drops = [0.5, 0.7, 0.9, 0.99]
    fired = [death_spiral(prices, liquidity, window=5, price_drop=d, liquidity_floor=0.5)
             for d in drops]
    # Once it stops firing as the required drop deepens it never resumes.
    assert fired == sorted(fired, reverse=True)
    floors = [0.05, 0.1, 0.3, 0.8]
    fired = [death_spiral(prices, liquidity, window=5, price_drop=0.5, liquidity_floor=f)
             for f in floors]
    assert fired == sorted(fired)


def test_detector_peak_is_running_not_global():
    """A late all-time high cannot retroactively un-fire earlier collapse."""
    prices = flat(5) + [0.05] * 10 + [100.0]
    liquidity = flat(5) + [0.05] * 10 + [100.0]
    assert death_spiral(prices, liquidity, window=10)


def test_detector_input_validation():
    with pytest.raises(ValueError):
        death_spiral([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        death_spiral([1.0], [1.0], window=0)


def test_frame_csv_row_matches_columns():
    frame = MetricsFrame(
        tick=3, spot_price=1.5, s_token=10.0, s_assets=2, lambda_coeff=0.5,
        gini_utility=0.1, dominance_index=0.0, retention=1.0, bot_capture=0.0,
        liquidity=100.0,
    )
    row = frame.csv_row()
    assert len(row) == len(MetricsFrame.CSV_COLUMNS)
    assert row[0] == 3
    assert MetricsFrame.CSV_COLUMNS[4] == "lambda"
    assert row[4] == 0.5
