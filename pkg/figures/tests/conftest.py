"""Shared writers producing frozen-schema run artifacts for tests."""

import csv
import json

METRICS_HEADER = [
    "tick", "spot_price", "s_token", "s_assets", "lambda",
    "gini_utility", "dominance_index", "retention", "bot_capture", "liquidity",
]
EVENTS_HEADER = ["tick", "agent_id", "event_type", "payload"]
SUMMARY_HEADER = ["cell", "death_spiral", "price_peak_ratio", "final_lambda", "final_retention"]


def write_csv(path, header, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def metric_row(tick, price=1.0):
    return [tick, price, 100.0, 3, 1.0, 0.0, 0.0, 1.0, 0.0, 500.0]


def sample_row(tick, phase, u_eff, durability):
    payload = json.dumps(
        {"durability": durability, "phase": phase, "u_eff": u_eff},
        sort_keys=True, separators=(",", ":"),
    )
    return [tick, "trace", "utility_sample", payload]


def trace_event_rows(alpha=0.05, transfer_tick=5, ticks=10):
    """What a scripted transfer trace writes: one utility sample per tick
    plus a pre/post pair straddling the transfer."""
    rows = []
    for tick in range(ticks):
        dur = 1.0 - alpha * tick
        if tick < transfer_tick:
            rows.append(sample_row(tick, "tick", dur, dur))
        elif tick == transfer_tick:
            rows.append(sample_row(tick, "pre", dur, dur))
            rows.append(sample_row(tick, "post", 0.5 * dur, dur))
        else:
            rows.append(sample_row(tick, "tick", 0.5 * dur, dur))
    return rows


def summary_rows(cells=7):
    names = ["full_on", "full_off"] + [f"no_mechanism_{i}" for i in range(cells - 2)]
    rows = []
    for i, name in enumerate(names[:cells]):
        fired = name != "full_on"
        rows.append([name, "true" if fired else "false", 0.9 - 0.1 * i, 0.5, 0.5])
    return rows
