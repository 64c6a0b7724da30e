"""Command-line entry point: run, ablate, list, trace-cliff."""

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any

from . import runio, scenarios
from .config import ScenarioConfig
from .errors import ParseError, ValidationError
from .sim import run_meta, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2


def _load(args: argparse.Namespace) -> tuple[ScenarioConfig, dict[str, Any]]:
    if args.scenario:
        cfg = scenarios.builtin(args.scenario)
    else:
        cfg = scenarios.load_scenario_file(args.config)
    overrides: dict[str, Any] = {}
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
        overrides["seed"] = args.seed
    if args.ticks is not None:
        if args.ticks <= 0:
            raise ValidationError("ticks", "must be positive")
        cfg = replace(cfg, ticks=args.ticks)
        overrides["ticks"] = args.ticks
    return cfg, overrides


def cmd_run(args: argparse.Namespace) -> int:
    cfg, overrides = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with runio.EventStream(out / "events.csv") as sink:
        result = run_scenario(cfg, event_sink=sink)
    runio.write_metrics(out / "metrics.csv", result.frames)
    runio.write_meta(out / "meta.json", run_meta(cfg, overrides))
    return EXIT_OK


def cmd_ablate(args: argparse.Namespace) -> int:
    cfg, overrides = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for cell in scenarios.default_cells():
        cell_cfg = cfg.with_toggles(cell.toggles)
        cell_dir = out / cell.name
        cell_dir.mkdir(parents=True, exist_ok=True)
        with runio.EventStream(cell_dir / "events.csv") as sink:
            result = run_scenario(cell_cfg, event_sink=sink)
        runio.write_metrics(cell_dir / "metrics.csv", result.frames)
        meta = run_meta(cell_cfg, overrides)
        meta["cell"] = cell.name
        runio.write_meta(cell_dir / "meta.json", meta)
        rows.append(
            scenarios.CellResult(
                cell=cell, result=result, fired=result.death_spiral()
            ).summary_row()
        )
    runio.write_summary(out / "summary.csv", rows, scenarios.SUMMARY_COLUMNS)
    return EXIT_OK


def cmd_list(_args: argparse.Namespace) -> int:
    for name in scenarios.builtin_names():
        print(name)
    return EXIT_OK


def cmd_trace_cliff(args: argparse.Namespace) -> int:
    samples = scenarios.utility_cliff_trace(
        ticks=args.ticks or 10,
        transfer_tick=args.transfer_tick,
        alpha=args.alpha,
        base_utility=args.base_utility,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    from .economy import Event

    events = [
        Event(
            tick=s.tick,
            agent_id="trace",
            event_type="utility_sample",
            payload={"phase": s.phase, "u_eff": s.u_eff, "durability": s.durability},
        )
        for s in samples
    ]
    runio.write_events(out / "events.csv", events)
    runio.write_metrics(out / "metrics.csv", scenarios.trace_frames(samples))
    runio.write_meta(
        out / "meta.json",
        {
            "artifact": "ogesim",
            "kind": "utility_cliff_trace",
            "ticks": args.ticks or 10,
            "transfer_tick": args.transfer_tick,
            "alpha": args.alpha,
            "base_utility": args.base_utility,
        },
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ogesim",
        description="Deterministic open-game-economy simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p: argparse.ArgumentParser) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--scenario", help="built-in scenario name (see: ogesim list)")
        src.add_argument("--config", help="path to a scenario JSON document")
        p.add_argument("--seed", type=int, default=None, help="override scenario seed")
        p.add_argument("--ticks", type=int, default=None, help="override tick count")
        p.add_argument("--out", required=True, help="output directory")

    p_run = sub.add_parser("run", help="run one scenario, writing metrics/events/meta")
    add_source(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_abl = sub.add_parser("ablate", help="run the toggle-cell matrix and a summary")
    add_source(p_abl)
    p_abl.set_defaults(fn=cmd_ablate)

    p_list = sub.add_parser("list", help="print built-in scenario names")
    p_list.set_defaults(fn=cmd_list)

    p_trace = sub.add_parser(
        "trace-cliff", help="write the scripted single-asset transfer trace"
    )
    p_trace.add_argument("--out", required=True)
    p_trace.add_argument("--ticks", type=int, default=10)
    p_trace.add_argument("--transfer-tick", type=int, default=5)
    p_trace.add_argument("--alpha", type=float, default=0.05)
    p_trace.add_argument("--base-utility", type=float, default=1.0)
    p_trace.set_defaults(fn=cmd_trace_cliff)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as err:
        print(f"error: config field '{err.field}': {err.message}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"error: i/o failure: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
