"""Command line entry point: render one figure kind from run artifacts."""

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # batch tool; never touch a display

from .render import KINDS, FigureSpec, render
from .schema import SchemaMismatch

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ogesim-figures",
        description="Render figures from simulator run CSV artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render one figure kind")
    p_render.add_argument("--kind", choices=KINDS, required=True)
    p_render.add_argument("--input", required=True, help="run or ablation directory")
    p_render.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(FigureSpec(kind=args.kind, input_dir=Path(args.input), out_path=Path(args.out)))
    except SchemaMismatch as err:
        print(f"error: input rejected: {err}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as err:
        print(f"error: missing input file: {err.filename or err}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as err:
        print(f"error: input rejected: {err}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(f"error: cannot write output: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
