"""Command-line interface for rendering report figures from delimited files."""

from __future__ import annotations

import argparse
import sys

from .io import FigureDataError
from .plots import RENDERERS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smtsbench-figures",
        description="Render benchmark report figures from figures_data CSV files",
    )
    parser.add_argument("kind", choices=sorted(RENDERERS), help="figure kind to render")
    parser.add_argument("--in", dest="csv_path", required=True, help="input CSV file")
    parser.add_argument("--out", dest="out_path", required=True, help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = render(args.kind, args.csv_path, args.out_path)
    except (FigureDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
