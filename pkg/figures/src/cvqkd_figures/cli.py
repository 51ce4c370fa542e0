"""One subcommand per figure id: cvqkd-figures fig7a --csv rates.csv --out fig.png"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureSpec, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cvqkd-figures", description="regenerate reference figures from CSV"
    )
    sub = parser.add_subparsers(dest="figure_id", required=True)
    for figure_id in FIGURE_IDS:
        p = sub.add_parser(figure_id)
        p.add_argument("--csv", required=True, help="input CSV from the cvqkd CLI")
        p.add_argument("--out", required=True, help="output image path (png/pdf/svg)")
    args = parser.parse_args(argv)
    try:
        render(FigureSpec(args.csv, args.figure_id, args.out))
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
