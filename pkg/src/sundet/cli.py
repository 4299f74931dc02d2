"""Command-line entry point: ``sundet --mode verify --n 4..8 --c=-1..1 --d=-1..1``."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import DomainError
from .reporting import EXIT_USAGE, FORMATS, MODES, SweepConfig, parse_range, run_sweep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sundet",
        description="Sweep det[(i^2+cij+dj^2)^(n-2)] mod n^2 over parameter grids.",
        epilog="Ranges are 'a..b' (inclusive) or a single integer. "
        "Write negative ranges as --c=-2..2.",
    )
    ap.add_argument("--mode", choices=MODES, default="verify")
    ap.add_argument("--n", required=True, help="range of n, lower bound >= 4")
    ap.add_argument("--c", default="0", help="range of c (default 0)")
    ap.add_argument("--d", default="0", help="range of d (default 0)")
    ap.add_argument("--format", choices=FORMATS, default="json-lines")
    ap.add_argument("--out", default="-", help="output file, '-' for stdout")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    ap.add_argument(
        "--timing", action="store_true", help="fill the ms column (output no longer reproducible)"
    )
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = SweepConfig(
            n_range=parse_range(args.n),
            c_range=parse_range(args.c),
            d_range=parse_range(args.d),
            mode=args.mode,
            output_format=args.format,
            output_path=None if args.out == "-" else args.out,
            parallelism=args.jobs,
            timing=args.timing,
        )
    except DomainError as exc:
        print(f"sundet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run_sweep(config)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
