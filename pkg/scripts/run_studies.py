#!/usr/bin/env python3
"""Run the four hotspot studies end to end and print summary deltas.

Desk scale by default (20,000 requests x 3 replications per cell, about
five minutes total); pass --paper-scale for the full 100,000 x 5
protocol. Results land in one subdirectory per study under --out.
"""

import argparse
import sys
from pathlib import Path

from eonsim.cli import main as cli_main
from eonsim.experiments import PRESET_IDS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/studies")
    parser.add_argument("--seed", type=int, default=20240917)
    parser.add_argument("--paper-scale", action="store_true")
    parser.add_argument("--load-basis", default="per_node",
                        choices=("network", "per_node"),
                        help="per_node produces a non-degenerate blocking "
                             "regime; network keeps the literal "
                             "sum(lambda) = mu*NL reading")
    args = parser.parse_args()

    out_root = Path(args.out)
    for pid in PRESET_IDS:
        print(f"== {pid} ==")
        cli_args = ["preset", "--preset", pid, "--seed", str(args.seed),
                    "--load-basis", args.load_basis,
                    "--out", str(out_root / pid)]
        if args.paper_scale:
            cli_args.append("--paper-scale")
        code = cli_main(cli_args)
        if code != 0:
            return code
    print(f"\nall studies complete; see {out_root}/<study>/curves.csv")
    return 0


if __name__ == "__main__":
    sys.exit(main())
