#!/usr/bin/env python3
"""Print the per-node centrality table for the built-in network.

The betweenness column, rounded to two decimals, is the node ranking the
hotspot studies use to pick their hotspot sets.
"""

import sys

from eonsim.cli import main as cli_main

if __name__ == "__main__":
    sys.exit(cli_main(["centrality", "--topology", "nsfnet", *sys.argv[1:]]))
