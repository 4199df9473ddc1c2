#!/usr/bin/env python3
"""Run the verify suite over the three analytic cross-section models.

Writes one artifact directory per geometry under ./sweep_out and prints a
one-line summary per run.  Exit status is nonzero if any geometry fails.
"""

import math
import sys

from conekit.cli import main as conekit_main

RUNS = [
    ("circle-4pi", ["--model", "circle", "--circumference", repr(4 * math.pi), "--n", "2"]),
    ("circle-2pi", ["--model", "circle", "--circumference", repr(2 * math.pi), "--n", "2"]),
    ("interval-dirichlet", ["--model", "interval", "--length", repr(2 * math.pi), "--bc", "dirichlet", "--n", "2"]),
    ("sphere2", ["--model", "sphere2", "--n", "3"]),
]


def main() -> int:
    worst = 0
    for name, flags in RUNS:
        status = conekit_main(
            ["verify", *flags, "--modes", "6", "--out", f"sweep_out/{name}"]
        )
        print(f"[{name}] exit status {status}", file=sys.stderr)
        worst = max(worst, status)
    return worst


if __name__ == "__main__":
    sys.exit(main())
