#!/usr/bin/env python3
"""Print the showcase spectra: D9, Q8, A4, and GL3(F2).

Reproduces, from scratch, the residual tables and per-prime fiber diagrams
for the four headline groups.  Run from the repository root:

    python scripts/spectra_gallery.py [--dot]
"""

import argparse
import sys
import time

from btspec.cli import run as cli_run

GROUPS = ["D9", "Q8", "A4", "GL3_2"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dot", action="store_true", help="emit DOT instead of text")
    args = parser.parse_args()
    fmt = "dot" if args.dot else "text"
    for name in GROUPS:
        print(f"{'=' * 72}")
        t0 = time.perf_counter()
        code = cli_run(["subgroups", name])
        code |= cli_run(["spec", name, "--format", fmt])
        for p in (2, 3, 7):
            if name == "GL3_2" or (name == "D9" and p in (2, 3)):
                code |= cli_run(["residual", name, "--prime", str(p)])
        print(f"[{name} done in {time.perf_counter() - t0:.2f}s]")
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
