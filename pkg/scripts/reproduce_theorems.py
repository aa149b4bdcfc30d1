#!/usr/bin/env python3
"""Run the three verification pipelines and print one summary per theorem."""

import argparse
import sys
import time

from halfflip.proof import THEOREMS, verify_theorem


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-period", type=int, default=500)
    parser.add_argument("--theorem", action="append", choices=sorted(THEOREMS))
    args = parser.parse_args()
    all_ok = True
    for variant in args.theorem or sorted(THEOREMS):
        t0 = time.perf_counter()
        report = verify_theorem(variant, args.max_period)
        print(report.summary().rstrip())
        print(f"  ({time.perf_counter() - t0:.1f}s)\n")
        all_ok &= report.overall
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
