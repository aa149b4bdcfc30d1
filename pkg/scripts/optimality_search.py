#!/usr/bin/env python3
"""Longest half-flip-free words for small (alphabet, minimum period) pairs."""

import argparse
import time

from halfflip.search import backtrack_longest

INSTANCES = [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (5, 1), (3, 2), (2, 4)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-length", type=int, default=2000)
    parser.add_argument("--distinct-halves", action="store_true")
    args = parser.parse_args()
    print(f"{'s':>2} {'k':>2} {'max':>6} {'exhaustive':>10} {'nodes':>9} {'secs':>6}  word")
    for s, k in INSTANCES:
        t0 = time.perf_counter()
        r = backtrack_longest(s, k, max_length=args.max_length, distinct_halves=args.distinct_halves)
        word = str(r.extremal_word)
        shown = word if len(word) <= 40 else word[:37] + "..."
        print(f"{s:>2} {k:>2} {r.max_length:>6} {str(r.exhaustive):>10} {r.nodes_explored:>9} "
              f"{time.perf_counter() - t0:>6.1f}  {shown}")


if __name__ == "__main__":
    main()
