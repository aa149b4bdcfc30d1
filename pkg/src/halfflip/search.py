"""Exhaustive backtracking for the longest words avoiding half-flips of period >= k."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .words import Word, WordLike, as_word

__all__ = ["SearchResult", "extension_safe", "backtrack_longest", "DEFAULT_MAX_NODES", "DEFAULT_MAX_LENGTH"]

DEFAULT_MAX_NODES = 10**9
DEFAULT_MAX_LENGTH = 10**4


@dataclass(frozen=True)
class SearchResult:
    alphabet_size: int
    min_period: int
    distinct_halves: bool
    max_length: int
    extremal_word: Word
    nodes_explored: int
    exhaustive: bool
    max_nodes: int
    max_length_cap: int
    cap_hit: str | None = None

    def to_json(self) -> dict:
        return {
            "s": self.alphabet_size,
            "k": self.min_period,
            "distinct_halves": self.distinct_halves,
            "max_length": self.max_length,
            "extremal_word": str(self.extremal_word),
            "nodes_explored": self.nodes_explored,
            "exhaustive": self.exhaustive,
            "caps": {"max_nodes": self.max_nodes, "max_length": self.max_length_cap, "hit": self.cap_hit},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _new_flip(buf: bytearray, k: int, distinct_halves: bool) -> bool:
    # only the suffixes of buf are new factors
    n = len(buf)
    for p in range(k, n // 2 + 1):
        y = buf[n - p:] + buf[n - 2 * p:n - p]
        if distinct_halves and y == buf[n - 2 * p:]:
            continue
        if buf.find(y) != -1:
            return True
    return False


def extension_safe(w: WordLike, a: int, k: int, distinct_halves: bool = False) -> bool:
    """Whether ``w + a`` is still free of half-flips with period >= ``k``.

    Assumes ``w`` itself is free of them.
    """
    buf = bytearray(as_word(w).letters)
    buf.append(a)
    return not _new_flip(buf, k, distinct_halves)


def backtrack_longest(s: int, k: int, max_nodes: int = DEFAULT_MAX_NODES,
                      max_length: int = DEFAULT_MAX_LENGTH, distinct_halves: bool = False,
                      canonical: bool = False) -> SearchResult:
    """Depth-first search over words starting with letter 0.

    Letters are tried in increasing order, so the first word reaching the
    maximum length is the lexicographically least one. ``canonical`` also
    requires letters to appear in increasing order of first occurrence.
    Hitting a cap ends the search with ``exhaustive=False``.
    """
    if s < 1 or k < 1:
        raise ValueError("alphabet size and minimum period must be positive")
    if max_nodes < 1 or max_length < 1:
        raise ValueError("caps must be positive")

    def result(best: bytes, nodes: int, exhaustive: bool, cap: str | None) -> SearchResult:
        return SearchResult(s, k, distinct_halves, len(best), Word(best, s), nodes, exhaustive,
                            max_nodes, max_length, cap)

    buf = bytearray([0])
    best = bytes(buf)
    nodes = 1
    if max_length <= 1:
        return result(best, nodes, False, "length")
    # next letter to try at each depth, and the largest letter used so far
    pending = [0]
    top = [0]
    while pending:
        a = pending[-1]
        limit = min(s, top[-1] + 2) if canonical else s
        if a >= limit:
            pending.pop()
            top.pop()
            buf.pop()
            continue
        pending[-1] = a + 1
        buf.append(a)
        if _new_flip(buf, k, distinct_halves):
            buf.pop()
            continue
        if nodes >= max_nodes:
            return result(best, nodes, False, "nodes")
        nodes += 1
        if len(buf) > len(best):
            best = bytes(buf)
            if len(best) >= max_length:
                return result(best, nodes, False, "length")
        pending.append(0)
        top.append(max(top[-1], a))
    return result(best, nodes, True, None)
