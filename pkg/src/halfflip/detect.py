"""Half-flip detection in finite words and in fixed points of uniform morphisms.

A word contains a half-flip of period ``p`` when it has factors ``uv`` and
``vu`` with ``|u| = |v| = p``. By default ``u = v`` is allowed, so every square
``uu`` is a half-flip; ``distinct_halves=True`` requires ``u != v``. The two
occurrences may overlap or coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .factors import DEFAULT_MAX_MATERIAL, factor_set_descent, image_factor_set
from .rollhash import WindowHasher, pack
from .words import FixedPointSpec, UniformMorphism, Word, WordLike, as_word

__all__ = [
    "HalfFlipWitness",
    "InfiniteHit",
    "swap_halves",
    "find_half_flip_brute",
    "find_half_flip_fast",
    "infinite_halfflip_check",
]


@dataclass(frozen=True)
class HalfFlipWitness:
    period: int
    uv: Word
    pos_uv: int
    pos_vu: int

    def __post_init__(self):
        if len(self.uv) != 2 * self.period:
            raise ValueError(f"uv has length {len(self.uv)}, expected {2 * self.period}")

    @property
    def u(self) -> Word:
        return self.uv[: self.period]

    @property
    def v(self) -> Word:
        return self.uv[self.period:]

    @property
    def vu(self) -> Word:
        return swap_halves(self.uv)

    def holds_in(self, host: WordLike) -> bool:
        """Whether ``host`` has ``uv`` at ``pos_uv`` and ``vu`` at ``pos_vu``."""
        h = as_word(host).letters
        n = 2 * self.period
        return (h[self.pos_uv:self.pos_uv + n] == self.uv.letters
                and h[self.pos_vu:self.pos_vu + n] == self.vu.letters)

    def to_json(self) -> dict:
        return {"period": self.period, "pos_uv": self.pos_uv, "pos_vu": self.pos_vu, "uv": str(self.uv)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict, alphabet_size: int | None = None) -> "HalfFlipWitness":
        return cls(data["period"], Word.parse(data["uv"], alphabet_size), data["pos_uv"], data["pos_vu"])


class InfiniteHit(NamedTuple):
    period: int
    uv: Word


def _swap(x: bytes) -> bytes:
    p = len(x) // 2
    return x[p:] + x[:p]


def swap_halves(x: WordLike) -> Word:
    x = as_word(x)
    if len(x) < 2 or len(x) % 2:
        raise ValueError(f"swap_halves needs a non-empty word of even length, got length {len(x)}")
    return Word(_swap(x.letters), x.alphabet_size)


def _period_range(n: int, k: int, P: int) -> range:
    if k < 1 or P < k:
        raise ValueError(f"need 1 <= k <= P, got k={k}, P={P}")
    return range(k, min(P, n // 2) + 1)


def find_half_flip_brute(w: WordLike, k: int, P: int,
                         distinct_halves: bool = False) -> HalfFlipWitness | None:
    """Reference detector: plain dictionary of factor positions per period.

    Ties are broken by smallest period, then smallest ``pos_uv``, then
    smallest ``pos_vu``.
    """
    w = as_word(w)
    s = w.letters
    for p in _period_range(len(s), k, P):
        first: dict[bytes, int] = {}
        for i in range(len(s) - 2 * p + 1):
            first.setdefault(s[i:i + 2 * p], i)
        for i in range(len(s) - 2 * p + 1):
            x = s[i:i + 2 * p]
            y = _swap(x)
            if distinct_halves and x == y:
                continue
            j = first.get(y)
            if j is not None:
                return HalfFlipWitness(p, Word(x, w.alphabet_size), i, j)
    return None


def find_half_flip_fast(w: WordLike, k: int, P: int,
                        distinct_halves: bool = False) -> HalfFlipWitness | None:
    """Same answer as :func:`find_half_flip_brute`, using rolling hashes.

    Every hash match is confirmed letter by letter, so collisions cannot
    produce a wrong witness.
    """
    w = as_word(w)
    s = w.letters
    periods = _period_range(len(s), k, P)
    if not periods:
        return None
    hasher = WindowHasher(s)
    for p in periods:
        m = len(s) - 2 * p + 1
        halves = hasher.windows(p)
        left = tuple(h[:m] for h in halves)
        right = tuple(h[p:p + m] for h in halves)
        keys_uv = pack(hasher.concat(left, right, p))
        keys_vu = pack(hasher.concat(right, left, p))
        candidates = np.flatnonzero(np.isin(keys_vu, keys_uv))
        for i in candidates.tolist():
            x = s[i:i + 2 * p]
            y = _swap(x)
            if distinct_halves and x == y:
                continue
            for j in np.flatnonzero(keys_uv == keys_vu[i]).tolist():
                if s[j:j + 2 * p] == y:
                    return HalfFlipWitness(p, Word(x, w.alphabet_size), i, j)
    return None


def infinite_halfflip_check(spec: FixedPointSpec, f: UniformMorphism | None, k: int, P: int,
                            distinct_halves: bool = False,
                            max_material: int = DEFAULT_MAX_MATERIAL) -> InfiniteHit | None:
    """Least period in ``[k, P]`` of a half-flip in the fixed point (or its ``f``-image).

    Works on exact factor sets, so ``None`` proves that the infinite word has
    no half-flip with period in that range. The reported ``uv`` is the
    lexicographically least member at that period.
    """
    if k < 1 or P < k - 1:
        raise ValueError(f"need k >= 1 and P >= k - 1, got k={k}, P={P}")
    for p in range(k, P + 1):
        if f is None:
            S = factor_set_descent(spec, 2 * p)
        else:
            S = image_factor_set(spec, f, 2 * p, max_material)
        hits = [x for x in S.factors
                if _swap(x) in S.factors and not (distinct_halves and x == _swap(x))]
        if hits:
            return InfiniteHit(p, Word(min(hits), S.alphabet_size))
    return None
