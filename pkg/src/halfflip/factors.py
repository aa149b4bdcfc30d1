"""Exact factor sets of fixed points of uniform morphisms and of their images.

Every set produced here is the complete set of length-``L`` factors of an
infinite word, obtained from finitely many windows that provably cover all
occurrences:

* window rule: with ``q**j >= L`` every length-``L`` factor of the fixed point
  lies inside ``m^j(ab)`` for a two-letter factor ``ab``;
* descent rule: every length-``L`` factor of ``g(W)`` for a ``q``-uniform ``g``
  lies inside ``g(w)`` for a factor ``w`` of ``W`` of length
  ``ceil(L/q) + 1``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .words import FixedPointSpec, UniformMorphism, Word, WordLike, as_word

__all__ = [
    "FactorSet",
    "OffsetProfile",
    "ResourceCapExceeded",
    "DEFAULT_MAX_MATERIAL",
    "two_letter_factors",
    "factor_set_exact",
    "factor_set_descent",
    "image_factor_set",
    "offset_profile",
    "prefix_factors",
    "power_image",
]

DEFAULT_MAX_MATERIAL = 10**8


class ResourceCapExceeded(RuntimeError):
    """The window material needed for an exact answer exceeds the configured cap."""


@dataclass(frozen=True)
class FactorSet:
    length: int
    factors: frozenset[bytes]
    alphabet_size: int
    exact: bool = True
    source: str = ""

    def __post_init__(self):
        bad = [x for x in self.factors if len(x) != self.length]
        if bad:
            raise ValueError(f"factor of length {len(bad[0])} in a length-{self.length} factor set")

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, item: WordLike) -> bool:
        if isinstance(item, (bytes, bytearray)):
            return bytes(item) in self.factors
        return as_word(item, self.alphabet_size).letters in self.factors

    def __iter__(self) -> Iterator[Word]:
        for x in sorted(self.factors):
            yield Word(x, self.alphabet_size)

    def to_lines(self) -> list[str]:
        """Factors as digit strings in lexicographic order."""
        return [str(w) for w in self]

    def to_text(self) -> str:
        return "".join(line + "\n" for line in self.to_lines())


@dataclass(frozen=True)
class OffsetProfile:
    modulus: int
    length: int
    entries: dict[bytes, frozenset[int]] = field(hash=False)
    alphabet_size: int = 10

    def residues(self, factor: WordLike) -> frozenset[int]:
        key = factor if isinstance(factor, bytes) else as_word(factor, self.alphabet_size).letters
        return self.entries.get(key, frozenset())

    def ambiguous(self) -> dict[bytes, frozenset[int]]:
        """Factors occurring at more than one residue."""
        return {x: r for x, r in self.entries.items() if len(r) > 1}

    @property
    def synchronized(self) -> bool:
        return all(len(r) == 1 for r in self.entries.values())

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "length": self.length,
            "entries": {
                str(Word(x, self.alphabet_size)): sorted(self.entries[x])
                for x in sorted(self.entries)
            },
        }


def _windows(s: bytes, L: int):
    return (s[i:i + L] for i in range(len(s) - L + 1))


@lru_cache(maxsize=None)
def power_image(f: UniformMorphism, letters: bytes, j: int) -> bytes:
    """``f^j`` applied to raw letters."""
    w = np.frombuffer(letters, dtype=np.uint8)
    table = f.table
    for _ in range(j):
        w = table[w].ravel()
    return w.tobytes()


def _image(f: UniformMorphism, letters: bytes) -> bytes:
    return power_image(f, letters, 1) if letters else b""


@lru_cache(maxsize=None)
def _two_letter_factors(spec: FixedPointSpec) -> frozenset[bytes]:
    f = spec.morphism
    found = set(_windows(f.images[spec.seed], 2))
    frontier = set(found)
    while frontier:
        fresh = set()
        for xy in frontier:
            fresh.update(_windows(_image(f, xy), 2))
        frontier = fresh - found
        found |= frontier
    return frozenset(found)


def two_letter_factors(spec: FixedPointSpec) -> FactorSet:
    """All length-2 factors of the fixed point, by closure under the morphism."""
    return FactorSet(2, _two_letter_factors(spec), spec.alphabet_size, True, "closure")


def _check_material(size: int, cap: int) -> None:
    if size > cap:
        raise ResourceCapExceeded(f"window material of {size} letters exceeds the cap of {cap}")


def factor_set_exact(spec: FixedPointSpec, L: int, max_material: int = DEFAULT_MAX_MATERIAL) -> FactorSet:
    """Length-``L`` factors of the fixed point via windows ``m^j(ab)``, ``q**j >= L``."""
    if L < 1:
        raise ValueError("factor length must be positive")
    q = spec.q
    j = 0
    while q**j < L:
        j += 1
    pairs = _two_letter_factors(spec)
    _check_material(len(pairs) * 2 * q**j, max_material)
    found: set[bytes] = set()
    for ab in pairs:
        found.update(_windows(power_image(spec.morphism, ab, j), L))
    return FactorSet(L, frozenset(found), spec.alphabet_size, True, f"windows m^{j}(ab)")


@lru_cache(maxsize=4096)
def _descent(spec: FixedPointSpec, L: int) -> frozenset[bytes]:
    q = spec.q
    t = math.ceil(L / q) + 1
    if L <= 2 or t >= L:
        return factor_set_exact(spec, L).factors
    found: set[bytes] = set()
    for w in _descent(spec, t):
        found.update(_windows(_image(spec.morphism, w), L))
    return frozenset(found)


def factor_set_descent(spec: FixedPointSpec, L: int) -> FactorSet:
    """Same set as :func:`factor_set_exact`, built recursively from shorter factors.

    Much cheaper for large ``L`` since only ``m(w)`` for short factors ``w``
    is scanned. Results are cached per ``(spec, L)``.
    """
    if L < 1:
        raise ValueError("factor length must be positive")
    return FactorSet(L, _descent(spec, L), spec.alphabet_size, True, "descent")


def _base_length(f: UniformMorphism, L: int) -> int:
    return math.ceil(L / f.q) + 1


def image_factor_set(spec: FixedPointSpec, f: UniformMorphism, L: int,
                     max_material: int = DEFAULT_MAX_MATERIAL) -> FactorSet:
    """Length-``L`` factors of ``f`` applied to the fixed point."""
    if f.domain_size != spec.alphabet_size:
        raise ValueError("image morphism domain does not match the fixed point alphabet")
    if L < 1:
        raise ValueError("factor length must be positive")
    t = _base_length(f, L)
    base = factor_set_descent(spec, t)
    _check_material(len(base) * t * f.q, max_material)
    found: set[bytes] = set()
    for w in base.factors:
        found.update(_windows(_image(f, w), L))
    return FactorSet(L, frozenset(found), f.codomain_size, True, f"{f.name or 'f'}(length-{t} factors)")


def offset_profile(spec: FixedPointSpec, f: UniformMorphism | None, L: int,
                   extra: int = 0) -> OffsetProfile:
    """Residues modulo ``q`` at which each length-``L`` factor occurs.

    Offsets are measured from image boundaries, so residue 0 means the factor
    starts an image ``f(a)``. Without ``f`` the fixed point is viewed as
    ``m(fixed point)``. ``extra`` enlarges the scanned base windows beyond the
    required ``ceil(L/q) + 1`` letters (used to test stability).
    """
    g = spec.morphism if f is None else f
    if g.domain_size != spec.alphabet_size:
        raise ValueError("image morphism domain does not match the fixed point alphabet")
    t = _base_length(g, L) + extra
    entries: dict[bytes, set[int]] = defaultdict(set)
    for w in factor_set_descent(spec, t).factors:
        s = _image(g, w)
        for i in range(len(s) - L + 1):
            entries[s[i:i + L]].add(i % g.q)
    return OffsetProfile(
        g.q, L, {x: frozenset(r) for x, r in entries.items()}, g.codomain_size
    )


def prefix_factors(w: WordLike, L: int) -> set[bytes]:
    """Length-``L`` factors of a finite word (sampling, not exact for infinite words)."""
    return set(_windows(as_word(w).letters, L))
