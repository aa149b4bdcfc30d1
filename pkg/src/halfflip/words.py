"""Words over small integer alphabets, uniform morphisms and their fixed points.

Letters are stored as raw byte values (``0..alphabet_size-1``), not as ASCII
digits. Text I/O uses the digit characters ``0``-``9``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "Word",
    "UniformMorphism",
    "FixedPointSpec",
    "MorphismError",
    "as_word",
    "validate_morphism",
    "apply_morphism",
    "fixed_point_prefix",
    "load_morphism",
    "dump_morphism",
    "read_words",
    "write_words",
    "C",
    "M",
    "F3",
    "F2",
    "M_SPEC",
    "BUILTIN_MORPHISMS",
]

_DIGITS = b"0123456789"
_TO_TEXT = bytes.maketrans(bytes(range(10)), _DIGITS)
_FROM_TEXT = bytes.maketrans(_DIGITS, bytes(range(10)))


class MorphismError(ValueError):
    """Raised for malformed morphisms or letters outside a morphism's domain."""


@dataclass(frozen=True)
class Word:
    letters: bytes
    alphabet_size: int

    def __post_init__(self):
        if self.alphabet_size < 1 or self.alphabet_size > 255:
            raise ValueError(f"alphabet size must be in [1, 255], got {self.alphabet_size}")
        if self.letters and max(self.letters) >= self.alphabet_size:
            raise ValueError(
                f"letter {max(self.letters)} out of range for alphabet of size {self.alphabet_size}"
            )

    @classmethod
    def parse(cls, text: str, alphabet_size: int | None = None) -> "Word":
        """Build a word from a digit string such as ``"0112"``.

        Without an explicit ``alphabet_size`` the smallest alphabet holding
        every letter is used (at least 1).
        """
        text = text.strip()
        if text and not text.isdigit():
            raise ValueError(f"word text must contain digits only: {text!r}")
        letters = text.encode("ascii").translate(_FROM_TEXT)
        if alphabet_size is None:
            alphabet_size = max(letters) + 1 if letters else 1
        return cls(letters, alphabet_size)

    def __str__(self) -> str:
        if self.alphabet_size > 10:
            return " ".join(str(a) for a in self.letters)
        return self.letters.translate(_TO_TEXT).decode("ascii")

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, alphabet_size={self.alphabet_size})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet_size)
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, max(self.alphabet_size, other.alphabet_size))


WordLike = Union[Word, str, bytes, Sequence[int]]


def as_word(obj: WordLike, alphabet_size: int | None = None) -> Word:
    """Coerce digit strings, raw letter bytes or integer sequences to a Word."""
    if isinstance(obj, Word):
        return obj
    if isinstance(obj, str):
        return Word.parse(obj, alphabet_size)
    letters = bytes(obj)
    if alphabet_size is None:
        alphabet_size = max(letters) + 1 if letters else 1
    return Word(letters, alphabet_size)


@dataclass(frozen=True)
class UniformMorphism:
    domain_size: int
    codomain_size: int
    q: int
    images: tuple[bytes, ...]
    name: str = ""

    def __post_init__(self):
        if not self.images:
            raise MorphismError("morphism has no images")
        if len(self.images) != self.domain_size:
            raise MorphismError(
                f"expected {self.domain_size} images, got {len(self.images)}"
            )
        if self.q < 1:
            raise MorphismError("image length q must be positive")
        for a, image in enumerate(self.images):
            if len(image) != self.q:
                raise MorphismError(
                    f"non-uniform morphism: image of {a} has length {len(image)}, expected {self.q}"
                )
            if image and max(image) >= self.codomain_size:
                raise MorphismError(
                    f"letter {max(image)} in image of {a} out of range for codomain size {self.codomain_size}"
                )

    def image(self, a: int) -> Word:
        return Word(self.images[a], self.codomain_size)

    @cached_property
    def table(self) -> np.ndarray:
        """Images as a ``(domain_size, q)`` uint8 array."""
        return np.frombuffer(b"".join(self.images), dtype=np.uint8).reshape(self.domain_size, self.q)

    def to_json(self) -> dict:
        return {
            "domain_size": self.domain_size,
            "codomain_size": self.codomain_size,
            "q": self.q,
            "images": [str(self.image(a)) for a in range(self.domain_size)],
        }


def validate_morphism(candidate, domain_size: int | None = None,
                      codomain_size: int | None = None, name: str = "") -> UniformMorphism:
    """Turn raw morphism data into a checked UniformMorphism.

    ``candidate`` is either a mapping in the JSON morphism format
    (``domain_size``, ``codomain_size``, ``q``, ``images``) or a sequence of
    image digit strings, in which case the sizes are inferred unless given.
    """
    if isinstance(candidate, UniformMorphism):
        return candidate
    if isinstance(candidate, dict):
        images = candidate.get("images")
        domain_size = candidate.get("domain_size", domain_size)
        codomain_size = candidate.get("codomain_size", codomain_size)
        q = candidate.get("q")
    else:
        images = candidate
        q = None
    if not images:
        raise MorphismError("morphism has no images")
    try:
        raw = [Word.parse(im, 255).letters if isinstance(im, str) else bytes(im) for im in images]
    except ValueError as exc:
        raise MorphismError(str(exc)) from exc
    lengths = {len(im) for im in raw}
    if len(lengths) != 1:
        raise MorphismError(f"non-uniform morphism: image lengths {sorted(lengths)}")
    if q is None:
        q = lengths.pop()
    if domain_size is None:
        domain_size = len(raw)
    if codomain_size is None:
        codomain_size = max(max(im) for im in raw if im) + 1
    return UniformMorphism(int(domain_size), int(codomain_size), int(q), tuple(raw), name)


def apply_morphism(f: UniformMorphism, w: WordLike) -> Word:
    w = as_word(w)
    if w.letters and max(w.letters) >= f.domain_size:
        raise MorphismError(
            f"letter {max(w.letters)} outside the domain of a morphism on {f.domain_size} letters"
        )
    if not w.letters:
        return Word(b"", f.codomain_size)
    letters = np.frombuffer(w.letters, dtype=np.uint8)
    return Word(f.table[letters].tobytes(), f.codomain_size)


@dataclass(frozen=True)
class FixedPointSpec:
    morphism: UniformMorphism
    seed: int = 0

    def __post_init__(self):
        f = self.morphism
        if f.domain_size != f.codomain_size:
            raise MorphismError("a fixed point needs an endomorphism (domain == codomain)")
        if not 0 <= self.seed < f.domain_size:
            raise MorphismError(f"seed {self.seed} outside the alphabet")
        if f.images[self.seed][:1] != bytes([self.seed]):
            raise MorphismError(f"morphism is not prolongable on {self.seed}")
        if f.q < 2:
            raise MorphismError("a 1-uniform morphism has no infinite fixed point")

    @property
    def alphabet_size(self) -> int:
        return self.morphism.domain_size

    @property
    def q(self) -> int:
        return self.morphism.q


def fixed_point_prefix(spec: FixedPointSpec, n: int) -> Word:
    """First ``n`` letters of the fixed point of ``spec.morphism`` from ``spec.seed``."""
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    table = spec.morphism.table
    q = spec.q
    w = np.array([spec.seed], dtype=np.uint8)
    while len(w) < n:
        w = table[w[: math.ceil(n / q)]].ravel()
    return Word(w[:n].tobytes(), spec.alphabet_size)


# -- file formats -----------------------------------------------------------

def load_morphism(path: str | Path) -> UniformMorphism:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise MorphismError("morphism file must hold a JSON object")
    return validate_morphism(data, name=Path(path).stem)


def dump_morphism(f: UniformMorphism, path: str | Path) -> None:
    Path(path).write_text(json.dumps(f.to_json(), indent=2) + "\n")


def read_words(path: str | Path, alphabet_size: int | None = None) -> list[Word]:
    """Read one digit word per line; blank lines are skipped."""
    lines = Path(path).read_text().splitlines()
    return [Word.parse(line, alphabet_size) for line in lines if line.strip()]


def write_words(words: Iterable[Word], path: str | Path) -> None:
    Path(path).write_text("".join(f"{w}\n" for w in words))


# -- builtin morphisms ------------------------------------------------------

C = "024130124023013024134124023413024134124023013024"

M = validate_morphism(
    [
        C + "13012402301302402301240241341240230130240230124",
        C + "02301240241301240230130240234124024134124023013",
        C + "02341240241301240234130241301240230130240230124",
        C + "13012402301302402301240241341240230130240234124",
        C + "02341240241301240230130240234124024134124023013",
    ],
    domain_size=5,
    codomain_size=5,
    name="m",
)

F3 = validate_morphism(
    ["0001022", "0102122", "0211122", "0210112", "0002122"],
    domain_size=5,
    codomain_size=3,
    name="f3",
)

F2 = validate_morphism(
    ["0000001", "0101001", "0010011", "0001111", "1011011"],
    domain_size=5,
    codomain_size=2,
    name="f2",
)

M_SPEC = FixedPointSpec(M, 0)

BUILTIN_MORPHISMS = {"m": M, "f3": F3, "f2": F2}

# guards against transcription slips in the tables above
if len(C) != 48 or M.q != 95 or F3.q != 7 or F2.q != 7:
    raise RuntimeError("builtin morphism tables are corrupted")
if any(im[:48] != Word.parse(C).letters for im in M.images):
    raise RuntimeError("an image of m does not start with c")
