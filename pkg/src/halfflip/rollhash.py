"""Vectorised polynomial window hashes under two independent prime moduli.

Hashes are only ever a pre-filter: equal content always gives equal keys, and
callers confirm every key match by comparing letters.
"""

from __future__ import annotations

import numpy as np

# (modulus, base) pairs; moduli < 2**31 so products fit in int64
MODULI = ((2147483647, 1_000_003), (2147483629, 916_132_831))


def _powers(base: int, n: int, mod: int) -> np.ndarray:
    out = np.empty(max(n, 1), dtype=np.int64)
    out[0] = 1
    size = 1
    while size < n:
        step = min(size, n - size)
        out[size:size + step] = out[:step] * pow(base, size, mod) % mod
        size += step
    return out[:n] if n else out[:0]


class WindowHasher:
    """Hashes of every window of a letter array.

    The hash of ``x`` is ``sum((x[j] + 1) * base**j) mod p`` for each modulus,
    so ``hash(uv) = hash(u) + base**len(u) * hash(v)``.
    """

    def __init__(self, letters: bytes):
        text = np.frombuffer(letters, dtype=np.uint8).astype(np.int64) + 1
        n = len(text)
        self.n = n
        self._prefix = []
        self._inv = []
        self._pow = []
        for mod, base in MODULI:
            pw = _powers(base, n + 1, mod)
            inv = _powers(pow(base, mod - 2, mod), n + 1, mod)
            prefix = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(text * pw[:n] % mod, out=prefix[1:])
            self._prefix.append(prefix % mod)
            self._inv.append(inv)
            self._pow.append(pw)

    def windows(self, L: int) -> tuple[np.ndarray, ...]:
        """Per-modulus hashes of ``letters[i:i+L]`` for ``i`` in ``0..n-L``."""
        out = []
        m = self.n - L + 1
        for (mod, _), prefix, inv in zip(MODULI, self._prefix, self._inv):
            diff = (prefix[L:L + m] - prefix[:m]) % mod
            out.append(diff * inv[:m] % mod)
        return tuple(out)

    def concat(self, left: tuple[np.ndarray, ...], right: tuple[np.ndarray, ...],
               left_len: int) -> tuple[np.ndarray, ...]:
        return tuple(
            (a + self._pow[k][left_len] * b) % mod
            for k, ((mod, _), a, b) in enumerate(zip(MODULI, left, right))
        )


def pack(h: tuple[np.ndarray, ...]) -> np.ndarray:
    """Fold the per-modulus hashes into one int64 key."""
    return (h[0] << 31) | h[1]
