"""Splittable deterministic randomness.

Every random choice in the package flows through an Rng.  An Rng is pinned
by a 64-bit seed plus a path of string labels; children are derived by
hashing (seed, path), never by drawing from the parent stream.  That makes
child streams independent of sibling order and of how much the parent has
already been consumed, so per-trial streams keyed by trial index give
schedule-independent results.
"""

from __future__ import annotations

import hashlib

import numpy as np


class Rng:
    """Deterministic pseudo-random stream with labeled splitting."""

    def __init__(self, seed: int, path: tuple[str, ...] = ()):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.path = path
        self._gen = np.random.default_rng(self._entropy())

    def _entropy(self) -> int:
        h = hashlib.blake2b(digest_size=16)
        h.update(self.seed.to_bytes(8, "little"))
        for label in self.path:
            raw = label.encode("utf-8")
            h.update(len(raw).to_bytes(4, "little"))
            h.update(raw)
        return int.from_bytes(h.digest(), "little")

    def child(self, label) -> "Rng":
        """Independent stream addressed by (seed, path + label)."""
        return Rng(self.seed, self.path + (str(label),))

    # -- drawing -----------------------------------------------------------

    def random(self, size=None):
        return self._gen.random(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size=size)

    def normal(self, size=None):
        return self._gen.normal(size=size)

    def complex_normal(self, size):
        """Circularly symmetric complex Gaussians, unit variance per entry."""
        re = self._gen.normal(size=size)
        im = self._gen.normal(size=size)
        return (re + 1j * im) / np.sqrt(2.0)

    def bernoulli(self, p: float) -> int:
        return int(self._gen.random() < p)

    def binomial(self, n: int, p: float) -> int:
        return int(self._gen.binomial(n, p))

    def bits(self, n_bits: int) -> int:
        """Uniform integer in [0, 2^n_bits)."""
        if n_bits == 0:
            return 0
        value = 0
        remaining = n_bits
        while remaining > 0:
            chunk = min(remaining, 62)
            value = (value << chunk) | int(self._gen.integers(0, 1 << chunk))
            remaining -= chunk
        return value

    def shuffle(self, array) -> None:
        self._gen.shuffle(array)

    def __repr__(self):
        return f"Rng(seed={self.seed}, path={'/'.join(self.path)!r})"
