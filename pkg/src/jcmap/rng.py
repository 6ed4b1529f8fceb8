"""Platform-independent seeded random numbers.

All randomness in the package flows through :class:`SplitMix64`, Steele,
Lea and Flood's 64-bit counter-based generator. The state advances by the
odd constant ``0x9E3779B97F4A7C15`` and every output is the state passed
through the finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

with all arithmetic modulo 2**64. The same seed gives the same stream on
every platform and Python/numpy version. Because output ``k`` depends only
on ``seed + k * GOLDEN``, blocks of outputs can be produced with numpy
without changing the stream.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a single 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_seed(parent: int, index: int) -> int:
    """Child seed for branch ``index`` (>= 0) of a stream seeded with ``parent``.

    Chaining ``derive_seed`` along a path gives every tree node its own seed,
    independent of the order in which siblings are evaluated.
    """
    return mix64((parent & MASK64) + (index + 1) * GOLDEN)


def path_seed(root: int, path: str) -> int:
    """Seed for a dotted tree path such as ``"1.2.3"``; ``""`` is the root."""
    seed = root & MASK64
    if path:
        for part in path.split("."):
            seed = derive_seed(seed, int(part))
    return seed


class SplitMix64:
    """SplitMix64 stream with the handful of draws the package needs."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self.seed = seed & MASK64
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def random(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle (Durstenfeld, high index first)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        order = list(range(n))
        self.shuffle(order)
        return order

    def u64_array(self, size: int) -> np.ndarray:
        """Next ``size`` outputs as a uint64 array, identical to repeated next_u64()."""
        k = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self._state) + k * np.uint64(GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self._state = (self._state + size * GOLDEN) & MASK64
        return z

    def random_array(self, size: int) -> np.ndarray:
        return (self.u64_array(size) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
