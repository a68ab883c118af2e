"""SplitMix64, the generator behind every seeded run.

The algorithm is fixed here (rather than borrowed from :mod:`random`) so a
seed names the same sample stream in any implementation.  Reference:
Steele, Lea, Flood, "Fast splittable pseudorandom number generators" (2014).
"""

from __future__ import annotations

import zlib
from fractions import Fraction
from typing import Sequence, TypeVar

T = TypeVar("T")

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def chance(self, p: Fraction) -> bool:
        p = Fraction(p)
        return self.below(p.denominator) < p.numerator

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]


def trial_seed(seed: int, name: str, trial: int) -> int:
    """Seed of one trial of one named check; independent of run order."""
    mixer = SplitMix64(seed ^ (zlib.crc32(name.encode()) << 32))
    for _ in range(3):
        mixer.next64()
    return (mixer.next64() + trial * GOLDEN) & MASK
