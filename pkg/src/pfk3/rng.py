"""Seeded randomness: SplitMix64, a 64-bit-state generator with a fixed published algorithm.

Every random choice in the toolkit is drawn from one of these, so a seed
reproduces instances, sampled points and charts bit for bit on any platform.
"""

from __future__ import annotations

ALGORITHM = "splitmix64/v1"
_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("empty range")
        bits = max(n - 1, 1).bit_length()
        while True:
            x = 0
            got = 0
            while got < bits:
                x = (x << 64) | self.next_u64()
                got += 64
            x >>= got - bits
            if x < n:
                return x

    def randint(self, a: int, b: int) -> int:
        return a + self.randrange(b - a + 1)

    def spawn(self, tag: int) -> SplitMix64:
        """An independent child stream derived from this stream and an integer tag."""
        return SplitMix64(self.next_u64() ^ ((tag * 0xD1B54A32D192ED03) & _MASK))


def stream(seed: int, *tags: int) -> SplitMix64:
    """Deterministic stream for (seed, tag, tag, ...)."""
    g = SplitMix64(seed)
    for t in tags:
        g = g.spawn(t)
    return g
