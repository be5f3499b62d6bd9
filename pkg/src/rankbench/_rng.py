"""Self-contained deterministic PRNG (SplitMix64).

Key generation and encryption must produce byte-identical artifacts for
identical seeds across interpreter versions, so we avoid the stdlib
Mersenne Twister and use a tiny fixed-algorithm generator instead.
Not cryptographically secure; this workbench only needs reproducibility.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class Rng:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        bits = (n - 1).bit_length() or 1
        while True:
            v = self.next64() >> (64 - bits) if bits <= 64 else self._wide(bits)
            if v < n:
                return v

    def _wide(self, bits: int) -> int:
        v = 0
        for _ in range((bits + 63) // 64):
            v = (v << 64) | self.next64()
        return v >> (-bits % 64 or 0)
