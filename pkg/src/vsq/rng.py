"""Portable 64-bit generators: SplitMix64 and xoshiro256++.

Pure-Python integer arithmetic so a given seed yields the same stream on
every platform. xoshiro256++ state is filled with four SplitMix64 outputs.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256pp:
    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self.s = [sm.next() for _ in range(4)]

    @classmethod
    def from_state(cls, state) -> "Xoshiro256pp":
        obj = cls.__new__(cls)
        obj.s = [int(x) & MASK64 for x in state]
        if not any(obj.s):
            raise ValueError("xoshiro256++ state must not be all zero")
        return obj

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[0] + s[3]) & MASK64, 23) + s[0]) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))


def batch_seed(seed: int, batch: int) -> int:
    """Seed for shot batch ``batch``: independent of how batches are scheduled."""
    return SplitMix64((seed ^ (batch * 0xD1B54A32D192ED03)) & MASK64).next()
