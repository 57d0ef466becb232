"""Small shared values: the INFINITE sentinel, seeded RNG, 64-bit mixing.

The random generator is splitmix64 with the standard constants
(increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB).  A (seed, budget) pair fully determines every
candidate sequence drawn from it, so search hits are replayable.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1

SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB
FINGERPRINT_BASIS = 0xCBF29CE484222325


class Infinite:
    """Distinguished value for a series that never reaches the trivial term.

    Compares greater than every integer and equal only to itself; prints
    as "inf".  A single shared instance INFINITE is used everywhere.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("loopkit-infinite")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = Infinite()


def is_finite(value) -> bool:
    return value is not INFINITE


def fmt_class(value) -> str:
    """Render a class value for reports: integers as decimal, INFINITE as inf."""
    return "inf" if value is INFINITE else str(value)


def parse_class(text: str):
    return INFINITE if text == "inf" else int(text)


def mix64(value: int) -> int:
    """splitmix64 output stage; a fixed 64-bit bijective mixer."""
    z = value & _MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit stream; the draw order is part of the contract."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + SPLITMIX_GAMMA) & _MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Draw an integer in 0..n-1 as next_u64() mod n (documented bias)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n


def hash_tokens(tokens) -> int:
    """Fold a token sequence into 64 bits: h = mix64(h xor token), FNV basis."""
    h = FINGERPRINT_BASIS
    for v in tokens:
        h = mix64(h ^ (int(v) & _MASK64))
    return h


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True
