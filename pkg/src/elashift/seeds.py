"""Deterministic seed derivation for every stochastic component.

All randomness in the package flows through counter-based Philox generators
keyed by 64-bit values derived from index tuples with a SplitMix64-style
mixing hash.  The same tuple always yields the same stream, independent of
process, platform or call order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


def _splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _as_word(part) -> int:
    if isinstance(part, str):
        word = 0xCBF29CE484222325
        for byte in part.encode("utf-8"):
            word = ((word ^ byte) * 0x100000001B3) & _MASK64
        return word
    return int(part) & _MASK64


def mix64(*parts) -> int:
    """Stable 64-bit hash of a tuple of integers and/or strings."""
    state = 0x8E2B_1357_9BD1_A5C3
    for part in parts:
        state = _splitmix64(state ^ _as_word(part))
    return state


def generator(seed: int) -> np.random.Generator:
    """Counter-based generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))
