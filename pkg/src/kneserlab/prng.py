"""Deterministic 64-bit hash PRNG used for edge sampling.

Edge coins are drawn by hashing (seed, canonical edge index) through the
SplitMix64 finalizer, so presence queries are independent of iteration order
and reproducible across platforms. Retention probabilities are quantized to
dyadic rationals with 32-bit resolution before comparison.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer: an avalanching bijection on 64-bit words."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def split_seed(seed: int) -> int:
    """Derive the edge-stream key from a user seed."""
    return mix64((seed & MASK64) + GOLDEN)


def coin_word(seed: int, index: int) -> int:
    """64-bit coin word for the edge with the given canonical index."""
    key = split_seed(seed)
    return mix64(key ^ (((index + 1) * GOLDEN) & MASK64))


def coin_threshold(p: Fraction) -> int:
    """Quantize p to t/2^32; an edge is present iff its low coin word < t."""
    if not 0 <= p <= 1:
        raise ValueError(f"probability must be in [0,1], got {p}")
    return (p.numerator << 32) // p.denominator


def coin_words_bulk(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Vectorized coin_word for indices start..start+count-1; bit-identical to the scalar."""
    key = np.uint64(split_seed(seed))
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = key ^ (idx * np.uint64(GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def parse_probability(text: str) -> Fraction:
    """Parse 'NUM/DEN' or a plain integer/decimal into an exact Fraction."""
    t = text.strip()
    if "/" in t:
        num, den = t.split("/", 1)
        p = Fraction(int(num), int(den))
    else:
        p = Fraction(t)
    if not 0 <= p <= 1:
        raise ValueError(f"probability must be in [0,1], got {text!r}")
    return p
