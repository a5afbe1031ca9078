"""Fixed-weight bitstrings and their zero-lengths / map-of-ones encodings.

Positions are 1-based wherever they leave the library (``MapOfOnes``, the
textual bitstring format). The zero-lengths coding of a weight-``k`` string has
``k + 1`` entries: the zeros before the first one, between consecutive ones,
and after the last one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class BalancedBitstring:
    bits: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise EncodingError("bits must be 0 or 1")
        if sum(self.bits) != self.k:
            raise EncodingError(f"weight {sum(self.bits)} != {self.k}")

    @classmethod
    def of(cls, bits: Iterable[int]) -> "BalancedBitstring":
        """Wrap ``bits`` taking its current weight as the prescribed one."""
        bits = tuple(int(b) for b in bits)
        return cls(bits, sum(bits))

    @classmethod
    def from_string(cls, text: str, k: int | None = None) -> "BalancedBitstring":
        if set(text) - {"0", "1"}:
            raise EncodingError(f"not a bitstring: {text!r}")
        bits = tuple(int(c) for c in text)
        return cls(bits, sum(bits) if k is None else k)

    @property
    def n(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class ZeroLengthsCoding:
    runs: tuple[int, ...]
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple(int(r) for r in self.runs))
        if len(self.runs) != self.k + 1:
            raise EncodingError(f"expected {self.k + 1} runs, got {len(self.runs)}")
        if any(r < 0 for r in self.runs):
            raise EncodingError("negative run length")
        if sum(self.runs) != self.n - self.k:
            raise EncodingError(f"runs sum to {sum(self.runs)}, expected {self.n - self.k}")


@dataclass(frozen=True)
class MapOfOnes:
    positions: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        if len(set(self.positions)) != len(self.positions):
            raise EncodingError("duplicate positions")
        if any(not 1 <= p <= self.n for p in self.positions):
            raise EncodingError(f"position out of range [1..{self.n}]")

    @property
    def k(self) -> int:
        return len(self.positions)


def zero_lengths_of(bits: Sequence[int]) -> list[int]:
    runs = [0]
    for b in bits:
        if b:
            runs.append(0)
        else:
            runs[-1] += 1
    return runs


def bits_of_zero_lengths(runs: Sequence[int]) -> list[int]:
    bits: list[int] = []
    for r in runs[:-1]:
        bits.extend([0] * r)
        bits.append(1)
    bits.extend([0] * runs[-1])
    return bits


def encode_zero_lengths(x: BalancedBitstring) -> ZeroLengthsCoding:
    return ZeroLengthsCoding(zero_lengths_of(x.bits), x.n, x.k)


def decode_zero_lengths(r: ZeroLengthsCoding) -> BalancedBitstring:
    return BalancedBitstring(bits_of_zero_lengths(r.runs), r.k)


def encode_map_of_ones(x: BalancedBitstring) -> MapOfOnes:
    return MapOfOnes(tuple(i + 1 for i, b in enumerate(x.bits) if b), x.n)


def decode_map_of_ones(q: MapOfOnes) -> BalancedBitstring:
    bits = [0] * q.n
    for p in q.positions:
        bits[p - 1] = 1
    return BalancedBitstring(bits, q.k)


def random_balanced_bits(n: int, k: int, rng) -> list[int]:
    if not 0 <= k <= n:
        raise EncodingError(f"weight {k} outside [0, {n}]")
    bits = [0] * n
    ones = zeros = 0
    for i in range(n):
        if ones == k:
            break
        if zeros == n - k:
            bits[i] = 1
            continue
        b = rng.coin()
        bits[i] = b
        if b:
            ones += 1
        else:
            zeros += 1
    return bits


def random_balanced(n: int, k: int, rng) -> BalancedBitstring:
    """Left-to-right random string of weight ``k``.

    Each bit is a fair coin until either the ones or the zeros quota is used
    up; the rest of the string is then forced.
    """
    return BalancedBitstring(random_balanced_bits(n, k, rng), k)


def search_space_size(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise EncodingError(f"weight {k} outside [0, {n}]")
    return comb(n, k)
