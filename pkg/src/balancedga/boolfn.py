"""Walsh spectra, nonlinearity and the Boolean-function fitness functions.

Truth tables are indexed so that input ``x = (x1, ..., xn)`` sits at the
integer whose most significant bit is ``x1``; spectra use the same indexing
for ``w``. Fitness values are exact Python ints.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


class TruthTableError(ValueError):
    pass


def num_vars(length: int) -> int:
    if length < 1 or length & (length - 1):
        raise TruthTableError(f"truth table length {length} is not a power of two")
    return length.bit_length() - 1


def walsh_transform(table: Sequence[int]) -> np.ndarray:
    """Integer Walsh spectrum via the in-place butterfly, O(n 2^n)."""
    tt = np.asarray(table, dtype=np.int64)
    num_vars(tt.size)
    w = 1 - 2 * tt
    h = 1
    while h < w.size:
        w = w.reshape(-1, 2, h)
        w = np.concatenate((w[:, 0] + w[:, 1], w[:, 0] - w[:, 1]), axis=1)
        h *= 2
    return w.reshape(-1)


def naive_walsh(table: Sequence[int]) -> list[int]:
    """Direct double sum over inputs and frequencies; O(4^n), for checking."""
    size = len(table)
    num_vars(size)
    out = []
    for w in range(size):
        s = 0
        for x in range(size):
            s += -1 if (table[x] + bin(w & x).count("1")) & 1 else 1
        out.append(s)
    return out


def spectral_radius(table: Sequence[int]) -> int:
    return int(np.abs(walsh_transform(table)).max())


def nonlinearity(table: Sequence[int]) -> int:
    n = num_vars(len(table))
    return (1 << (n - 1)) - spectral_radius(table) // 2 if n else 0


def hamming_weight(table: Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(table)))


def bent_weight(n: int) -> int:
    if n % 2 or n < 2:
        raise TruthTableError(f"bent functions need even n >= 2, got {n}")
    return (1 << (n - 1)) - (1 << (n // 2 - 1))


def covering_bound(n: int) -> int:
    return bent_weight(n)


def fit_balanced_nl(table: Sequence[int], penalized: bool) -> int:
    n = num_vars(len(table))
    nl = nonlinearity(table)
    if not penalized:
        return nl
    return nl - abs((1 << (n - 1)) - hamming_weight(table))


def fit_bent(table: Sequence[int], penalized: bool) -> int:
    n = num_vars(len(table))
    target = bent_weight(n)
    nl = nonlinearity(table)
    if not penalized:
        return nl
    return nl - abs(target - hamming_weight(table))


def to_hex(bits: Sequence[int]) -> str:
    """Hex string, most significant nibble first; position 1 is the top bit."""
    bits = list(bits)
    if not bits:
        return ""
    bits += [0] * (-len(bits) % 4)
    value = int("".join(map(str, bits)), 2)
    return format(value, f"0{len(bits) // 4}x")


def from_hex(text: str, length: int) -> list[int]:
    value = int(text, 16)
    padded = len(text) * 4
    bits = [(value >> (padded - 1 - i)) & 1 for i in range(padded)]
    return bits[:length]
