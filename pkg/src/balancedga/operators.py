"""Crossover and mutation operators.

The ``*_bits`` / ``*_runs`` / ``*_positions`` kernels work on plain lists and
are what the pure-Python engine calls in its inner loop; the public functions
wrap them with the typed encodings. ``rng`` is anything exposing the
:class:`~balancedga._rng.RandomStream` primitives (``coin``, ``below``,
``random``, ``bernoulli``, ``permutation``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .encodings import (
    BalancedBitstring,
    EncodingError,
    MapOfOnes,
    ZeroLengthsCoding,
    bits_of_zero_lengths,
    zero_lengths_of,
)

ONE_POINT = "op"
COUNTER_BASED = "cb"
ZERO_LENGTHS = "zl"
MAP_OF_ONES = "moo"
_TAGS = (ONE_POINT, COUNTER_BASED, ZERO_LENGTHS, MAP_OF_ONES)


@dataclass(frozen=True)
class CrossoverKind:
    tag: str
    shuffled: bool = False

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown crossover {self.tag!r}")
        if self.shuffled and self.tag == ONE_POINT:
            raise ValueError("one-point crossover has no shuffled variant")

    @property
    def balanced(self) -> bool:
        return self.tag != ONE_POINT

    @property
    def code(self) -> str:
        return self.tag + ("-s" if self.shuffled else "")

    @classmethod
    def parse(cls, code: str) -> "CrossoverKind":
        code = code.strip().lower()
        if code.endswith("-s"):
            return cls(code[:-2], True)
        return cls(code)

    def __str__(self) -> str:
        return self.code


ALL_KINDS = tuple(
    CrossoverKind.parse(c) for c in ("op", "cb", "zl", "moo", "cb-s", "zl-s", "moo-s")
)


# -- list kernels ----------------------------------------------------------


def one_point_bits(p1: Sequence[int], p2: Sequence[int], rng) -> list[int]:
    n = len(p1)
    cut = 1 + rng.below(n - 1)
    if rng.coin():
        return list(p2[:cut]) + list(p1[cut:])
    return list(p1[:cut]) + list(p2[cut:])


def counter_cross_bits(p1: Sequence[int], p2: Sequence[int], k: int, rng) -> list[int]:
    n = len(p1)
    child = [0] * n
    ones = zeros = 0
    for i in range(n):
        if ones == k:
            child[i] = 0
        elif zeros == n - k:
            child[i] = 1
        else:
            b = p2[i] if rng.coin() else p1[i]
            child[i] = b
            if b:
                ones += 1
            else:
                zeros += 1
    return child


def zero_lengths_cross_runs(
    r1: Sequence[int], r2: Sequence[int], n: int, k: int, rng
) -> list[int]:
    quota = n - k
    child = [0] * (k + 1)
    sumz = 0
    for i in range(k):
        if sumz == quota:
            child[i] = 0
            continue
        v = r2[i] if rng.coin() else r1[i]
        if sumz + v <= quota:
            child[i] = v
            sumz += v
        else:
            child[i] = quota - sumz
            sumz = quota
    child[k] = quota - sumz
    return child


def _remove_value(items: list[int], v: int) -> None:
    j = items.index(v)
    items[j] = items[-1]
    items.pop()


def map_of_ones_cross_positions(q1: Sequence[int], q2: Sequence[int], rng) -> list[int]:
    """Child support drawn position by position from the parents' supports.

    Entries are removed by moving the last entry into the vacated slot, so the
    random index always ranges over the entries still available.
    """
    a, b = list(q1), list(q2)
    common = set(a).intersection(b)
    child = []
    for _ in range(len(a)):
        src, other = (b, a) if rng.coin() else (a, b)
        idx = rng.below(len(src))
        v = src[idx]
        src[idx] = src[-1]
        src.pop()
        if v in common:
            _remove_value(other, v)
        child.append(v)
    return child


def swap_mutation_bits(bits: Sequence[int], p_m: float, rng) -> list[int]:
    out = list(bits)
    if not rng.bernoulli(p_m):
        return out
    n = len(out)
    k = sum(out)
    if k == 0 or k == n:
        return out
    i1 = _nth(out, 1, rng.below(k))
    i0 = _nth(out, 0, rng.below(n - k))
    out[i1], out[i0] = 0, 1
    return out


def _nth(bits: Sequence[int], value: int, rank: int) -> int:
    for i, b in enumerate(bits):
        if b == value:
            if rank == 0:
                return i
            rank -= 1
    raise IndexError(rank)


def bit_flip_bits(bits: Sequence[int], p_m: float, rng) -> list[int]:
    out = list(bits)
    if rng.bernoulli(p_m):
        out[rng.below(len(out))] ^= 1
    return out


def _balanced_child_bits(tag: str, p1: Sequence[int], p2: Sequence[int], k: int, rng):
    n = len(p1)
    if tag == COUNTER_BASED:
        return counter_cross_bits(p1, p2, k, rng)
    if tag == ZERO_LENGTHS:
        runs = zero_lengths_cross_runs(zero_lengths_of(p1), zero_lengths_of(p2), n, k, rng)
        return bits_of_zero_lengths(runs)
    q = map_of_ones_cross_positions(
        [i for i in range(n) if p1[i]], [i for i in range(n) if p2[i]], rng
    )
    child = [0] * n
    for p in q:
        child[p] = 1
    return child


def cross_bits(kind: CrossoverKind, p1: Sequence[int], p2: Sequence[int], rng) -> list[int]:
    """Apply ``kind`` to two phenotype bitstrings and return the child bitstring."""
    if kind.tag == ONE_POINT:
        return one_point_bits(p1, p2, rng)
    k = sum(p1)
    if not kind.shuffled:
        return _balanced_child_bits(kind.tag, p1, p2, k, rng)
    perm = rng.permutation(len(p1))
    return _shuffled(kind.tag, p1, p2, k, perm, rng)


def _shuffled(tag, p1, p2, k, perm, rng):
    s1 = [p1[j] for j in perm]
    s2 = [p2[j] for j in perm]
    sc = _balanced_child_bits(tag, s1, s2, k, rng)
    child = [0] * len(perm)
    for i, j in enumerate(perm):
        child[j] = sc[i]
    return child


# -- typed API -------------------------------------------------------------


def _check_pair(p1: BalancedBitstring, p2: BalancedBitstring) -> None:
    if p1.n != p2.n or p1.k != p2.k:
        raise EncodingError(f"parents differ: (n={p1.n}, k={p1.k}) vs (n={p2.n}, k={p2.k})")


def one_point_crossover(p1: Sequence[int], p2: Sequence[int], rng) -> tuple[int, ...]:
    """One child of a uniform-cut one-point crossover; weight is not preserved."""
    b1 = p1.bits if isinstance(p1, BalancedBitstring) else tuple(p1)
    b2 = p2.bits if isinstance(p2, BalancedBitstring) else tuple(p2)
    if len(b1) != len(b2):
        raise ValueError("parents differ in length")
    if len(b1) < 2:
        raise ValueError("one-point crossover needs n >= 2")
    return tuple(one_point_bits(b1, b2, rng))


def counter_cross(p1: BalancedBitstring, p2: BalancedBitstring, rng) -> BalancedBitstring:
    _check_pair(p1, p2)
    return BalancedBitstring(counter_cross_bits(p1.bits, p2.bits, p1.k, rng), p1.k)


def zero_lengths_cross(p1: ZeroLengthsCoding, p2: ZeroLengthsCoding, rng) -> ZeroLengthsCoding:
    if (p1.n, p1.k) != (p2.n, p2.k):
        raise EncodingError("parents encode different (n, k)")
    return ZeroLengthsCoding(
        zero_lengths_cross_runs(p1.runs, p2.runs, p1.n, p1.k, rng), p1.n, p1.k
    )


def map_of_ones_cross(p1: MapOfOnes, p2: MapOfOnes, rng) -> MapOfOnes:
    if p1.k != p2.k or p1.n != p2.n:
        raise EncodingError("parents differ in n or k")
    return MapOfOnes(map_of_ones_cross_positions(p1.positions, p2.positions, rng), p1.n)


def _phenotype(x) -> BalancedBitstring:
    if isinstance(x, BalancedBitstring):
        return x
    if isinstance(x, ZeroLengthsCoding):
        return BalancedBitstring(bits_of_zero_lengths(x.runs), x.k)
    if isinstance(x, MapOfOnes):
        bits = [0] * x.n
        for p in x.positions:
            bits[p - 1] = 1
        return BalancedBitstring(bits, x.k)
    raise TypeError(f"unsupported genotype {type(x).__name__}")


def with_shuffle(kind: CrossoverKind | str, p1, p2, rng, perm: Sequence[int] | None = None):
    """Run a balanced crossover under a random relabelling of the positions.

    Parents are given in the representation of ``kind`` and the child is
    returned in the same representation. ``perm`` (0-based) overrides the
    freshly drawn permutation.
    """
    if isinstance(kind, str):
        kind = CrossoverKind.parse(kind)
    if not kind.balanced:
        raise ValueError("shuffling applies to balanced crossovers only")
    x1, x2 = _phenotype(p1), _phenotype(p2)
    _check_pair(x1, x2)
    if perm is None:
        perm = rng.permutation(x1.n)
    elif sorted(perm) != list(range(x1.n)):
        raise ValueError("perm is not a permutation of range(n)")
    child = BalancedBitstring(_shuffled(kind.tag, x1.bits, x2.bits, x1.k, perm, rng), x1.k)
    if isinstance(p1, ZeroLengthsCoding):
        return ZeroLengthsCoding(zero_lengths_of(child.bits), child.n, child.k)
    if isinstance(p1, MapOfOnes):
        return MapOfOnes(tuple(i + 1 for i, b in enumerate(child.bits) if b), child.n)
    return child


def swap_mutation(child: BalancedBitstring, p_m: float, rng) -> BalancedBitstring:
    return BalancedBitstring(swap_mutation_bits(child.bits, p_m, rng), child.k)


def bit_flip_mutation(child: Sequence[int], p_m: float, rng) -> tuple[int, ...]:
    """With probability ``p_m`` flip one uniformly chosen bit."""
    bits = child.bits if isinstance(child, BalancedBitstring) else child
    return tuple(bit_flip_bits(bits, p_m, rng))
