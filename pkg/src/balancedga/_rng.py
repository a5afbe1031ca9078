"""Random stream shared by the pure-Python and compiled backends.

Every random decision in the library is derived from raw 64-bit words of a
numpy ``PCG64`` bit generator using the small set of primitives below. The
compiled core reimplements the same primitives on the same bit generator, so a
run with a given seed produces the same result on either backend.
"""

from __future__ import annotations

import numpy as np

_TWO64 = 1 << 64
_INV53 = 1.0 / (1 << 53)
_BUFFER = 4096


def derive_seed(*keys: int) -> int:
    """Deterministic 64-bit seed for the stream identified by ``keys``."""
    ss = np.random.SeedSequence([int(k) for k in keys])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


class RandomStream:
    """Buffered view over a ``PCG64`` stream.

    ``coin``, ``below``, ``random`` and ``bernoulli`` are the only ways the
    operators consume randomness. Test code substitutes scripted objects with
    the same methods to enumerate choice sequences.
    """

    def __init__(self, seed: int | np.random.BitGenerator | None = None):
        if isinstance(seed, np.random.BitGenerator):
            self.bit_generator = seed
        else:
            self.bit_generator = np.random.PCG64(seed)
        self._buf: list[int] = []
        self._pos = 0

    def next_u64(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self.bit_generator.random_raw(_BUFFER).tolist()
            self._pos = 0
        r = self._buf[self._pos]
        self._pos += 1
        return r

    def coin(self) -> int:
        return self.next_u64() >> 63

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection on the top of the range."""
        if n <= 1:
            return 0
        limit = _TWO64 - _TWO64 % n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def random(self) -> float:
        return (self.next_u64() >> 11) * _INV53

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def permutation(self, n: int) -> list[int]:
        """Uniform permutation of ``range(n)`` (Fisher-Yates, high index first)."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def as_stream(rng) -> RandomStream:
    if rng is None or isinstance(rng, (int, np.integer)):
        return RandomStream(rng)
    return rng
