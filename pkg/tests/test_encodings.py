import itertools
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from balancedga import RandomStream
from balancedga.encodings import (
    BalancedBitstring,
    EncodingError,
    MapOfOnes,
    ZeroLengthsCoding,
    decode_map_of_ones,
    decode_zero_lengths,
    encode_map_of_ones,
    encode_zero_lengths,
    random_balanced,
    search_space_size,
)

X = BalancedBitstring.from_string("01001101")


@pytest.mark.parametrize(
    "bits, runs",
    [
        ("01001101", (1, 2, 0, 1, 0)),
        ("11110000", (0, 0, 0, 0, 4)),
        ("10101010", (0, 1, 1, 1, 1)),
    ],
)
def test_encode_zero_lengths(bits, runs):
    r = encode_zero_lengths(BalancedBitstring.from_string(bits))
    assert r.runs == runs
    assert (r.n, r.k) == (8, 4)


@pytest.mark.parametrize(
    "runs, bits",
    [
        ((1, 2, 0, 1, 0), "01001101"),
        ((0, 0, 0, 0, 4), "11110000"),
        ((4, 0, 0, 0, 0), "00001111"),
    ],
)
def test_decode_zero_lengths(runs, bits):
    assert str(decode_zero_lengths(ZeroLengthsCoding(runs, 8, 4))) == bits


def test_zero_lengths_rejects_bad_sum():
    with pytest.raises(EncodingError):
        ZeroLengthsCoding((1, 1, 0, 0, 0), 8, 4)
    with pytest.raises(EncodingError):
        ZeroLengthsCoding((4, 0, 0, 0), 8, 4)


def test_map_of_ones_examples():
    assert encode_map_of_ones(X).positions == (2, 5, 6, 8)
    assert encode_map_of_ones(BalancedBitstring.from_string("1000")).positions == (1,)
    assert encode_map_of_ones(BalancedBitstring.from_string("0011")).positions == (3, 4)
    assert decode_map_of_ones(MapOfOnes((2, 5, 6, 8), 8)) == X
    assert decode_map_of_ones(MapOfOnes((8, 6, 5, 2), 8)) == X
    assert str(decode_map_of_ones(MapOfOnes((1,), 4))) == "1000"


@pytest.mark.parametrize("positions", [(1, 1), (0, 2), (5, 2)])
def test_map_of_ones_rejects(positions):
    with pytest.raises(EncodingError):
        MapOfOnes(positions, 4)


def test_weight_invariant_enforced():
    with pytest.raises(EncodingError):
        BalancedBitstring((1, 1, 0), 1)


def test_round_trips_exhaustive():
    for n in range(1, 13):
        for bits in itertools.product((0, 1), repeat=n):
            x = BalancedBitstring.of(bits)
            r = encode_zero_lengths(x)
            assert len(r.runs) == x.k + 1
            assert sum(r.runs) == n - x.k
            assert decode_zero_lengths(r) == x
            assert decode_map_of_ones(encode_map_of_ones(x)) == x


@given(st.lists(st.integers(0, 1), min_size=13, max_size=300))
def test_round_trips_random(bits):
    x = BalancedBitstring.of(bits)
    assert decode_zero_lengths(encode_zero_lengths(x)) == x
    assert decode_map_of_ones(encode_map_of_ones(x)) == x


@given(st.lists(st.integers(1, 40), min_size=1, max_size=40, unique=True), st.randoms())
def test_map_of_ones_order_insensitive(positions, rnd):
    shuffled = list(positions)
    rnd.shuffle(shuffled)
    assert decode_map_of_ones(MapOfOnes(positions, 40)) == decode_map_of_ones(
        MapOfOnes(shuffled, 40))


def test_random_balanced_forced():
    rng = RandomStream(3)
    assert random_balanced(4, 0, rng).bits == (0, 0, 0, 0)
    assert random_balanced(4, 4, rng).bits == (1, 1, 1, 1)
    assert sum(random_balanced(64, 32, rng).bits) == 32


def test_random_balanced_weight_grid():
    rng = RandomStream(11)
    pick = random.Random(5)
    for _ in range(100_000):
        n = pick.randint(1, 64)
        k = pick.randint(0, n)
        assert sum(random_balanced(n, k, rng).bits) == k


# reference magnitudes of the benchmark search spaces, quoted to two significant digits
@pytest.mark.parametrize(
    "n, k, printed",
    [(64, 32, 1.8e18), (128, 64, 2.4e37), (256, 128, 5.7e75), (64, 28, 1.1e18),
     (256, 120, 3.5e75), (1024, 496, 2.7e306)],
)
def test_search_space_size_table(n, k, printed):
    size = search_space_size(n, k)
    assert size == comb(n, k)
    assert abs(size - printed) / printed < 0.025


def test_search_space_size():
    assert search_space_size(4, 0) == 1
    with pytest.raises(EncodingError):
        search_space_size(4, 5)
    for n in range(0, 40):
        for k in range(n + 1):
            assert search_space_size(n, k) == search_space_size(n, n - k)
