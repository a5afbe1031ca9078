import itertools

import numpy as np
import pytest

from balancedga import _backend
from balancedga.boolfn import (
    TruthTableError,
    bent_weight,
    covering_bound,
    fit_balanced_nl,
    fit_bent,
    from_hex,
    hamming_weight,
    naive_walsh,
    nonlinearity,
    to_hex,
    walsh_transform,
)

AND = (0, 0, 0, 1)
X1 = (0, 0, 1, 1)


def quadratic_bent():
    # x1 x2 xor x3 x4, x1 the top bit of the index
    return [((i >> 3) & (i >> 2) & 1) ^ ((i >> 1) & i & 1) for i in range(16)]


def hadamard(n):
    idx = np.arange(1 << n)
    parity = np.array([bin(v).count("1") & 1 for v in range(1 << n)])
    return 1 - 2 * parity[idx[:, None] & idx[None, :]]


def test_spectrum_examples():
    assert list(walsh_transform((0, 0, 0, 0))) == [4, 0, 0, 0]
    assert list(walsh_transform(AND)) == [2, 2, 2, -2]
    assert list(walsh_transform(X1)) == [0, 0, 4, 0]


def test_spectrum_rejects_bad_length():
    with pytest.raises(TruthTableError):
        walsh_transform([0, 1, 1])
    with pytest.raises(TruthTableError):
        walsh_transform([])


def test_nonlinearity_examples():
    for n in range(1, 7):
        assert nonlinearity([0] * (1 << n)) == 0
    assert nonlinearity(AND) == 1
    f = quadratic_bent()
    assert sorted(set(abs(int(w)) for w in walsh_transform(f))) == [4]
    assert nonlinearity(f) == 6 == covering_bound(4)
    assert hamming_weight(f) == 6


def test_balanced_nl_fitness():
    assert fit_balanced_nl([0] * 8, penalized=True) == -4
    assert fit_balanced_nl(AND, penalized=True) == 0
    assert fit_balanced_nl(AND, penalized=False) == 1
    balanced = [0, 1, 1, 0, 1, 0, 0, 1]
    assert fit_balanced_nl(balanced, True) == fit_balanced_nl(balanced, False) == nonlinearity(balanced)


def test_bent_fitness():
    f = quadratic_bent()
    assert fit_bent(f, True) == fit_bent(f, False) == 6
    assert fit_bent([0] * 16, penalized=True) == -6
    with pytest.raises(TruthTableError):
        fit_bent([0] * 8, penalized=True)
    assert bent_weight(6) == 28 and bent_weight(8) == 120


def test_fast_equals_naive_exhaustive():
    for n in range(0, 4):
        for table in itertools.product((0, 1), repeat=1 << n):
            assert list(walsh_transform(table)) == naive_walsh(table)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_fast_equals_direct_sum_random(n):
    rng = np.random.default_rng(n)
    tables = rng.integers(0, 2, size=(1000, 1 << n))
    expected = (1 - 2 * tables) @ hadamard(n)
    for table, exp in zip(tables, expected):
        spec = walsh_transform(table)
        assert np.array_equal(spec, exp)
        if _backend.core is not None:
            assert np.array_equal(_backend.core.walsh_spectrum(table), exp)
    if n <= 8:
        assert list(walsh_transform(tables[0])) == naive_walsh(list(tables[0]))


@pytest.mark.parametrize("n", [1, 2, 5, 6, 8, 10])
def test_parseval_and_weight_relation(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(200):
        table = rng.integers(0, 2, size=1 << n)
        w = walsh_transform(table)
        assert int(np.sum(w.astype(np.int64) ** 2)) == 1 << (2 * n)
        assert hamming_weight(table) == (1 << (n - 1)) - int(w[0]) // 2
        assert np.all(w % 2 == 0)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_covering_bound_holds(n):
    rng = np.random.default_rng(200 + n)
    for _ in range(300):
        assert nonlinearity(rng.integers(0, 2, size=1 << n)) <= covering_bound(n)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_balanced_nonlinearity_even(n):
    rng = np.random.default_rng(300 + n)
    base = np.array([1] * (1 << (n - 1)) + [0] * (1 << (n - 1)))
    for _ in range(2000):
        assert nonlinearity(rng.permutation(base)) % 2 == 0


def test_hex_round_trip():
    assert to_hex([0, 0, 0, 1]) == "1"
    assert to_hex([1, 0, 0, 0, 0, 0, 0, 0]) == "80"
    assert to_hex([1, 1]) == "c"
    rng = np.random.default_rng(7)
    for length in (1, 3, 4, 17, 64, 256):
        bits = [int(b) for b in rng.integers(0, 2, size=length)]
        assert from_hex(to_hex(bits), length) == bits
