import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tdgraph.succinct import BitVector, PackedArray


def scan_rank(bits, b, i):
    return sum(1 for x in bits[:i] if x == b)


def scan_select(bits, b, k):
    seen = 0
    for pos, x in enumerate(bits, 1):
        if x == b:
            seen += 1
            if seen == k:
                return pos
    raise AssertionError("not found")


@pytest.mark.parametrize("n", [1, 63, 64, 65, 511, 512, 513, 3000])
def test_rank_select_exhaustive(backend, n):
    rng = np.random.default_rng(n)
    for density in (0.02, 0.5, 0.97):
        bits = (rng.random(n) < density).astype(int).tolist()
        bv = BitVector(bits, backend=backend)
        ones = np.cumsum([0] + bits)
        for i in range(n + 1):
            assert bv.rank(1, i) == ones[i]
            assert bv.rank(0, i) == i - ones[i]
        pos1 = [i + 1 for i, x in enumerate(bits) if x]
        pos0 = [i + 1 for i, x in enumerate(bits) if not x]
        assert [bv.select(1, k) for k in range(1, len(pos1) + 1)] == pos1
        assert [bv.select(0, k) for k in range(1, len(pos0) + 1)] == pos0
        assert [bv.access(i) for i in range(1, n + 1)] == bits


@given(st.lists(st.integers(0, 1), min_size=1, max_size=700))
def test_rank_select_properties(bits):
    bv = BitVector(bits)
    assert bv.rank(0, len(bits)) + bv.rank(1, len(bits)) == len(bits)
    for i in range(0, len(bits) + 1, 7):
        assert bv.rank(1, i) == scan_rank(bits, 1, i)
        for b in (0, 1):
            r = bv.rank(b, i)
            if r:
                assert bv.select(b, r) <= i
    for b in (0, 1):
        total = bv.rank(b, len(bits))
        for k in range(1, total + 1, 5):
            assert bv.select(b, k) == scan_select(bits, b, k)


def test_out_of_range():
    bv = BitVector([1, 0, 1])
    with pytest.raises(IndexError):
        bv.rank(1, 4)
    with pytest.raises(IndexError):
        bv.select(1, 3)
    with pytest.raises(IndexError):
        bv.access(0)


def test_serialization_round_trip():
    bits = np.random.default_rng(3).random(1000) < 0.3
    bv = BitVector(bits)
    again = BitVector.from_bytes(bv.to_bytes())
    assert again.to_bytes() == bv.to_bytes()
    assert again.rank(1, 1000) == bv.rank(1, 1000)


@given(st.integers(0, 20), st.lists(st.integers(0, 2**20 - 1), max_size=300))
def test_packed_array_round_trip(extra, values):
    width = max((v.bit_length() for v in values), default=0) + extra % 5
    pa = PackedArray(values, width)
    assert pa.to_numpy().tolist() == values
    assert [pa[i] for i in range(len(values))] == values


def test_packed_array_rejects_overflow():
    with pytest.raises(ValueError):
        PackedArray([8], 3)
    with pytest.raises(ValueError):
        PackedArray([-1], 3)


def test_packed_array_space():
    pa = PackedArray(list(range(100)), 7)
    assert pa.space_bits == 64 * 11  # ceil(700 / 64) words
