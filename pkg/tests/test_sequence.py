import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tdgraph.succinct import SuccinctSequence, sequence_space_bound

# endpoint sequence of the 3-vertex, t=2 example graph used across the tests
EXAMPLE = [0, 0, 1, 1, 2, 3, 0, 2, 3, 1, 2, 3]


def test_example_values(backend):
    s = SuccinctSequence(EXAMPLE, 4, backend=backend)
    assert s.rank(0, 7) == 3
    assert s.select(1, 2) == 4
    assert s.access(5) == 2
    assert s.dump() == "0 0 1 1 2 3 0 2 3 1 2 3"
    # same answers from a linear scan
    assert EXAMPLE[:7].count(0) == 3
    assert [i + 1 for i, x in enumerate(EXAMPLE) if x == 1][1] == 4


def test_trivial_cases():
    s = SuccinctSequence([5], 6)
    assert s.select(5, 1) == 1
    assert s.access(1) == 5
    for a in range(6):
        assert s.rank(a, 0) == 0


@pytest.mark.parametrize("sigma,length", [(2, 1), (3, 700), (4, 4096), (17, 2000), (64, 4096)])
def test_exhaustive_against_scan(backend, sigma, length):
    rng = np.random.default_rng(sigma * 1000 + length)
    x = rng.integers(0, sigma, size=length)
    s = SuccinctSequence(x, sigma, backend=backend)
    assert s.symbols() == x.tolist()
    for a in range(sigma):
        hits = (x == a)
        prefix = np.concatenate([[0], np.cumsum(hits)])
        assert [s.rank(a, i) for i in range(length + 1)] == prefix.tolist()
        pos = (np.flatnonzero(hits) + 1).tolist()
        assert [s.select(a, k) for k in range(1, len(pos) + 1)] == pos
        assert s.count(a) == len(pos)


@given(st.integers(1, 64).flatmap(lambda sig: st.tuples(st.just(sig), st.lists(st.integers(0, sig - 1), min_size=1, max_size=400))))
def test_rank_select_identities(case):
    sigma, x = case
    s = SuccinctSequence(x, sigma)
    assert sum(s.rank(a, len(x)) for a in range(sigma)) == len(x)
    for a in set(x):
        for k in range(1, s.count(a) + 1):
            p = s.select(a, k)
            assert s.access(p) == a
            assert s.rank(a, p) == k


@pytest.mark.parametrize("sigma", [2, 4, 16, 64])
@pytest.mark.parametrize("length", [16, 1024, 4096, 65536])
def test_space_within_declared_bound(sigma, length):
    x = np.random.default_rng(0).integers(0, sigma, size=length)
    s = SuccinctSequence(x, sigma)
    assert s.space_bits <= sequence_space_bound(length, sigma)


def test_errors():
    s = SuccinctSequence([0, 1, 1], 2)
    with pytest.raises(IndexError):
        s.rank(2, 1)
    with pytest.raises(IndexError):
        s.rank(0, 4)
    with pytest.raises(IndexError):
        s.select(0, 2)
    with pytest.raises(ValueError):
        SuccinctSequence([0, 3], 2)


def test_serialization_round_trip():
    s = SuccinctSequence(EXAMPLE, 4)
    again = SuccinctSequence.from_bytes(s.to_bytes())
    assert again.symbols() == EXAMPLE
    assert again.to_bytes() == s.to_bytes()
