import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tdgraph.bmm import BoolMatrix, boolean_product, build_GA, multiply_BC, multiply_via_neighbors
from tdgraph.model import Interval1D
from tdgraph.oracle import oracle_build


def triple_loop(a, b):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=bool)
    for i in range(n):
        for j in range(m):
            out[i, j] = any(a[i, x] and b[x, j] for x in range(k))
    return out


def test_identity_gives_disjoint_intervals():
    rep = build_GA(BoolMatrix(np.eye(2, dtype=bool)))
    assert rep.boxes == (((Interval1D(1, 2),),), ((Interval1D(3, 4),),))
    assert oracle_build(rep).edges() == set()


def test_all_ones_column():
    rep = build_GA(BoolMatrix(np.ones((2, 1), dtype=bool)))
    assert rep.boxes == (((Interval1D(1, 3),),), ((Interval1D(2, 4),),))
    assert oracle_build(rep).edges() == {(1, 2)}


def test_column_sums_give_interval_counts():
    A = np.array([[1, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 0]], dtype=bool)
    rep = build_GA(BoolMatrix(A))
    assert rep.t == 3 and rep.d == 1
    assert [len(b) for b in rep.boxes] == A.sum(axis=1).tolist()
    column_of = {}
    s = 1
    for p, k in enumerate(A.sum(axis=0).tolist()):
        for lo in range(s, s + k):
            column_of[lo] = p
        s += 2 * k
    counts = [0, 0, 0]
    for vb in rep.boxes:
        for (iv,) in vb:
            counts[column_of[iv.lo]] += 1
    assert counts == A.sum(axis=0).tolist()


def test_identity_product(backend):
    assert multiply_via_neighbors(BoolMatrix(np.eye(5)), backend=backend) == BoolMatrix(np.eye(5))


def test_zero_row_keeps_zero_diagonal():
    A = np.array([[1, 0], [0, 0], [1, 1]], dtype=bool)
    M = multiply_via_neighbors(BoolMatrix(A)).bits
    assert not M[1, 1]
    assert np.array_equal(M, triple_loop(A, A.T))


@given(arrays(bool, st.tuples(st.integers(1, 24), st.integers(1, 10))))
def test_product_matches_triple_loop(A):
    M = multiply_via_neighbors(BoolMatrix(A)).bits
    assert np.array_equal(M, triple_loop(A, A.T))
    # off the diagonal the graph itself is A A^T
    G = oracle_build(build_GA(BoolMatrix(A))).matrix
    off = ~np.eye(A.shape[0], dtype=bool)
    assert np.array_equal(G[off], triple_loop(A, A.T)[off])


@pytest.mark.parametrize("seed", range(5))
def test_bc_product(backend, seed):
    rng = np.random.default_rng(seed)
    n, t = int(rng.integers(1, 30)), int(rng.integers(1, 16))
    B = rng.random((n, t)) < 0.3
    C = rng.random((t, n)) < 0.3
    assert np.array_equal(multiply_BC(BoolMatrix(B), BoolMatrix(C), backend=backend).bits, triple_loop(B, C))


def test_bc_edge_cases():
    eye = BoolMatrix(np.eye(3))
    assert multiply_BC(eye, eye) == eye
    zero = BoolMatrix(np.zeros((3, 2)))
    assert not multiply_BC(zero, BoolMatrix(np.ones((2, 3)))).bits.any()
    with pytest.raises(ValueError):
        multiply_BC(eye, BoolMatrix(np.ones((2, 3))))


def test_reference_product_helper():
    A = np.random.default_rng(1).random((6, 4)) < 0.5
    assert np.array_equal(boolean_product(A, A.T), triple_loop(A, A.T))


def test_matrix_text_round_trip():
    M = BoolMatrix(np.array([[1, 0, 1], [0, 0, 1]]))
    assert M.to_text() == "2 3\n101\n001\n"
    assert BoolMatrix.from_text(M.to_text()) == M
    with pytest.raises(ValueError):
        BoolMatrix.from_text("2 2\n10\n1x\n")
    with pytest.raises(ValueError):
        BoolMatrix(np.zeros((0, 2)))
