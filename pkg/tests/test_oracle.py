import numpy as np
import pytest

from tdgraph.model import Representation, format_representation, parse_representation
from tdgraph.oracle import gen_random, oracle_build


def test_example_edges():
    rep = parse_representation("3 2 1\n1 4 ; 9 10\n2 3 ; 5 6\n7 12\n")
    assert oracle_build(rep).edges() == {(1, 2), (1, 3)}


def test_single_vertex_and_identical_boxes():
    assert oracle_build(Representation.from_boxes([[[(1, 2)]]])).edges() == set()
    twin = Representation.from_boxes([[[(1, 2), (3, 4)]], [[(1, 2), (3, 4)]]])
    assert oracle_build(twin).edges() == {(1, 2)}


def test_matrix_is_symmetric_with_empty_diagonal():
    g = oracle_build(gen_random(80, 3, 2, seed=3, density=2.0))
    assert np.array_equal(g.matrix, g.matrix.T)
    assert not g.matrix.diagonal().any()


def test_all_dimensions_must_meet():
    rep = Representation.from_boxes([[[(1, 5), (1, 2)]], [[(2, 3), (3, 4)]]])
    assert oracle_build(rep).edges() == set()


def test_pairwise_loop_agrees():
    rep = gen_random(30, 3, 3, seed=8, density=3.0)
    g = oracle_build(rep)
    for u in range(rep.n):
        for v in range(rep.n):
            want = u != v and any(
                all(a.lo <= b.hi and b.lo <= a.hi for a, b in zip(x, y))
                for x in rep.boxes[u]
                for y in rep.boxes[v]
            )
            assert g.adjacent(u, v) == want


def test_generator_is_reproducible():
    a = format_representation(gen_random(50, 3, 2, seed=12))
    assert a == format_representation(gen_random(50, 3, 2, seed=12))
    assert a != format_representation(gen_random(50, 3, 2, seed=13))


@pytest.mark.parametrize("t,d", [(1, 1), (3, 1), (2, 3)])
def test_generator_output_is_valid_with_distinct_endpoints(t, d):
    rep = gen_random(100, t, d, seed=1)
    rep.validate()
    for j in range(d):
        ends = [c for vb in rep.boxes for box in vb for c in box[j]]
        assert len(ends) == len(set(ends))


def test_density_knob():
    n = 200
    sparse = oracle_build(gen_random(n, 2, 2, seed=4, density=0.0)).matrix.sum()
    mid = oracle_build(gen_random(n, 2, 2, seed=4, density=1.0)).matrix.sum()
    dense_graph = oracle_build(gen_random(n, 2, 2, seed=4, density=1000.0, fill=1.0))
    assert sparse == 0
    assert 0 < mid < dense_graph.matrix.sum()
    assert dense_graph.matrix.sum() >= 0.95 * n * (n - 1)
