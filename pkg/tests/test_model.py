import numpy as np
import pytest
from hypothesis import given

from tdgraph.errors import RepresentationError
from tdgraph.model import (
    Interval1D,
    Representation,
    check_normalized,
    denormalize_vertex,
    format_representation,
    make_box,
    normalize,
    parse_representation,
)
from tdgraph.oracle import oracle_build, oracle_normalized

from .strategies import representations

EXAMPLE_TEXT = """\
# three vertices, at most two intervals each
3 2 1
1 4 ; 9 10
2 3 ; 5 6
7 12
"""


def example():
    return parse_representation(EXAMPLE_TEXT)


def test_parse_example():
    rep = example()
    assert (rep.n, rep.t, rep.d) == (3, 2, 1)
    assert rep.boxes[0] == (make_box(1, 4), make_box(9, 10))
    assert rep.boxes[2] == (make_box(7, 12),)
    assert rep.labels == (1, 2, 3)


def test_parse_empty_vertex_line():
    rep = parse_representation("2 1 2\n1 2 3 4\n\n")
    assert rep.boxes[1] == ()


def test_parse_inline_comment_and_format_round_trip():
    rep = parse_representation("2 2 2\n1 2 1 2 ; 4 5 0 9   # two boxes\n3 3 3 3\n")
    assert parse_representation(format_representation(rep)) == rep


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("2 1 2\n1 2 3 4 5\n1 2 3 4\n", 2, "dimension mismatch"),
        ("2 1 1\n1 2 ; 4 5\n1 2\n", 2, "t exceeded"),
        ("1 1 1\n5 2\n", 2, "lo > hi"),
        ("1 1 1\n1 x\n", 2, "malformed"),
        ("1 1\n", 1, "header"),
        ("2 1 1\n1 2\n", 1, "expected 2 vertex lines"),
        ("1 2 1\n1 2 ;; 3 4\n", 2, "empty box"),
    ],
)
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(RepresentationError) as info:
        parse_representation(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_rejects_boxes_overlapping_in_dimension_one():
    with pytest.raises(RepresentationError, match="overlap"):
        Representation.from_boxes([[[(1, 4)], [(4, 6)]]])
    with pytest.raises(RepresentationError):
        parse_representation("1 2 2\n1 5 1 1 ; 3 7 2 2\n")


def test_normalize_example_ranks():
    norm = normalize(example())
    check_normalized(norm)
    # values 1,2,3,4,5,6,7,9,10,12 get ranks 1..10, the dummy of the third vertex 11,12
    assert norm.left[0].tolist() == [[1, 8], [2, 5], [7, 11]]
    assert norm.right[0].tolist() == [[4, 9], [3, 6], [10, 12]]
    assert norm.dummy.tolist() == [[False, False], [False, False], [False, True]]
    assert norm.real_end == 10


def test_normalize_identity_when_already_canonical():
    rep = Representation.from_boxes([[[(1, 2)], [(5, 6)]], [[(3, 4)], [(7, 8)]]])
    norm = normalize(rep)
    assert norm.order.tolist() == [0, 1]
    assert norm.left[0].tolist() == [[1, 5], [3, 7]]
    assert norm.right[0].tolist() == [[2, 6], [4, 8]]


def test_shared_coordinate_keeps_intersection():
    # right end of one box equals left end of the other
    rep = Representation.from_boxes([[[(1, 5)]], [[(5, 9)]], [[(10, 10)]]])
    norm = normalize(rep)
    a, b = norm.interval(1, 1, 1), norm.interval(2, 1, 1)
    assert a.hi > b.lo
    assert oracle_build(rep).adjacent(0, 1)
    assert oracle_normalized(norm).adjacent(0, 1)


def test_vertices_ordered_by_first_left():
    rep = Representation.from_boxes([[[(5, 6)]], [], [[(1, 2)]], [[(3, 4)]]], t=1)
    norm = normalize(rep)
    assert [denormalize_vertex(norm, v) for v in range(1, 5)] == [3, 4, 1, 2]
    assert norm.internal_of(2) == 4
    with pytest.raises(IndexError):
        denormalize_vertex(norm, 5)


def test_custom_labels_round_trip():
    rep = Representation.from_boxes([[[(5, 6)]], [[(1, 2)]]], labels=["x", "y"])
    norm = normalize(rep)
    assert [norm.label_of(v) for v in (1, 2)] == ["y", "x"]


def test_degenerate_boxes_are_accepted():
    rep = Representation.from_boxes([[[(3, 3), (1, 1)]], [[(3, 3), (1, 2)]]])
    norm = normalize(rep)
    check_normalized(norm)
    assert oracle_normalized(norm).adjacent(0, 1)


@given(representations())
def test_normalize_invariants(rep):
    norm = normalize(rep)
    check_normalized(norm)
    raw = oracle_build(rep).matrix
    ranked = oracle_normalized(norm).matrix
    order = norm.order
    assert np.array_equal(ranked, raw[np.ix_(order, order)])
    # dummies meet nothing, real or dummy
    everything = oracle_normalized(norm, include_dummies=True).matrix
    assert np.array_equal(everything, ranked)
    assert sorted(denormalize_vertex(norm, v) for v in range(1, rep.n + 1)) == list(rep.labels)


@given(representations(max_d=1))
def test_intervals_preserved_box_by_box(rep):
    norm = normalize(rep)
    real = [(norm.order[v], p) for v in range(rep.n) for p in range(rep.t) if not norm.dummy[v, p]]
    assert len(real) == sum(len(b) for b in rep.boxes)
    for v in range(rep.n):
        src = sorted(rep.boxes[norm.order[v]], key=lambda b: b[0].lo)
        for p, box in enumerate(src):
            for q, other_box in enumerate(src):
                a = norm.interval(v + 1, p + 1, 1)
                b = norm.interval(v + 1, q + 1, 1)
                assert (a.lo < b.lo) == (box[0].lo < other_box[0].lo)


def test_interval_meets():
    assert Interval1D(1, 3).meets(Interval1D(3, 4))
    assert not Interval1D(1, 2).meets(Interval1D(3, 4))
