"""Hypothesis strategies for representations."""
from hypothesis import strategies as st

from tdgraph.model import Interval1D, Representation


@st.composite
def intervals(draw, lo=0, hi=40):
    a = draw(st.integers(lo, hi))
    b = draw(st.integers(lo, hi))
    return Interval1D(min(a, b), max(a, b))


@st.composite
def representations(draw, max_n=12, max_t=3, max_d=3, coord=40):
    """Valid representations with small coordinates, so ties and touching boxes are common."""
    n = draw(st.integers(1, max_n))
    t = draw(st.integers(1, max_t))
    d = draw(st.integers(1, max_d))
    boxes = []
    for _ in range(n):
        k = draw(st.integers(0, t))
        cuts = sorted(draw(st.lists(st.integers(0, coord), min_size=2 * k, max_size=2 * k, unique=True)))
        vboxes = []
        for p in range(k):
            degenerate = draw(st.booleans())
            first = Interval1D(cuts[2 * p], cuts[2 * p] if degenerate else cuts[2 * p + 1])
            rest = tuple(draw(intervals(0, coord)) for _ in range(d - 1))
            vboxes.append((first,) + rest)
        boxes.append(tuple(vboxes))
    return Representation(n, t, d, tuple(boxes))
