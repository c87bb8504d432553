"""Box representations of intersection graphs and their normalized form.

A representation gives every vertex at most ``t`` axis-parallel boxes in
``d`` dimensions; two vertices are adjacent when some box of one meets some
box of the other in every dimension (closed intervals).

:func:`normalize` turns a representation into the canonical shape the
encoder works on:

* every vertex is padded to exactly ``t`` boxes with dummy boxes that meet
  nothing;
* in each dimension the ``2tn`` endpoints are replaced by distinct ranks
  ``1..2tn`` (at equal coordinates, left endpoints rank before right
  endpoints, so touching intervals still meet);
* a vertex's boxes are ordered by their dimension-1 position (slot order);
* vertices are renumbered by the dimension-1 left rank of their first box.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import RepresentationError


class Interval1D(NamedTuple):
    """Closed integer interval ``[lo, hi]``."""

    lo: int
    hi: int

    def meets(self, other: Interval1D) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


# a box is one Interval1D per dimension, dimension 1 first
BoxTD = tuple[Interval1D, ...]


def make_box(*coords: int) -> BoxTD:
    """``make_box(l1, r1, l2, r2, ...)`` -> box with one interval per dimension."""
    if len(coords) % 2:
        raise ValueError("a box needs an even number of coordinates")
    return tuple(Interval1D(int(coords[i]), int(coords[i + 1])) for i in range(0, len(coords), 2))


def boxes_meet(a: BoxTD, b: BoxTD) -> bool:
    return all(x.meets(y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Representation:
    """Raw ``t,d`` representation: per-vertex tuples of up to ``t`` boxes.

    ``labels`` are the external vertex identifiers (``1..n`` by default).
    Construct directly or with :meth:`from_boxes`, which accepts nested
    lists of ``(lo, hi)`` pairs.
    """

    n: int
    t: int
    d: int
    boxes: tuple[tuple[BoxTD, ...], ...]
    labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))

    @classmethod
    def from_boxes(cls, boxes, t: int | None = None, d: int | None = None, labels=None) -> Representation:
        """Build from ``boxes[v] = [[(lo, hi) per dimension] per box]``.

        ``t`` and ``d`` default to the largest box count and the dimension
        of the first box found.
        """
        norm = tuple(
            tuple(tuple(Interval1D(int(lo), int(hi)) for lo, hi in box) for box in vboxes)
            for vboxes in boxes
        )
        if d is None:
            d = next((len(b) for vb in norm for b in vb), 1)
        if t is None:
            t = max((len(vb) for vb in norm), default=1) or 1
        rep = cls(len(norm), t, d, norm, tuple(labels) if labels is not None else ())
        rep.validate()
        return rep

    def validate(self) -> None:
        """Raise :class:`RepresentationError` unless the representation is well formed."""
        if self.n < 1 or self.t < 1 or self.d < 1:
            raise RepresentationError(f"n, t, d must be positive (got {self.n}, {self.t}, {self.d})")
        if len(self.boxes) != self.n:
            raise RepresentationError(f"expected {self.n} vertices, got {len(self.boxes)}")
        if len(self.labels) != self.n or len(set(self.labels)) != self.n:
            raise RepresentationError("labels must be n distinct values")
        for v, vboxes in enumerate(self.boxes):
            if len(vboxes) > self.t:
                raise RepresentationError(f"vertex {self.labels[v]}: t exceeded ({len(vboxes)} > {self.t})")
            for box in vboxes:
                if len(box) != self.d:
                    raise RepresentationError(f"vertex {self.labels[v]}: dimension mismatch")
                if any(iv.lo > iv.hi for iv in box):
                    raise RepresentationError(f"vertex {self.labels[v]}: lo > hi")
            first = sorted(box[0] for box in vboxes)
            for a, b in zip(first, first[1:]):
                if a.hi >= b.lo:
                    raise RepresentationError(
                        f"vertex {self.labels[v]}: boxes overlap in dimension 1 ({a} and {b})"
                    )


def parse_representation(text: str) -> Representation:
    """Parse the text format.

    Header ``n t d``, then one line per vertex holding its boxes separated
    by ``;``; each box is ``l_1 r_1 ... l_d r_d``. An empty line is a vertex
    with no boxes. ``#`` starts a comment; lines holding only a comment are
    skipped.
    """
    header = None
    vertex_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, hash_, _ = raw.partition("#")
        if hash_ and not body.strip():
            continue
        body = body.strip()
        if header is None:
            if not body:
                continue
            header = (lineno, body)
        else:
            vertex_lines.append((lineno, body))
    if header is None:
        raise RepresentationError("missing header line 'n t d'", line=1)
    hline, htext = header
    try:
        n, t, d = (int(x) for x in htext.split())
    except ValueError:
        raise RepresentationError(f"malformed header {htext!r}, expected 'n t d'", line=hline) from None
    if n < 1 or t < 1 or d < 1:
        raise RepresentationError("n, t, d must be positive", line=hline)
    while len(vertex_lines) > n and not vertex_lines[-1][1]:
        vertex_lines.pop()
    if len(vertex_lines) != n:
        where = vertex_lines[n][0] if len(vertex_lines) > n else hline
        raise RepresentationError(f"expected {n} vertex lines, found {len(vertex_lines)}", line=where)

    boxes = []
    for lineno, body in vertex_lines:
        vboxes = []
        if body:
            for chunk in body.split(";"):
                try:
                    nums = [int(x) for x in chunk.split()]
                except ValueError:
                    raise RepresentationError(f"malformed box {chunk.strip()!r}", line=lineno) from None
                if not nums:
                    raise RepresentationError("empty box between ';'", line=lineno)
                if len(nums) != 2 * d:
                    raise RepresentationError(
                        f"dimension mismatch: box has {len(nums)} numbers, expected {2 * d}", line=lineno
                    )
                box = make_box(*nums)
                if any(iv.lo > iv.hi for iv in box):
                    raise RepresentationError("lo > hi", line=lineno)
                vboxes.append(box)
        if len(vboxes) > t:
            raise RepresentationError(f"t exceeded: {len(vboxes)} boxes > {t}", line=lineno)
        boxes.append(tuple(vboxes))
    rep = Representation(n, t, d, tuple(boxes))
    try:
        rep.validate()
    except RepresentationError as exc:
        raise RepresentationError(str(exc), line=vertex_lines[0][0]) from None
    return rep


def format_representation(rep: Representation) -> str:
    out = io.StringIO()
    out.write(f"{rep.n} {rep.t} {rep.d}\n")
    for vboxes in rep.boxes:
        out.write(" ; ".join(" ".join(f"{iv.lo} {iv.hi}" for iv in box) for box in vboxes))
        out.write("\n")
    return out.getvalue()


@dataclass(frozen=True, eq=False)
class NormalizedRepresentation:
    """Rank-space form of a representation.

    ``left[j, v, p]`` / ``right[j, v, p]`` are the 1-based ranks of the
    endpoints of slot ``p`` of internal vertex ``v`` in dimension ``j`` (all
    0-based array indices). ``order[v]`` is the input index of internal
    vertex ``v``; ``labels`` are the external labels in input order.
    """

    n: int
    t: int
    d: int
    left: np.ndarray
    right: np.ndarray
    dummy: np.ndarray
    order: np.ndarray
    labels: tuple[Hashable, ...]
    real_boxes: int

    @property
    def real_end(self) -> int:
        """Largest rank used by a real box; dummy ranks are all above it."""
        return 2 * self.real_boxes

    def interval(self, v: int, p: int, j: int) -> Interval1D:
        """Ranked interval of internal vertex ``v``, slot ``p``, dimension ``j`` (1-based)."""
        return Interval1D(int(self.left[j - 1, v - 1, p - 1]), int(self.right[j - 1, v - 1, p - 1]))

    def label_of(self, v: int) -> Hashable:
        return denormalize_vertex(self, v)

    def internal_of(self, label: Hashable) -> int:
        index = self._label_index()
        try:
            return index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def _label_index(self) -> dict:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {self.labels[int(i)]: v + 1 for v, i in enumerate(self.order)}
            object.__setattr__(self, "_index", cached)
        return cached

    def to_representation(self) -> Representation:
        """The ranked boxes (dummies included) as a plain representation on internal ids."""
        boxes = tuple(
            tuple(
                tuple(Interval1D(int(self.left[j, v, p]), int(self.right[j, v, p])) for j in range(self.d))
                for p in range(self.t)
            )
            for v in range(self.n)
        )
        return Representation(self.n, self.t, self.d, boxes)


def _rank_endpoints(values_lo, values_hi, vert, slot) -> tuple[np.ndarray, np.ndarray]:
    """Ranks 1..2m for m intervals: by value, lefts before rights, then (vertex, slot)."""
    m = values_lo.size
    vals = np.concatenate([values_lo, values_hi])
    side = np.concatenate([np.zeros(m, np.int64), np.ones(m, np.int64)])
    vv = np.concatenate([vert, vert])
    ss = np.concatenate([slot, slot])
    perm = np.lexsort((ss, vv, side, vals))
    ranks = np.empty(2 * m, dtype=np.int64)
    ranks[perm] = np.arange(1, 2 * m + 1)
    return ranks[:m], ranks[m:]


def normalize(rep: Representation) -> NormalizedRepresentation:
    rep.validate()
    n, t, d = rep.n, rep.t, rep.d
    vert, slot, coords = [], [], []
    counts = np.zeros(n, dtype=np.int64)
    for v, vboxes in enumerate(rep.boxes):
        ordered = sorted(vboxes, key=lambda b: b[0].lo)
        counts[v] = len(ordered)
        for p, box in enumerate(ordered):
            vert.append(v)
            slot.append(p)
            coords.append([c for iv in box for c in iv])
    R = len(vert)
    vert_a = np.asarray(vert, dtype=np.int64)
    slot_a = np.asarray(slot, dtype=np.int64)
    coords_a = np.asarray(coords, dtype=np.int64).reshape(R, 2 * d)

    left = np.zeros((d, n, t), dtype=np.int64)
    right = np.zeros((d, n, t), dtype=np.int64)
    for j in range(d):
        lr, rr = _rank_endpoints(coords_a[:, 2 * j], coords_a[:, 2 * j + 1], vert_a, slot_a)
        left[j, vert_a, slot_a] = lr
        right[j, vert_a, slot_a] = rr

    # dummies in (vertex, slot) order get consecutive rank pairs after all real ranks
    dummy = np.arange(t)[None, :] >= counts[:, None]
    dv, dp = np.nonzero(dummy)
    k = np.arange(dv.size, dtype=np.int64)
    left[:, dv, dp] = 2 * R + 2 * k + 1
    right[:, dv, dp] = 2 * R + 2 * k + 2

    order = np.argsort(left[0, :, 0], kind="stable")
    return NormalizedRepresentation(
        n=n,
        t=t,
        d=d,
        left=np.ascontiguousarray(left[:, order, :]),
        right=np.ascontiguousarray(right[:, order, :]),
        dummy=np.ascontiguousarray(dummy[order]),
        order=order.astype(np.int64),
        labels=tuple(rep.labels),
        real_boxes=R,
    )


def denormalize_vertex(norm: NormalizedRepresentation, internal_id: int) -> Hashable:
    """External label of the 1-based internal vertex id."""
    if not 1 <= internal_id <= norm.n:
        raise IndexError(f"internal vertex {internal_id} outside [1, {norm.n}]")
    return norm.labels[int(norm.order[internal_id - 1])]


def check_normalized(norm: NormalizedRepresentation) -> None:
    """Assert the structural invariants of a normalized representation."""
    full = np.arange(1, 2 * norm.t * norm.n + 1)
    for j in range(norm.d):
        used = np.sort(np.concatenate([norm.left[j].ravel(), norm.right[j].ravel()]))
        assert np.array_equal(used, full), f"dimension {j + 1}: ranks are not 1..2tn"
    assert (norm.left < norm.right).all(), "left rank not below right rank"
    first = norm.left[0, :, 0]
    assert (np.diff(first) > 0).all(), "vertices not ordered by first dimension-1 left"
    if norm.t > 1:
        assert (norm.right[0, :, :-1] < norm.left[0, :, 1:]).all(), "slots not ordered in dimension 1"
    assert (norm.left[0][norm.dummy] > norm.real_end).all(), "dummy inside real rank range"


def iter_boxes(rep: Representation) -> Iterable[tuple[int, BoxTD]]:
    for v, vboxes in enumerate(rep.boxes):
        for box in vboxes:
            yield v, box


def representation_arrays(rep: Representation) -> tuple[np.ndarray, np.ndarray]:
    """``(owner, coords)`` with ``coords[k] = [l_1, r_1, ..., l_d, r_d]`` for every real box."""
    owner, coords = [], []
    for v, box in iter_boxes(rep):
        owner.append(v)
        coords.append([c for iv in box for c in iv])
    return (
        np.asarray(owner, dtype=np.int64),
        np.asarray(coords, dtype=np.int64).reshape(len(owner), 2 * rep.d),
    )


__all__: Sequence[str] = [
    "BoxTD",
    "Interval1D",
    "NormalizedRepresentation",
    "Representation",
    "boxes_meet",
    "check_normalized",
    "denormalize_vertex",
    "format_representation",
    "make_box",
    "normalize",
    "parse_representation",
    "representation_arrays",
]
