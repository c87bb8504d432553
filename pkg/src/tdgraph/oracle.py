"""Brute-force ground truth and random instance generation.

The oracle compares every pair of boxes directly with numpy broadcasting;
it shares no code with the encoder or the query kernels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from .model import NormalizedRepresentation, Representation, _rank_endpoints, make_box

_CHUNK = 1024


@dataclass(frozen=True, eq=False)
class OracleGraph:
    """Explicit adjacency matrix, rows/columns in representation order (0-based)."""

    n: int
    matrix: np.ndarray
    labels: tuple[Hashable, ...] = ()

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])

    def neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self.matrix[u]).tolist()

    def degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    def edges(self) -> set[tuple[Hashable, Hashable]]:
        labels = self.labels or tuple(range(1, self.n + 1))
        us, vs = np.nonzero(np.triu(self.matrix, 1))
        return {(labels[u], labels[v]) for u, v in zip(us.tolist(), vs.tolist())}


def adjacency_from_boxes(owner: np.ndarray, lo: np.ndarray, hi: np.ndarray, n: int) -> np.ndarray:
    """Vertex adjacency from boxes ``k`` owned by ``owner[k]`` with corners ``lo[k], hi[k]`` (shape (R, d))."""
    R = owner.size
    adj = np.zeros((n, n), dtype=bool)
    if R == 0:
        return adj
    onehot = np.zeros((R, n), dtype=np.int32)
    onehot[np.arange(R), owner] = 1
    counts = np.zeros((n, n), dtype=np.int64)
    for start in range(0, R, _CHUNK):
        stop = min(R, start + _CHUNK)
        meet = np.all(
            (lo[start:stop, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[start:stop, None, :]),
            axis=2,
        )
        counts += onehot[start:stop].T @ (meet.astype(np.int32) @ onehot)
    adj = counts > 0
    np.fill_diagonal(adj, False)
    return adj


def _raw_arrays(rep: Representation):
    owner, lo, hi = [], [], []
    for v, vboxes in enumerate(rep.boxes):
        for box in vboxes:
            owner.append(v)
            lo.append([iv.lo for iv in box])
            hi.append([iv.hi for iv in box])
    shape = (len(owner), rep.d)
    return (
        np.asarray(owner, dtype=np.int64),
        np.asarray(lo, dtype=np.int64).reshape(shape),
        np.asarray(hi, dtype=np.int64).reshape(shape),
    )


def oracle_build(rep: Representation) -> OracleGraph:
    """Adjacency by direct box intersection on the raw coordinates."""
    owner, lo, hi = _raw_arrays(rep)
    return OracleGraph(rep.n, adjacency_from_boxes(owner, lo, hi, rep.n), tuple(rep.labels))


def oracle_normalized(norm: NormalizedRepresentation, *, include_dummies: bool = False) -> OracleGraph:
    """Adjacency of the ranked boxes, rows in internal vertex order."""
    mask = np.ones_like(norm.dummy) if include_dummies else ~norm.dummy
    owner, slot = np.nonzero(mask)
    lo = norm.left[:, owner, slot].T
    hi = norm.right[:, owner, slot].T
    labels = tuple(norm.labels[int(i)] for i in norm.order)
    return OracleGraph(norm.n, adjacency_from_boxes(owner, lo, hi, norm.n), labels)


def ranked_degrees(norm: NormalizedRepresentation) -> np.ndarray:
    return oracle_normalized(norm).degrees()


def gen_random(
    n: int,
    t: int,
    d: int,
    seed: int,
    density: float = 1.0,
    fill: float = 0.7,
) -> Representation:
    """Reproducible random representation with distinct endpoints per dimension.

    Each vertex gets ``Binomial(t, fill)`` boxes. In dimension 1 the unit
    range is cut into one cell per box and each interval sits inside its
    cell, which keeps a vertex's boxes disjoint there. Interval lengths
    scale linearly with ``density``: 0 gives point boxes (almost no edges),
    large values give boxes filling their cells (almost complete graphs).
    Coordinates are finally replaced by their ranks, so all endpoints in a
    dimension are distinct integers.
    """
    if n < 1 or t < 1 or d < 1:
        raise ValueError("n, t, d must be positive")
    rng = np.random.default_rng(seed)
    counts = rng.binomial(t, fill, size=n)
    owner = np.repeat(np.arange(n, dtype=np.int64), counts)
    slot = np.concatenate([np.arange(c, dtype=np.int64) for c in counts]) if n else np.zeros(0, np.int64)
    R = owner.size
    cells = counts[owner].astype(float)
    width = 1.0 / np.maximum(cells, 1)

    lo = np.empty((R, d))
    hi = np.empty((R, d))
    # dimension 1: inside the box's own cell, leaving a gap so cells never touch
    span = np.minimum(0.98 * width, density * rng.random(R) * 4.0 / (n * t))
    start = slot * width + 0.01 * width + rng.random(R) * (0.98 * width - span)
    lo[:, 0], hi[:, 0] = start, start + span
    for j in range(1, d):
        span = np.minimum(1.0, density * rng.random(R) * 0.8)
        start = rng.random(R) * (1.0 - span)
        lo[:, j], hi[:, j] = start, start + span

    ilo = np.empty((R, d), dtype=np.int64)
    ihi = np.empty((R, d), dtype=np.int64)
    for j in range(d):
        ilo[:, j], ihi[:, j] = _rank_endpoints(lo[:, j], hi[:, j], owner, slot)

    boxes: list[list] = [[] for _ in range(n)]
    for k in range(R):
        coords = []
        for j in range(d):
            coords += [int(ilo[k, j]), int(ihi[k, j])]
        boxes[owner[k]].append(make_box(*coords))
    return Representation(n, t, d, tuple(tuple(b) for b in boxes))
