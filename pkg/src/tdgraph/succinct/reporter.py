"""Report every interval of a fixed set that meets a query interval.

Intervals are indexed by the rank of their right endpoint. For each right
rank ``k`` the structure keeps the rank of that interval's left endpoint
among all left endpoints (``left_rank_by_right[k]``) and a block-decomposed
range-minimum index over that array. A query ``[s, e]`` meets exactly the
intervals whose right rank exceeds ``a`` (rights before ``s``) and whose left
rank is at most ``c`` (lefts at or before ``e``); those are enumerated by
recursive range-minimum splitting, so every visited node is either a hit or
a pruned child of one.
"""
from __future__ import annotations

import struct

import numpy as np

from .._backend import get_backend
from .bitvector import PackedArray

RMQ_BLOCK = 16


def _block_table(values: np.ndarray, block: int) -> tuple[np.ndarray, int]:
    """Sparse table of argmin positions over per-block minima, flattened level-major."""
    n = values.size
    nblocks = max(1, -(-n // block))
    padded = np.full(nblocks * block, np.iinfo(np.int64).max, dtype=np.int64)
    padded[:n] = values
    local = padded.reshape(nblocks, block).argmin(axis=1)
    level = np.arange(nblocks, dtype=np.int64) * block + local
    rows = [level]
    span = 1
    while 2 * span <= nblocks:
        prev = rows[-1]
        left = prev[: nblocks - 2 * span + 1]
        right = prev[span : nblocks - span + 1]
        pick = np.where(values[left] <= values[right], left, right)
        rows.append(pick)
        span *= 2
    table = np.zeros(len(rows) * nblocks, dtype=np.int64)
    for k, row in enumerate(rows):
        table[k * nblocks : k * nblocks + row.size] = row
    return table, nblocks


class IntervalReporter:
    """Stabbing/overlap reporter over a static set of closed intervals.

    Construct from explicit intervals (distinct endpoints) with
    :meth:`from_intervals`, or from a precomputed left-rank array with the
    plain constructor when the endpoints are held elsewhere.
    """

    def __init__(self, left_rank_by_right, *, backend=None, _coords=None):
        lr = np.asarray(left_rank_by_right, dtype=np.int64).ravel()
        n = lr.size
        if n and not np.array_equal(np.sort(lr), np.arange(n)):
            raise ValueError("left ranks must be a permutation of 0..m-1")
        width = (n - 1).bit_length() if n > 1 else 0
        table, nblocks = _block_table(lr, RMQ_BLOCK)
        twidth = (n - 1).bit_length() if n > 1 else 0
        self._init(
            PackedArray(lr, width, backend=backend),
            PackedArray(table, twidth, backend=backend),
            nblocks,
            n,
            backend,
        )
        self._coords = _coords

    def _init(self, lrank, table, nblocks, n, backend):
        self.lrank = lrank
        self.table = table
        self.nblocks = nblocks
        self.m = n
        self.backend = get_backend(backend)
        self.core = self.backend.Reporter(lrank.core, table.core, nblocks, n)
        self._coords = None

    @classmethod
    def from_intervals(cls, intervals, *, backend=None) -> IntervalReporter:
        """Build over ``(lo, hi)`` pairs with pairwise distinct endpoints."""
        arr = np.asarray(list(intervals), dtype=np.int64).reshape(-1, 2)
        if (arr[:, 0] > arr[:, 1]).any():
            raise ValueError("interval with lo > hi")
        flat = arr.ravel()
        if np.unique(flat).size != flat.size:
            raise ValueError("interval endpoints must be pairwise distinct")
        by_right = np.argsort(arr[:, 1], kind="stable")
        left_rank = np.empty(len(arr), dtype=np.int64)
        left_rank[np.argsort(arr[:, 0], kind="stable")] = np.arange(len(arr))
        coords = (np.sort(arr[:, 0]), np.sort(arr[:, 1]), arr[by_right])
        self = cls(left_rank[by_right], backend=backend)
        self._coords = coords
        return self

    def __len__(self) -> int:
        return self.m

    def interval_at(self, right_rank: int) -> tuple[int, int]:
        """The stored interval with the given 1-based right rank."""
        if self._coords is None:
            raise TypeError("reporter holds ranks only")
        lo, hi = self._coords[2][right_rank - 1]
        return int(lo), int(hi)

    def report_ranks(self, rights_before: int, lefts_through: int, stats=None) -> list[int]:
        """Right ranks (1-based) of intervals with right rank > ``rights_before``
        and left rank <= ``lefts_through``."""
        return [m + 1 for m in self.core.report(rights_before, lefts_through, stats)]

    def report(self, s: int, e: int, *, lefts_before: int | None = None, stats=None) -> list[int]:
        """Right ranks (1-based) of all stored intervals meeting ``[s, e]``.

        ``lefts_before`` may supply the number of stored left endpoints at
        or before ``e`` when the caller already knows it.
        """
        if self._coords is None:
            raise TypeError("reporter holds ranks only; use report_ranks")
        if s > e:
            raise ValueError("query with s > e")
        lefts, rights, _ = self._coords
        a = int(np.searchsorted(rights, s, side="left"))
        c = int(np.searchsorted(lefts, e, side="right")) if lefts_before is None else lefts_before
        return self.report_ranks(a, c, stats)

    def argmin(self, lo: int, hi: int) -> int:
        """1-based position of the minimum left rank in right ranks ``lo..hi``."""
        if not 1 <= lo <= hi <= self.m:
            raise IndexError((lo, hi))
        return self.core.argmin(lo - 1, hi - 1) + 1

    @property
    def space_bits(self) -> int:
        return self.lrank.space_bits + self.table.space_bits + 64

    def to_bytes(self) -> bytes:
        blob = self.lrank.to_bytes()
        return struct.pack("<Q", len(blob)) + blob

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> IntervalReporter:
        (size,) = struct.unpack_from("<Q", buf)
        lrank = PackedArray.from_bytes(buf[8 : 8 + size])
        return cls(lrank.to_numpy(), backend=backend)
