"""Adjacency, neighborhood and degree queries over an :class:`EncodedGraph`.

Vertices are internal 1-based ids unless a method name says ``label``.
Every query can fill a :class:`QueryStats` record with operation counts:

* ``pair_checks``: slot pairs examined by the adjacency sweep;
* ``rmq_nodes``: range-minimum nodes visited by the reporting structure;
* ``perm_inv_steps``: steps spent inverting permutations;
* ``reports``: raw hits before deduplication.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .encoding import EncodedGraph
from .errors import UnsupportedConfigurationError


@dataclass
class QueryStats:
    pair_checks: int = 0
    rmq_nodes: int = 0
    perm_inv_steps: int = 0
    reports: int = 0

    @classmethod
    def from_array(cls, arr: np.ndarray) -> QueryStats:
        return cls(int(arr[0]), int(arr[1]), int(arr[2]), int(arr[3]))

    def lines(self) -> list[str]:
        return [
            f"stats.pair_checks={self.pair_checks}",
            f"stats.rmq_nodes={self.rmq_nodes}",
            f"stats.perm_inv_steps={self.perm_inv_steps}",
            f"stats.reports={self.reports}",
        ]


class QueryEngine:
    """Query front end holding per-thread scratch for neighbor deduplication.

    ``fast`` selects the reporting-structure neighbor path when the graph
    has one (``d = 1``); otherwise neighbor queries scan all vertices.
    """

    def __init__(self, graph: EncodedGraph, *, fast: bool = True):
        self.graph = graph
        self.fast = fast and graph.has_reporters
        self._local = threading.local()

    @property
    def n(self) -> int:
        return self.graph.n

    def _scratch(self) -> tuple[np.ndarray, int]:
        loc = self._local
        marker = getattr(loc, "marker", None)
        if marker is None:
            marker = loc.marker = np.zeros(self.graph.n, dtype=np.int64)
            loc.stamp = 0
        loc.stamp += 1
        return marker, loc.stamp

    def _check(self, v: int) -> None:
        if not 1 <= v <= self.graph.n:
            raise IndexError(f"vertex {v} outside [1, {self.graph.n}]")

    @staticmethod
    def _finish(arr, stats):
        if stats is not None:
            got = QueryStats.from_array(arr)
            stats.pair_checks, stats.rmq_nodes = got.pair_checks, got.rmq_nodes
            stats.perm_inv_steps, stats.reports = got.perm_inv_steps, got.reports

    def adj(self, u: int, v: int, *, strict: bool = False, stats: QueryStats | None = None) -> bool:
        """Whether some box of ``u`` meets some box of ``v``.

        ``adj(u, u)`` is true (a box meets itself) unless ``strict``.
        """
        self._check(u)
        self._check(v)
        if u == v:
            return not strict
        arr = np.zeros(4, dtype=np.int64)
        out = self.graph.core.adj(u - 1, v - 1, arr)
        self._finish(arr, stats)
        return bool(out)

    def adj_row(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """``adj(u, v)`` for every ``v`` in one kernel call.

        Returns ``(row, checks)`` indexed by ``v - 1``; ``checks`` holds the
        pair count of each individual call. ``row[u - 1]`` is true.
        """
        self._check(u)
        row = np.zeros(self.graph.n, dtype=np.uint8)
        checks = np.zeros(self.graph.n, dtype=np.int64)
        self.graph.core.adj_row(u - 1, row, checks)
        return row.astype(bool), checks

    def neighbor_naive(self, u: int, *, stats: QueryStats | None = None) -> list[int]:
        """Neighbors of ``u`` by testing every other vertex, ascending."""
        self._check(u)
        arr = np.zeros(4, dtype=np.int64)
        out = [v + 1 for v in self.graph.core.neighbors_naive(u - 1, arr)]
        self._finish(arr, stats)
        return out

    def neighbor_fast(self, u: int, *, stats: QueryStats | None = None) -> list[int]:
        """Neighbors of ``u`` through the per-slot reporting structures (``d = 1`` only), ascending."""
        if not self.graph.has_reporters:
            raise UnsupportedConfigurationError(
                f"fast neighbor query needs d = 1 (graph has d = {self.graph.d})"
            )
        self._check(u)
        marker, stamp = self._scratch()
        arr = np.zeros(4, dtype=np.int64)
        out = self.graph.core.neighbors_fast(u - 1, marker, stamp, arr)
        self._finish(arr, stats)
        return sorted(v + 1 for v in out)

    def neighbor(self, u: int, *, stats: QueryStats | None = None) -> list[int]:
        if self.fast:
            return self.neighbor_fast(u, stats=stats)
        return self.neighbor_naive(u, stats=stats)

    def deg(self, u: int, *, stats: QueryStats | None = None) -> int:
        """Degree of ``u``; read from the stored array when the graph has one."""
        self._check(u)
        if self.graph.degrees is not None:
            return self.graph.degrees[u - 1]
        return len(self.neighbor(u, stats=stats))

    # the same queries addressed by external label

    def adj_label(self, a, b, **kw) -> bool:
        g = self.graph
        return self.adj(g.internal_of(a), g.internal_of(b), **kw)

    def neighbor_label(self, a, **kw) -> list:
        g = self.graph
        labels = [g.label_of(v) for v in self.neighbor(g.internal_of(a), **kw)]
        return sorted(labels, key=_label_key)

    def deg_label(self, a, **kw) -> int:
        return self.deg(self.graph.internal_of(a), **kw)


def _label_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def adj(graph: EncodedGraph, u: int, v: int, **kw) -> bool:
    return QueryEngine(graph).adj(u, v, **kw)


def neighbor_naive(graph: EncodedGraph, u: int, **kw) -> list[int]:
    return QueryEngine(graph).neighbor_naive(u, **kw)


def neighbor_fast_d1(graph: EncodedGraph, u: int, **kw) -> list[int]:
    return QueryEngine(graph).neighbor_fast(u, **kw)


def deg(graph: EncodedGraph, u: int, **kw) -> int:
    return QueryEngine(graph).deg(u, **kw)
