"""Timing and space measurements shared by the CLI and the benchmark scripts."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._backend import get_backend
from .encoding import encode
from .model import normalize
from .oracle import gen_random
from .query import QueryEngine

COLUMNS = ("kernel", "n", "t", "d", "build_ms", "adj_ns", "neighbor_ns", "bits", "bits_per_dtn_log_n")


@dataclass
class BenchRow:
    kernel: str
    n: int
    t: int
    d: int
    build_ms: float
    adj_ns: float
    neighbor_ns: float
    bits: int
    bits_per_dtn_log_n: float

    def cells(self) -> list[str]:
        return [
            self.kernel,
            str(self.n),
            str(self.t),
            str(self.d),
            f"{self.build_ms:.1f}",
            f"{self.adj_ns:.0f}",
            f"{self.neighbor_ns:.0f}",
            str(self.bits),
            f"{self.bits_per_dtn_log_n:.4f}",
        ]


def measure(n: int, t: int, d: int, *, seed: int = 0, queries: int = 2000,
            backend=None, density: float = 1.0) -> BenchRow:
    """Build one random instance and time random adjacency and neighbor queries."""
    be = get_backend(backend)
    rep = gen_random(n, t, d, seed, density=density)
    t0 = time.perf_counter()
    graph = encode(normalize(rep), backend=be)
    build_ms = (time.perf_counter() - t0) * 1e3
    engine = QueryEngine(graph)
    rng = np.random.default_rng(seed + 1)
    us = rng.integers(1, n + 1, size=queries).tolist()
    vs = rng.integers(1, n + 1, size=queries).tolist()

    t0 = time.perf_counter()
    for u, v in zip(us, vs):
        engine.adj(u, v)
    adj_ns = (time.perf_counter() - t0) * 1e9 / queries

    nq = max(1, queries // 20)
    t0 = time.perf_counter()
    for u in us[:nq]:
        engine.neighbor(u)
    neighbor_ns = (time.perf_counter() - t0) * 1e9 / nq

    report = graph.space_report()
    return BenchRow(be.BACKEND_NAME, n, t, d, build_ms, adj_ns, neighbor_ns, report.total,
                    report.total / (d * t * n * math.log2(n)))


def format_table(rows: list[BenchRow]) -> str:
    table = [list(COLUMNS)] + [r.cells() for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table) + "\n"
