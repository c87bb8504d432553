"""Boolean matrix products computed through neighborhood queries.

An ``n x t`` Boolean matrix ``A`` becomes a ``t,1`` interval representation
in which rows ``u`` and ``v`` are adjacent exactly when they share a column
with a one, i.e. when ``(A A^T)[u, v] = 1``. Column ``p`` with ``k`` ones gets
``k`` intervals ``[s + l - 1, s + k + l - 1]`` (``l = 1..k``), which pairwise
overlap, and ``s`` then advances by ``2k`` so columns never touch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import encode
from .model import Interval1D, Representation, normalize
from .query import QueryEngine


@dataclass(frozen=True, eq=False)
class BoolMatrix:
    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits).astype(bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
        object.__setattr__(self, "bits", arr)

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolMatrix) and np.array_equal(self.bits, other.bits)

    def __repr__(self) -> str:
        return f"BoolMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        body = "\n".join("".join("1" if b else "0" for b in row) for row in self.bits)
        return f"{self.rows} {self.cols}\n{body}\n"

    @classmethod
    def from_text(cls, text: str) -> BoolMatrix:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ValueError("empty matrix file")
        try:
            rows, cols = (int(x) for x in lines[0].split())
        except ValueError:
            raise ValueError(f"malformed matrix header {lines[0]!r}, expected 'rows cols'") from None
        body = lines[1:]
        if len(body) != rows:
            raise ValueError(f"expected {rows} matrix rows, got {len(body)}")
        bits = np.zeros((rows, cols), dtype=bool)
        for i, ln in enumerate(body):
            row = ln.replace(" ", "")
            if len(row) != cols or set(row) - {"0", "1"}:
                raise ValueError(f"matrix row {i + 1}: expected {cols} characters of 0/1")
            bits[i] = [c == "1" for c in row]
        return cls(bits)


def boolean_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Reference product over the Boolean semiring."""
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def build_GA(A: BoolMatrix) -> Representation:
    """Interval representation (``t = cols``, ``d = 1``) whose graph has ``A A^T`` off the diagonal."""
    n, t = A.rows, A.cols
    boxes: list[list] = [[] for _ in range(n)]
    s = 1
    for p in range(t):
        ones = np.flatnonzero(A.bits[:, p])
        k = ones.size
        for ell, v in enumerate(ones.tolist(), start=1):
            boxes[v].append((Interval1D(s + ell - 1, s + k + ell - 1),))
        s += 2 * k
    rep = Representation(n, t, 1, tuple(tuple(b) for b in boxes))
    ends = [c for vb in rep.boxes for (iv,) in vb for c in iv]
    assert len(ends) == len(set(ends)), "column intervals must have distinct endpoints"
    return rep


def engine_for(A: BoolMatrix, *, backend=None) -> QueryEngine:
    return QueryEngine(encode(normalize(build_GA(A)), backend=backend))


def multiply_via_neighbors(A: BoolMatrix, engine: QueryEngine | None = None, *, backend=None) -> BoolMatrix:
    """``A A^T`` from one neighborhood query per row.

    The diagonal is set only for rows with at least one 1, so the result
    equals the Boolean product exactly.
    """
    if engine is None:
        engine = engine_for(A, backend=backend)
    n = A.rows
    out = np.zeros((n, n), dtype=bool)
    for u in range(1, n + 1):
        row = engine.graph.label_of(u) - 1
        for v in engine.neighbor(u):
            out[row, engine.graph.label_of(v) - 1] = True
    nonzero = A.bits.any(axis=1)
    out[np.arange(n), np.arange(n)] = nonzero
    return BoolMatrix(out)


def multiply_BC(B: BoolMatrix, C: BoolMatrix, *, backend=None) -> BoolMatrix:
    """``B C`` read from the off-diagonal block of ``A A^T`` with ``A = [B; C^T]``."""
    if B.cols != C.rows:
        raise ValueError(f"dimension mismatch: {B.rows}x{B.cols} times {C.rows}x{C.cols}")
    A = BoolMatrix(np.vstack([B.bits, C.bits.T]))
    M = multiply_via_neighbors(A, backend=backend)
    return BoolMatrix(M.bits[: B.rows, B.rows :])
