"""Permutations with constant-time forward lookup and shortcut-driven inverse.

The forward map is a packed array of ``ceil(log2 n)``-bit values. Every cycle
longer than the shortcut spacing ``B`` is sampled every ``B`` elements; each
sample stores a back-pointer to the previous sample on its cycle, so
``inverse`` walks at most ``B`` forward steps plus one jump.
"""
from __future__ import annotations

import math
import struct

import numpy as np

from .._backend import get_backend
from .bitvector import BitVector, PackedArray


def default_spacing(n: int) -> int:
    """``ceil(log2 n)``, at least 1."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def _shortcuts(forward: np.ndarray, spacing: int) -> tuple[np.ndarray, np.ndarray]:
    """Marked positions (bool mask) and back-pointers ordered by position."""
    n = forward.size
    marks = np.zeros(n, dtype=bool)
    back_of = np.zeros(n, dtype=np.int64)
    seen = bytearray(n)
    fwd = forward.tolist()
    for start in range(n):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = 1
            cycle.append(x)
            x = fwd[x]
        if len(cycle) <= spacing:
            continue
        sampled = cycle[::spacing]
        for k, pos in enumerate(sampled):
            marks[pos] = True
            back_of[pos] = sampled[k - 1]
    return marks, back_of[marks]


class SuccinctPermutation:
    """A permutation of ``[1..n]`` supporting ``apply`` and ``inverse``.

    ``apply(i)`` is a single packed-array read. ``inverse(j)`` follows the
    cycle through ``j`` using at most ``spacing + 1`` steps, where one step is
    a forward lookup or a shortcut jump.
    """

    def __init__(self, values, spacing: int | None = None, *, backend=None):
        fwd = np.asarray(values, dtype=np.int64).ravel() - 1
        n = fwd.size
        if n and not np.array_equal(np.sort(fwd), np.arange(n)):
            raise ValueError("values are not a permutation of 1..n")
        if spacing is None:
            spacing = default_spacing(n)
        if spacing < 1:
            raise ValueError("shortcut spacing must be >= 1")
        width = (n - 1).bit_length() if n > 1 else 0
        marks, back = _shortcuts(fwd, spacing)
        self._init(
            PackedArray(fwd, width, backend=backend),
            BitVector(marks, backend=backend, select=False),
            PackedArray(back, width, backend=backend),
            n,
            spacing,
            backend,
        )

    def _init(self, forward, marks, back, n, spacing, backend):
        self.forward = forward
        self.marks = marks
        self.back = back
        self.n = n
        self.spacing = spacing
        self.backend = get_backend(backend)
        self.core = self.backend.Perm(forward.core, marks.core, back.core, n)

    def __len__(self) -> int:
        return self.n

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"{i} outside [1, {self.n}]")

    def apply(self, i: int) -> int:
        self._check(i)
        return self.core.apply(i - 1) + 1

    __call__ = apply

    def inverse(self, j: int) -> int:
        self._check(j)
        return self.core.inverse(j - 1) + 1

    def inverse_with_steps(self, j: int) -> tuple[int, int]:
        """``(inverse(j), steps taken)``."""
        self._check(j)
        stats = np.zeros(4, dtype=np.int64)
        x = self.core.inverse(j - 1, stats)
        return x + 1, int(stats[self.backend.STAT_INV])

    def to_list(self) -> list[int]:
        return [self.core.apply(i) + 1 for i in range(self.n)]

    @property
    def space_bits(self) -> int:
        return self.forward.space_bits + self.marks.space_bits + self.back.space_bits

    def to_bytes(self) -> bytes:
        parts = [struct.pack("<QQ", self.n, self.spacing)]
        for blob in (self.forward.to_bytes(), self.marks.to_bytes(), self.back.to_bytes()):
            parts.append(struct.pack("<Q", len(blob)))
            parts.append(blob)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> SuccinctPermutation:
        n, spacing = struct.unpack_from("<QQ", buf)
        off = 16
        blobs = []
        for _ in range(3):
            (size,) = struct.unpack_from("<Q", buf, off)
            off += 8
            blobs.append(buf[off : off + size])
            off += size
        self = cls.__new__(cls)
        self._init(
            PackedArray.from_bytes(blobs[0], backend=backend),
            BitVector.from_bytes(blobs[1], backend=backend),
            PackedArray.from_bytes(blobs[2], backend=backend),
            n,
            spacing,
            backend,
        )
        return self
