"""Rank/select/access sequences over a small integer alphabet.

Realized as a wavelet matrix: ``ceil(log2(sigma))`` levels of plain bit
vectors, so the payload is ``length * ceil(log2 sigma)`` bits and the index
overhead is that of the level bit vectors. ``rank`` costs one bit-vector rank
per level; ``select`` one bit-vector select per level.
"""
from __future__ import annotations

import struct

import numpy as np

from .._backend import get_backend
from .bitvector import BitVector

# declared space constants: payload bits per symbol-level, plus the rank
# superblock (1/8) and select samples (2/512 x 64 bits -> 1/4) per level bit
SPACE_FACTOR = 1.0
SPACE_INDEX_PER_BIT = 0.125 + 0.25
SPACE_FIXED_BITS = 1024


def _levels_for(alphabet_size: int) -> int:
    return max(1, (alphabet_size - 1).bit_length())


class SuccinctSequence:
    """Immutable sequence ``S[1..length]`` over ``{0, ..., alphabet_size-1}``.

    All positions are 1-based, following the rank/select convention
    ``rank(a, i) = |{k <= i : S[k] = a}|``.
    """

    def __init__(self, symbols, alphabet_size: int | None = None, *, backend=None):
        sym = np.asarray(symbols, dtype=np.int64).ravel()
        if alphabet_size is None:
            alphabet_size = int(sym.max()) + 1 if sym.size else 1
        if sym.size and (sym.min() < 0 or sym.max() >= alphabet_size):
            raise ValueError("symbol outside alphabet")
        nlev = _levels_for(alphabet_size)
        level_bits = []
        cur = sym
        for lev in range(nlev):
            shift = nlev - 1 - lev
            b = (cur >> shift) & 1
            level_bits.append(b.astype(bool))
            # stable partition: zeros first, then ones
            cur = np.concatenate([cur[b == 0], cur[b == 1]])
        levels = [BitVector(bits, backend=backend) for bits in level_bits]
        self._init(levels, alphabet_size, sym.size, backend)

    def _init(self, levels, alphabet_size, length, backend):
        self.levels = levels
        self.alphabet_size = alphabet_size
        self.length = length
        self.nlev = len(levels)
        self.zeros = [lv.zeros for lv in levels]
        self.backend = get_backend(backend)
        starts = []
        for c in range(1 << self.nlev):
            s = 0
            for lev, lv in enumerate(levels):
                r1 = lv.core.rank1(s)
                s = self.zeros[lev] + r1 if (c >> (self.nlev - 1 - lev)) & 1 else s - r1
            starts.append(s)
        self.starts = starts
        self.core = self.backend.Wavelet([lv.core for lv in levels], self.zeros, starts, length)
        self._counts = [self.core.rank(c, length) for c in range(alphabet_size)]

    def __len__(self) -> int:
        return self.length

    def _check_symbol(self, a: int) -> None:
        if not 0 <= a < self.alphabet_size:
            raise IndexError(f"symbol {a} outside alphabet of size {self.alphabet_size}")

    def count(self, a: int) -> int:
        self._check_symbol(a)
        return self._counts[a]

    def access(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} outside [1, {self.length}]")
        return self.core.access(i - 1)

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def rank(self, a: int, i: int) -> int:
        self._check_symbol(a)
        if not 0 <= i <= self.length:
            raise IndexError(f"position {i} outside [0, {self.length}]")
        return self.core.rank(a, i)

    def select(self, a: int, k: int) -> int:
        self._check_symbol(a)
        if not 1 <= k <= self._counts[a]:
            raise IndexError(f"select_{a}({k}) out of range (have {self._counts[a]})")
        return self.core.select(a, k) + 1

    def symbols(self) -> list[int]:
        """Debug dump of the decoded sequence."""
        return [self.core.access(i) for i in range(self.length)]

    def dump(self) -> str:
        return " ".join(map(str, self.symbols()))

    @property
    def space_bits(self) -> int:
        # level bit vectors plus one word per level for its zero count
        return sum(lv.space_bits for lv in self.levels) + 64 * self.nlev

    def to_bytes(self) -> bytes:
        parts = [struct.pack("<QQB", self.length, self.alphabet_size, self.nlev)]
        for lv in self.levels:
            blob = lv.to_bytes()
            parts.append(struct.pack("<Q", len(blob)))
            parts.append(blob)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> SuccinctSequence:
        length, alphabet_size, nlev = struct.unpack_from("<QQB", buf)
        off = struct.calcsize("<QQB")
        levels = []
        for _ in range(nlev):
            (size,) = struct.unpack_from("<Q", buf, off)
            off += 8
            levels.append(BitVector.from_bytes(buf[off : off + size], backend=backend))
            off += size
        self = cls.__new__(cls)
        self._init(levels, alphabet_size, length, backend)
        return self


def sequence_space_bound(length: int, alphabet_size: int) -> float:
    """Declared upper bound on :attr:`SuccinctSequence.space_bits`."""
    nlev = _levels_for(alphabet_size)
    return (
        SPACE_FACTOR * length * nlev
        + SPACE_INDEX_PER_BIT * length * nlev
        + SPACE_FIXED_BITS * nlev
    )
