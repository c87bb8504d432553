"""Static bit vectors and fixed-width packed integer arrays.

Both keep their payload in little-endian ``uint64`` words. The rank index is
one absolute count per 512-bit superblock (12.5% overhead); select is
answered from a sample every 512 ones (resp. zeros) followed by a binary
search over superblocks and an in-word scan.
"""
from __future__ import annotations

import struct

import numpy as np

from .._backend import get_backend

WORD = np.dtype("<u8")
SUPER_BITS = 512
SELECT_SAMPLE = 512


def popcount64(words: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(words).astype(np.int64)
    return np.unpackbits(words.view(np.uint8)).reshape(-1, 64).sum(axis=1)


def pack_bits(bits) -> tuple[np.ndarray, int]:
    """Pack a 0/1 sequence into uint64 words (bit i of the input is bit i%64 of word i//64)."""
    arr = np.asarray(bits, dtype=bool).ravel()
    n = arr.size
    nwords = max(1, -(-n // 64))
    raw = np.packbits(arr, bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: raw.size] = raw
    return buf.view(WORD).copy(), n


def _rank_index(words: np.ndarray) -> np.ndarray:
    counts = popcount64(words)
    pad = (-counts.size) % 8
    if pad:
        counts = np.concatenate([counts, np.zeros(pad, dtype=np.int64)])
    per_super = counts.reshape(-1, 8).sum(axis=1)
    supers = np.zeros(per_super.size + 1, dtype=WORD)
    np.cumsum(per_super, out=supers[1:])
    return supers


def _select_samples(before: np.ndarray, total: int) -> np.ndarray:
    """Superblock holding each (k*512+1)-th item, plus a last-superblock sentinel."""
    nsup = before.size - 1
    targets = np.arange(0, total, SELECT_SAMPLE, dtype=np.int64) + 1
    idx = np.searchsorted(before[:nsup], targets, side="left") - 1
    out = np.empty(idx.size + 1, dtype=WORD)
    out[:-1] = np.maximum(idx, 0)
    out[-1] = max(nsup - 1, 0)
    return out


class BitVector:
    """Immutable bit vector with rank, select and access.

    Positions are 1-based: ``rank(b, i)`` counts ``b`` in ``B[1..i]`` and
    ``select(b, k)`` returns the position of the k-th ``b``.
    """

    def __init__(self, bits=(), *, backend=None, select: bool = True):
        words, n = pack_bits(bits)
        self._init(words, n, backend, select)

    @classmethod
    def from_words(cls, words: np.ndarray, n: int, *, backend=None, select: bool = True):
        self = cls.__new__(cls)
        self._init(np.ascontiguousarray(words, dtype=WORD), n, backend, select)
        return self

    def _init(self, words, n, backend, select):
        self.words = words
        self.n = n
        self.supers = _rank_index(words)
        self.ones = int(self.supers[-1])
        self.has_select = select
        if select:
            zeros_before = np.arange(self.supers.size, dtype=np.int64) * SUPER_BITS - self.supers.astype(
                np.int64
            )
            self.sel1 = _select_samples(self.supers.astype(np.int64), self.ones)
            self.sel0 = _select_samples(zeros_before, n - self.ones)
        else:
            self.sel1 = np.zeros(1, dtype=WORD)
            self.sel0 = np.zeros(1, dtype=WORD)
        self.backend = get_backend(backend)
        self.core = self.backend.BitRank(self.words, n, self.supers, self.sel0, self.sel1)

    def __len__(self) -> int:
        return self.n

    @property
    def zeros(self) -> int:
        return self.n - self.ones

    def _check_pos(self, i: int, lo: int) -> None:
        if not lo <= i <= self.n:
            raise IndexError(f"position {i} outside [{lo}, {self.n}]")

    def access(self, i: int) -> int:
        self._check_pos(i, 1)
        return self.core.access(i - 1)

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def rank(self, b: int, i: int) -> int:
        self._check_pos(i, 0)
        r1 = self.core.rank1(i)
        return r1 if b else i - r1

    def select(self, b: int, k: int) -> int:
        if not self.has_select:
            raise TypeError("bit vector built without select support")
        total = self.ones if b else self.zeros
        if not 1 <= k <= total:
            raise IndexError(f"select_{b}({k}) out of range (have {total})")
        return (self.core.select1(k) if b else self.core.select0(k)) + 1

    def to_numpy(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.n].astype(np.uint8)

    @property
    def space_bits(self) -> int:
        return 8 * (self.words.nbytes + self.supers.nbytes + self.sel0.nbytes + self.sel1.nbytes)

    def to_bytes(self) -> bytes:
        return struct.pack("<QB", self.n, int(self.has_select)) + self.words.tobytes()

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> BitVector:
        n, sel = struct.unpack_from("<QB", buf)
        words = np.frombuffer(buf, dtype=WORD, offset=9)
        return cls.from_words(words.copy(), n, backend=backend, select=bool(sel))


class PackedArray:
    """Unsigned integers of a fixed bit width packed into uint64 words."""

    def __init__(self, values, width: int | None = None, *, backend=None):
        vals = np.asarray(values, dtype=np.int64).ravel()
        if vals.size and vals.min() < 0:
            raise ValueError("packed values must be non-negative")
        if width is None:
            width = int(vals.max()).bit_length() if vals.size else 0
        if width > 63:
            raise ValueError("width above 63 bits is not supported")
        if vals.size and width < int(vals.max()).bit_length():
            raise ValueError(f"value {int(vals.max())} does not fit in {width} bits")
        n = vals.size
        nwords = max(1, -(-(n * width) // 64))
        words = np.zeros(nwords, dtype=np.uint64)
        if n and width:
            v = vals.astype(np.uint64)
            bit = np.arange(n, dtype=np.int64) * width
            q = bit >> 6
            off = (bit & 63).astype(np.uint64)
            np.bitwise_or.at(words, q, v << off)
            spill = (bit & 63) + width > 64
            if spill.any():
                np.bitwise_or.at(
                    words, q[spill] + 1, v[spill] >> (np.uint64(64) - off[spill])
                )
        self._init(words.astype(WORD), width, n, backend)

    @classmethod
    def from_words(cls, words, width: int, n: int, *, backend=None) -> PackedArray:
        self = cls.__new__(cls)
        self._init(np.ascontiguousarray(words, dtype=WORD), width, n, backend)
        return self

    def _init(self, words, width, n, backend):
        self.words = words
        self.width = width
        self.n = n
        self.backend = get_backend(backend)
        self.core = self.backend.Packed(words, width, n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return self.core.get(i)

    def to_numpy(self) -> np.ndarray:
        if self.n == 0 or self.width == 0:
            return np.zeros(self.n, dtype=np.int64)
        w = self.width
        words = np.concatenate([self.words, np.zeros(1, dtype=WORD)])
        bit = np.arange(self.n, dtype=np.int64) * w
        q = bit >> 6
        off = (bit & 63).astype(np.uint64)
        lo = words[q] >> off
        hi = np.where(off > 0, words[q + 1] << ((np.uint64(64) - off) & np.uint64(63)), 0)
        mask = np.uint64((1 << w) - 1)
        return ((lo | hi.astype(np.uint64)) & mask).astype(np.int64)

    @property
    def space_bits(self) -> int:
        return 8 * self.words.nbytes

    def to_bytes(self) -> bytes:
        return struct.pack("<QB", self.n, self.width) + self.words.tobytes()

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> PackedArray:
        n, width = struct.unpack_from("<QB", buf)
        words = np.frombuffer(buf, dtype=WORD, offset=9)
        return cls.from_words(words.copy(), width, n, backend=backend)
