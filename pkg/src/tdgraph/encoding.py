"""Succinct encoding of a normalized representation.

For every dimension ``j`` the encoder stores a sequence ``S_j`` of length
``2tn`` over the alphabet ``{0, ..., 2t-1}``: position ``i`` holds ``2(p-1)``
if rank ``i`` is the left endpoint of some slot-``p`` interval and ``2p-1``
if it is a right endpoint. Which vertex an endpoint belongs to is recovered
through permutations: ``pi[p, j](v)`` is the occurrence number of ``v``'s
slot-``p`` left endpoint among the symbol ``2(p-1)`` in ``S_j`` and
``rho[p, j](v)`` the same for right endpoints. ``pi[1, 1]`` is the identity
because vertices are numbered by their first left endpoint, so it is not
stored: ``2dt - 1`` permutations in total.

For ``d = 1`` a per-slot-class :class:`IntervalReporter` supports the
output-sensitive neighborhood query.
"""
from __future__ import annotations

import json
import math
import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_backend
from .errors import ArtifactError, UnsupportedConfigurationError
from .model import Interval1D, NormalizedRepresentation
from .succinct import IntervalReporter, PackedArray, SuccinctPermutation, SuccinctSequence
from .succinct.permutation import default_spacing

MAGIC = b"TDGRAPH\0"
FORMAT_VERSION = 1
FLAG_REPORTERS = 1
FLAG_DEGREES = 2

# additive constant c in the space check ``total <= 1.5 * reference + c * d*t*n``
SPACE_SLACK_C = 16

_MAX_COMPILED_T = 128  # compiled wavelet kernel handles at most 8 levels


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def reference_bits(n: int, t: int, d: int, *, alphabet_log: str = "2t") -> int:
    """``(2dt-1) n ceil(log n) + 2dtn ceil(log s)`` with ``s = 2t`` (or ``t``)."""
    s = 2 * t if alphabet_log == "2t" else t
    return (2 * d * t - 1) * n * ceil_log2(n) + 2 * d * t * n * ceil_log2(s)


def space_budget(n: int, t: int, d: int) -> float:
    return 1.5 * reference_bits(n, t, d) + SPACE_SLACK_C * d * t * n


@dataclass
class SpaceReport:
    sequences: list[int]
    pi: dict[tuple[int, int], int]
    rho: dict[tuple[int, int], int]
    reporters: list[int]
    degrees: int
    labels: int
    n: int
    t: int
    d: int
    extra: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        """Bits of the succinct structure, labels excluded."""
        return (
            sum(self.sequences)
            + sum(self.pi.values())
            + sum(self.rho.values())
            + sum(self.reporters)
            + self.degrees
        )

    @property
    def reference(self) -> int:
        return reference_bits(self.n, self.t, self.d)

    @property
    def reference_log_t(self) -> int:
        return reference_bits(self.n, self.t, self.d, alphabet_log="t")

    @property
    def normalized(self) -> float:
        """``total / (d t n log2 n)``."""
        denom = self.d * self.t * self.n * math.log2(self.n) if self.n > 1 else 1.0
        return self.total / denom

    def lines(self) -> list[str]:
        """``key=value`` lines."""
        out = [f"n={self.n}", f"t={self.t}", f"d={self.d}"]
        for j, b in enumerate(self.sequences, 1):
            out.append(f"bits.S{j}={b}")
        for (p, j), b in sorted(self.pi.items()):
            out.append(f"bits.pi.{p}.{j}={b}")
        for (p, j), b in sorted(self.rho.items()):
            out.append(f"bits.rho.{p}.{j}={b}")
        for q, b in enumerate(self.reporters, 1):
            out.append(f"bits.reporter.{q}={b}")
        out.append(f"bits.degrees={self.degrees}")
        out.append(f"bits.total={self.total}")
        out.append(f"bits.labels={self.labels}")
        out.append(f"permutations={len(self.pi) + len(self.rho)}")
        out.append(f"reference={self.reference}")
        out.append(f"reference_log_t={self.reference_log_t}")
        out.append(f"budget={space_budget(self.n, self.t, self.d):.0f}")
        out.append(f"bits_per_dtn_log_n={self.normalized:.6f}")
        return out


def _occurrence_numbers(positions: np.ndarray) -> np.ndarray:
    """1-based rank of each position among the given positions."""
    out = np.empty(positions.size, dtype=np.int64)
    out[np.argsort(positions, kind="stable")] = np.arange(1, positions.size + 1)
    return out


class EncodedGraph:
    """The succinct structure plus the kernel object that answers queries.

    Vertex ids, slots, dimensions and ranks are 1-based in this API.
    """

    def __init__(self, n, t, d, seqs, pis, rhos, reporters, real_boxes, spacing,
                 order, labels, degrees=None, backend=None):
        self.n, self.t, self.d = n, t, d
        self.seqs = seqs
        self.pis = pis  # dict (p, j) -> SuccinctPermutation, 1-based keys, (1, 1) absent
        self.rhos = rhos
        self.reporters = reporters
        self.real_boxes = real_boxes
        self.spacing = spacing
        self.order = order
        self.labels = tuple(labels)
        self.degrees = degrees
        self.backend = get_backend(backend)
        flat_pi = [None] * (t * d)
        flat_rho = [None] * (t * d)
        for (p, j), perm in pis.items():
            flat_pi[(p - 1) * d + (j - 1)] = perm.core
        for (p, j), perm in rhos.items():
            flat_rho[(p - 1) * d + (j - 1)] = perm.core
        self.core = self.backend.GraphCore(
            n, t, d,
            [s.core for s in seqs],
            flat_pi,
            flat_rho,
            [r.core for r in reporters],
            2 * real_boxes,
        )
        self._label_index = None

    @property
    def real_end(self) -> int:
        return 2 * self.real_boxes

    @property
    def has_reporters(self) -> bool:
        return bool(self.reporters)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise IndexError(f"vertex {v} outside [1, {self.n}]")

    def decode_interval(self, v: int, p: int, j: int) -> Interval1D:
        """Rank interval of slot ``p`` of vertex ``v`` in dimension ``j``."""
        self._check_vertex(v)
        if not (1 <= p <= self.t and 1 <= j <= self.d):
            raise IndexError(f"slot/dimension ({p}, {j}) outside [1, {self.t}] x [1, {self.d}]")
        return Interval1D(
            self.core.left(v - 1, p - 1, j - 1) + 1,
            self.core.right(v - 1, p - 1, j - 1) + 1,
        )

    def label_of(self, v: int):
        self._check_vertex(v)
        return self.labels[int(self.order[v - 1])]

    def internal_of(self, label) -> int:
        if self._label_index is None:
            self._label_index = {self.labels[int(i)]: v + 1 for v, i in enumerate(self.order)}
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def space_report(self) -> SpaceReport:
        return SpaceReport(
            sequences=[s.space_bits for s in self.seqs],
            pi={k: v.space_bits for k, v in self.pis.items()},
            rho={k: v.space_bits for k, v in self.rhos.items()},
            reporters=[r.space_bits for r in self.reporters],
            degrees=self.degrees.space_bits if self.degrees is not None else 0,
            labels=self.n * ceil_log2(self.n),
            n=self.n,
            t=self.t,
            d=self.d,
        )

    def with_backend(self, backend) -> EncodedGraph:
        """Same structure, kernels from another backend."""
        return EncodedGraph.from_bytes(self.to_bytes(), backend=backend)

    # serialization

    def to_bytes(self) -> bytes:
        flags = (FLAG_REPORTERS if self.reporters else 0) | (FLAG_DEGREES if self.degrees is not None else 0)
        head = MAGIC + struct.pack(
            "<HQQQBQQ", FORMAT_VERSION, self.n, self.t, self.d, flags, self.spacing, self.real_boxes
        )
        blobs = [s.to_bytes() for s in self.seqs]
        blobs += [self.pis[k].to_bytes() for k in sorted(self.pis)]
        blobs += [self.rhos[k].to_bytes() for k in sorted(self.rhos)]
        blobs += [r.to_bytes() for r in self.reporters]
        if self.degrees is not None:
            blobs.append(self.degrees.to_bytes())
        blobs.append(PackedArray(self.order, ceil_log2(self.n)).to_bytes())
        blobs.append(json.dumps(list(self.labels), separators=(",", ":")).encode())
        body = head + b"".join(struct.pack("<Q", len(b)) + b for b in blobs)
        return body + struct.pack("<I", zlib.crc32(body))

    @classmethod
    def from_bytes(cls, buf: bytes, *, backend=None) -> EncodedGraph:
        buf = bytes(buf)
        head_fmt = "<HQQQBQQ"
        head_size = len(MAGIC) + struct.calcsize(head_fmt)
        if len(buf) < head_size + 4 or not buf.startswith(MAGIC):
            raise ArtifactError("not a graph artifact (bad magic or truncated)")
        (crc,) = struct.unpack_from("<I", buf, len(buf) - 4)
        body = buf[:-4]
        if zlib.crc32(body) != crc:
            raise ArtifactError("artifact checksum mismatch")
        version, n, t, d, flags, spacing, real_boxes = struct.unpack_from(head_fmt, buf, len(MAGIC))
        if version != FORMAT_VERSION:
            raise ArtifactError(f"unsupported artifact version {version}")
        off = head_size

        def take() -> bytes:
            nonlocal off
            if off + 8 > len(body):
                raise ArtifactError("artifact truncated")
            (size,) = struct.unpack_from("<Q", body, off)
            off += 8
            blob = body[off : off + size]
            if len(blob) != size:
                raise ArtifactError("artifact truncated")
            off += size
            return blob

        try:
            seqs = [SuccinctSequence.from_bytes(take(), backend=backend) for _ in range(d)]
            keys = [(p, j) for p in range(1, t + 1) for j in range(1, d + 1)]
            pis = {k: SuccinctPermutation.from_bytes(take(), backend=backend) for k in keys if k != (1, 1)}
            rhos = {k: SuccinctPermutation.from_bytes(take(), backend=backend) for k in keys}
            reporters = []
            if flags & FLAG_REPORTERS:
                reporters = [IntervalReporter.from_bytes(take(), backend=backend) for _ in range(t)]
            degrees = None
            if flags & FLAG_DEGREES:
                degrees = PackedArray.from_bytes(take(), backend=backend)
            order = PackedArray.from_bytes(take()).to_numpy()
            labels = json.loads(take().decode())
        except (struct.error, ValueError, UnicodeDecodeError) as exc:
            if isinstance(exc, ArtifactError):
                raise
            raise ArtifactError(f"corrupt artifact: {exc}") from None
        if off != len(body):
            raise ArtifactError("trailing bytes in artifact")
        return cls(n, t, d, seqs, pis, rhos, reporters, real_boxes, spacing, order, labels,
                   degrees=degrees, backend=backend)


def encode(
    norm: NormalizedRepresentation,
    *,
    spacing: int | None = None,
    store_degrees: bool = False,
    backend=None,
) -> EncodedGraph:
    """Build the succinct structure for ``norm``.

    ``spacing`` is the permutation shortcut spacing (``ceil(log2 n)`` by
    default). ``store_degrees`` adds an explicit degree array.
    """
    be = get_backend(backend)
    n, t, d = norm.n, norm.t, norm.d
    if be.BACKEND_NAME == "cython" and t > _MAX_COMPILED_T:
        raise UnsupportedConfigurationError(
            f"t={t} exceeds the compiled kernel limit {_MAX_COMPILED_T}; use backend='python'"
        )
    if spacing is None:
        spacing = default_spacing(n)
    length = 2 * t * n
    slots = np.arange(t, dtype=np.int64)
    seqs = []
    pis: dict[tuple[int, int], SuccinctPermutation] = {}
    rhos: dict[tuple[int, int], SuccinctPermutation] = {}
    pi_vals: dict[tuple[int, int], np.ndarray] = {}
    rho_vals: dict[tuple[int, int], np.ndarray] = {}
    for j in range(d):
        sym = np.full(length, -1, dtype=np.int64)
        sym[norm.left[j].ravel() - 1] = np.tile(2 * slots, n)
        sym[norm.right[j].ravel() - 1] = np.tile(2 * slots + 1, n)
        if (sym < 0).any():
            raise AssertionError("endpoint ranks do not cover 1..2tn")
        seqs.append(SuccinctSequence(sym, 2 * t, backend=be))
        for p in range(t):
            key = (p + 1, j + 1)
            pv = _occurrence_numbers(norm.left[j, :, p])
            rv = _occurrence_numbers(norm.right[j, :, p])
            pi_vals[key], rho_vals[key] = pv, rv
            if key == (1, 1):
                if not np.array_equal(pv, np.arange(1, n + 1)):
                    raise AssertionError("vertices are not ordered by their first left endpoint")
            else:
                pis[key] = SuccinctPermutation(pv, spacing, backend=be)
            rhos[key] = SuccinctPermutation(rv, spacing, backend=be)

    reporters = []
    if d == 1:
        for q in range(1, t + 1):
            # left rank (0-based, within class q) indexed by right rank
            lrank = np.empty(n, dtype=np.int64)
            lrank[rho_vals[(q, 1)] - 1] = pi_vals[(q, 1)] - 1
            reporters.append(IntervalReporter(lrank, backend=be))

    degrees = None
    if store_degrees:
        from .oracle import ranked_degrees

        degrees = PackedArray(ranked_degrees(norm), ceil_log2(n), backend=be)

    return EncodedGraph(n, t, d, seqs, pis, rhos, reporters, norm.real_boxes, spacing,
                        norm.order, norm.labels, degrees=degrees, backend=be)


def decode_interval(graph: EncodedGraph, v: int, p: int, j: int) -> Interval1D:
    return graph.decode_interval(v, p, j)


def space_report(graph: EncodedGraph) -> SpaceReport:
    return graph.space_report()
