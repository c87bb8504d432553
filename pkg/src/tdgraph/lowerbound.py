"""Colored graph family used for the counting lower bound, and its exhaustive check.

For parameters ``n, m, d, t`` the construction places ``m`` unit basis
intervals ``[2i-1, 2i]`` on every axis ``j``; basis interval ``i`` of axis
``j`` becomes a colored vertex with color ``(j-1)m + i`` whose box spans
``[1, 2m]`` on every other axis. Each of the remaining ``n - dm`` vertices
is described by ``dt`` color pairs ``(e, e')`` with ``e <= e'`` inside the
color block of the pair's axis; pair ``(p, j)`` gives box ``p`` of that
vertex the axis-``j`` interval from the left end of basis ``e`` to the
right end of basis ``e'``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, RepresentationError
from .model import Interval1D, Representation
from .oracle import oracle_build

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class LowerBoundSpec:
    """``pairs[s][p][j] = (e, e')`` for dependent vertex ``s``, box ``p``, axis ``j`` (0-based indices)."""

    n: int
    m: int
    d: int
    t: int
    pairs: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]

    @property
    def colored(self) -> int:
        return self.d * self.m

    def validate(self) -> None:
        n, m, d, t = self.n, self.m, self.d, self.t
        if m < 1 or d < 1 or t < 1:
            raise ValueError("m, d, t must be positive")
        if d * m > n:
            raise ValueError(f"need d*m <= n (got {d * m} > {n})")
        if len(self.pairs) != n - d * m:
            raise ValueError(f"expected {n - d * m} dependent vertices, got {len(self.pairs)}")
        for s, boxes in enumerate(self.pairs):
            if len(boxes) != t or any(len(b) != d for b in boxes):
                raise ValueError(f"dependent vertex {s + 1}: expected {t} x {d} color pairs")
            for p, box in enumerate(boxes):
                for j, (e, e2) in enumerate(box):
                    if not j * m + 1 <= e <= e2 <= (j + 1) * m:
                        raise ValueError(
                            f"dependent vertex {s + 1}, box {p + 1}, axis {j + 1}: pair ({e}, {e2}) "
                            f"outside {j * m + 1} <= e <= e' <= {(j + 1) * m}"
                        )


@dataclass(frozen=True)
class LowerBoundInstance:
    """Constructed representation; vertex labels are colors ``1..dm`` then ``dm+1..n`` for dependents."""

    spec: LowerBoundSpec
    representation: Representation
    colors: dict[int, int]

    @property
    def dimension1_disjoint(self) -> bool:
        """Whether every vertex's boxes are pairwise disjoint on axis 1."""
        try:
            self.representation.validate()
        except RepresentationError:
            return False
        return True


def gen_lowerbound(spec: LowerBoundSpec) -> LowerBoundInstance:
    """Build the representation for ``spec``.

    Dependent boxes of one vertex may overlap on axis 1 when ``t >= 2``;
    the result is still a valid input for the oracle but not necessarily
    for :func:`tdgraph.model.normalize`.
    """
    spec.validate()
    n, m, d, t = spec.n, spec.m, spec.d, spec.t
    full = Interval1D(1, 2 * m)
    boxes = []
    colors = {}
    for j in range(d):
        for i in range(1, m + 1):
            box = tuple(Interval1D(2 * i - 1, 2 * i) if jj == j else full for jj in range(d))
            boxes.append((box,))
            colors[len(boxes)] = j * m + i
    for vboxes in spec.pairs:
        out = []
        for box in vboxes:
            dims = []
            for j, (e, e2) in enumerate(box):
                i, i2 = e - j * m, e2 - j * m
                dims.append(Interval1D(2 * i - 1, 2 * i2))
            out.append(tuple(dims))
        boxes.append(tuple(out))
    rep = Representation(n, t, d, tuple(boxes))
    return LowerBoundInstance(spec, rep, colors)


def axis_pairs(m: int, j: int) -> list[tuple[int, int]]:
    """All ``(e, e')`` with ``e <= e'`` in the color block of axis ``j`` (0-based)."""
    block = range(j * m + 1, (j + 1) * m + 1)
    return [(e, e2) for e in block for e2 in block if e <= e2]


def family_size(n: int, m: int, d: int, t: int) -> int:
    """``(m(m+1)/2) ** (dt(n - dm))``: the number of distinct specs."""
    return (m * (m + 1) // 2) ** (d * t * (n - d * m))


def iter_specs(n: int, m: int, d: int, t: int):
    if n == d * m:
        # per_vertex below can be huge even though the family has one member
        yield LowerBoundSpec(n, m, d, t, ())
        return
    per_box = list(itertools.product(*(axis_pairs(m, j) for j in range(d))))
    per_vertex = list(itertools.product(per_box, repeat=t))
    for deps in itertools.product(per_vertex, repeat=n - d * m):
        yield LowerBoundSpec(n, m, d, t, deps)


def colored_profile(instance: LowerBoundInstance) -> tuple[frozenset[int], ...]:
    """Colors adjacent to each dependent vertex, read off the oracle graph."""
    g = oracle_build(instance.representation)
    dm = instance.spec.colored
    sub = g.matrix[dm:, :dm]
    return tuple(frozenset(np.flatnonzero(row) + 1) for row in sub)


def basis_subgraph(instance: LowerBoundInstance) -> np.ndarray:
    dm = instance.spec.colored
    return oracle_build(instance.representation).matrix[:dm, :dm]


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    m: int
    d: int
    t: int
    specs: int
    expected: int
    distinct: int
    basis_fixed: bool

    @property
    def injective(self) -> bool:
        return self.distinct == self.specs

    @property
    def count_matches(self) -> bool:
        return self.specs == self.expected

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"m={self.m}",
            f"d={self.d}",
            f"t={self.t}",
            f"specs={self.specs}",
            f"expected={self.expected}",
            f"distinct={self.distinct}",
            f"injective={str(self.injective).lower()}",
            f"basis_fixed={str(self.basis_fixed).lower()}",
        ]

    def summary(self) -> str:
        return f"{self.specs} specs, {self.distinct} distinct"


def enumerate_lowerbound_family(n: int, m: int, d: int, t: int, *, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    """Build every spec for the parameters and count distinct colored profiles.

    Raises :class:`BudgetExceededError` before doing any work when the
    family is larger than ``budget``.
    """
    if m < 1 or d < 1 or t < 1 or d * m > n:
        raise ValueError("need m, d, t >= 1 and d*m <= n")
    expected = family_size(n, m, d, t)
    if expected > budget:
        raise BudgetExceededError(expected, budget)
    profiles = set()
    basis = None
    basis_fixed = True
    count = 0
    for spec in iter_specs(n, m, d, t):
        inst = gen_lowerbound(spec)
        g = oracle_build(inst.representation).matrix
        dm = spec.colored
        profiles.add(tuple(frozenset((np.flatnonzero(row) + 1).tolist()) for row in g[dm:, :dm]))
        if basis is None:
            basis = g[:dm, :dm].copy()
        elif not np.array_equal(basis, g[:dm, :dm]):
            basis_fixed = False
        count += 1
    return EnumerationResult(n, m, d, t, count, expected, len(profiles), basis_fixed)


def parse_spec(text: str) -> LowerBoundSpec:
    """Header ``n m d t``; then one line of ``2dt`` integers per dependent vertex.

    Pairs on a line are ordered box-major: ``(p=1, j=1), (p=1, j=2), ...``.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty spec")
    try:
        n, m, d, t = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"malformed header {lines[0]!r}, expected 'n m d t'") from None
    deps = []
    for k, ln in enumerate(lines[1:], start=1):
        nums = [int(x) for x in ln.replace(",", " ").split()]
        if len(nums) != 2 * d * t:
            raise ValueError(f"dependent line {k}: expected {2 * d * t} integers, got {len(nums)}")
        it = iter(nums)
        pairs = list(zip(it, it))
        deps.append(tuple(tuple(pairs[p * d : (p + 1) * d]) for p in range(t)))
    spec = LowerBoundSpec(n, m, d, t, tuple(deps))
    spec.validate()
    return spec


def format_spec(spec: LowerBoundSpec) -> str:
    out = [f"{spec.n} {spec.m} {spec.d} {spec.t}"]
    for boxes in spec.pairs:
        out.append(" ".join(f"{e} {e2}" for box in boxes for e, e2 in box))
    return "\n".join(out) + "\n"


def random_spec(n: int, m: int, d: int, t: int, seed: int) -> LowerBoundSpec:
    rng = np.random.default_rng(seed)
    deps = []
    for _ in range(n - d * m):
        boxes = []
        for _ in range(t):
            box = []
            for j in range(d):
                e, e2 = sorted(rng.integers(j * m + 1, (j + 1) * m + 1, size=2).tolist())
                box.append((e, e2))
            boxes.append(tuple(box))
        deps.append(tuple(boxes))
    spec = LowerBoundSpec(n, m, d, t, tuple(deps))
    spec.validate()
    return spec


def log2_family_size(n: int, m: int, d: int, t: int) -> float:
    return d * t * (n - d * m) * math.log2(m * (m + 1) / 2)
