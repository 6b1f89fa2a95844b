"""Block designs checked by direct counting."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .config import DESIGN_SUBSET_CAP
from .errors import CapExceeded


@dataclass(frozen=True)
class BlockCollection:
    """Blocks over the points ``1..v``; repeated blocks are allowed.

    ``labels[i - 1]`` names point ``i`` in the collection it was derived
    from (``None`` means the points are their own labels).
    """

    v: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.v < 0:
            raise ValueError("v must be nonnegative")
        for b in self.blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            if any(not 1 <= p <= self.v for p in b):
                raise ValueError(f"block {b} not inside 1..{self.v}")
            if len(set(b)) != len(b):
                raise ValueError(f"block {b} repeats a point")

    @classmethod
    def of(cls, v: int, blocks: Iterable[Iterable[int]]) -> "BlockCollection":
        return cls(v, tuple(tuple(sorted(b)) for b in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def point_label(self, p: int) -> int:
        return p if self.labels is None else self.labels[p - 1]


@dataclass(frozen=True)
class DesignReport:
    t: int
    v: int
    block_size: int | None  # None when block sizes differ or there are no blocks
    lam: int | None
    is_design: bool
    replication: int | None
    num_blocks: int
    repeated_blocks: bool
    reason: str = ""

    @property
    def is_steiner(self) -> bool:
        return self.is_design and self.t == 2 and self.lam == 1

    def params(self) -> str:
        k = "?" if self.block_size is None else self.block_size
        lam = "?" if self.lam is None else self.lam
        return f"{self.t}-({self.v},{k},{lam})"


def _replication(bc: BlockCollection) -> int | None:
    counts = Counter(p for b in bc.blocks for p in b)
    values = {counts.get(p, 0) for p in range(1, bc.v + 1)}
    return values.pop() if len(values) == 1 else None


def check_t_design(
    bc: BlockCollection, t: int, cap: int = DESIGN_SUBSET_CAP
) -> DesignReport:
    """Count how often every ``t``-subset of the points is covered."""
    if t < 1:
        raise ValueError("t must be at least 1")
    total = comb(bc.v, t)
    if total > cap:
        raise CapExceeded("t-subset enumeration", total, cap, "design_subsets")
    repeated = len(set(bc.blocks)) != len(bc.blocks)
    sizes = sorted({len(b) for b in bc.blocks})

    def report(is_design: bool, k: int | None, lam: int | None, reason: str) -> DesignReport:
        rep = _replication(bc) if is_design else None
        return DesignReport(t, bc.v, k, lam, is_design, rep, len(bc), repeated, reason)

    if not sizes:
        return report(False, None, None, "empty collection")
    if len(sizes) > 1:
        return report(False, None, None, f"non-uniform block sizes {sizes[0]} and {sizes[-1]}")
    k = sizes[0]
    if t > bc.v:
        return report(False, k, None, f"t={t} exceeds v={bc.v}")
    cover: Counter[tuple[int, ...]] = Counter()
    for b in bc.blocks:
        cover.update(combinations(b, t))
    counts = {cover.get(s, 0) for s in combinations(range(1, bc.v + 1), t)}
    if len(counts) != 1:
        lo, hi = min(counts), max(counts)
        return report(False, k, None, f"{t}-subsets covered between {lo} and {hi} times")
    return report(True, k, counts.pop(), "")


def reduce_design(bc: BlockCollection, Z: Iterable[int]) -> BlockCollection:
    """Blocks containing ``Z`` with ``Z`` removed, on the points outside ``Z``.

    Remaining points are renumbered ``1..v - |Z|`` in their original order;
    ``labels`` keeps the original names.
    """
    z = set(Z)
    if any(not 1 <= p <= bc.v for p in z):
        raise ValueError("Z must be a subset of the points")
    if z and bc.blocks and len(z) >= min(len(b) for b in bc.blocks):
        raise ValueError("|Z| must be smaller than the block size")
    keep = [p for p in range(1, bc.v + 1) if p not in z]
    new_index = {p: i + 1 for i, p in enumerate(keep)}
    blocks = tuple(
        tuple(new_index[p] for p in b if p not in z) for b in bc.blocks if z <= set(b)
    )
    labels = tuple(bc.point_label(p) for p in keep)
    return BlockCollection(len(keep), blocks, labels)


def counting_identity(v_minus_1: int, d_c: int, gamma: int, d_dual: int) -> bool:
    """Double counting of point-block incidences: ``(v-1) d_c == gamma (d_dual - 1)``."""
    if min(v_minus_1, d_c, gamma, d_dual) <= 0:
        raise ValueError("all inputs must be positive")
    return v_minus_1 * d_c == gamma * (d_dual - 1)


def supports_collection(n: int, supports: Sequence[Sequence[int]]) -> BlockCollection:
    return BlockCollection.of(n, supports)
