"""Recovery sets of data objects.

A set of servers recovers object ``l`` when some subset of its columns sums
to ``e_l``.  Over GF(2) the subsets whose columns sum to exactly ``e_l`` form
a coset ``x0 + C_perp`` (``x0`` any particular solution), so the minimal
recovery sets are the inclusion-minimal members of that coset, which are
exactly the members whose columns are linearly independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf2
from .codes import LinearCode, mask_from_support, support_of
from .config import SPAN_CAP
from .errors import CapExceeded, InvariantViolation
from .gf2 import BinaryVector, popcount


@dataclass(frozen=True, order=True)
class RecoverySet:
    object: int
    servers: tuple[int, ...]
    minimal: bool = True

    @property
    def size(self) -> int:
        return len(self.servers)

    def mask(self) -> int:
        m = 0
        for j in self.servers:
            m |= 1 << (j - 1)
        return m

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.servers)) + "}"


def _check_object(c: LinearCode, obj: int) -> None:
    if not 1 <= obj <= c.k:
        raise ValueError(f"object index {obj} outside 1..{c.k}")


def recovery_coset(c: LinearCode, obj: int, cap: int = SPAN_CAP) -> list[int]:
    """Every server mask whose columns sum to exactly ``e_obj``."""
    _check_object(c, obj)
    size = 1 << len(c.dual_basis)
    if size > cap:
        raise CapExceeded("recovery coset", size, cap, "span")
    x0 = gf2.solve_columns(c.columns, 1 << (obj - 1), c.k)
    if x0 is None:
        raise InvariantViolation(f"e_{obj} not in the column space of a full-rank generator")
    return [x0 ^ h for h in c.dual_codewords(cap)]


def _independent(c: LinearCode, m: int) -> bool:
    # Columns of m independent <=> no nonzero parity check lies inside m
    # <=> no other coset member is a proper subset of m.
    return popcount(m) <= c.k and gf2.rank_of_rows(
        [c.columns[j] for j in gf2.bits_of(m)], c.k
    ) == popcount(m)


def _sort_key(m: int) -> tuple[int, tuple[int, ...]]:
    return popcount(m), support_of(m)


def minimal_recovery_masks(c: LinearCode, obj: int, cap: int = SPAN_CAP) -> list[int]:
    """Minimal recovery sets as 0-based masks, sorted by size then lexicographically."""
    return sorted((m for m in recovery_coset(c, obj, cap) if _independent(c, m)), key=_sort_key)


def minimal_recovery_sets(c: LinearCode, obj: int, cap: int = SPAN_CAP) -> list[RecoverySet]:
    return [RecoverySet(obj, support_of(m)) for m in minimal_recovery_masks(c, obj, cap)]


def smallest_recovery_sets(
    c: LinearCode, obj: int, cap: int = SPAN_CAP
) -> tuple[int, list[RecoverySet]]:
    """Size ``a`` of the smallest recovery set and every set of that size."""
    sets = minimal_recovery_sets(c, obj, cap)
    a = sets[0].size
    return a, [r for r in sets if r.size == a]


@dataclass(frozen=True)
class RecoveryVerdict:
    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_recovery_set(c: LinearCode, obj: int, servers: Iterable[int]) -> RecoveryVerdict:
    """Decide whether ``servers`` can rebuild ``obj``; the witness sums to ``e_obj``."""
    _check_object(c, obj)
    servers = sorted(set(servers))
    mask_from_support(servers, c.n)
    if not servers:
        return RecoveryVerdict(False)
    cols = [c.columns[j - 1] for j in servers]
    x = gf2.solve_columns(cols, 1 << (obj - 1), c.k)
    if x is None:
        return RecoveryVerdict(False)
    return RecoveryVerdict(True, tuple(servers[i] for i in gf2.bits_of(x)))


def is_minimal_recovery_set(c: LinearCode, obj: int, servers: Sequence[int]) -> bool:
    """Sum equals ``e_obj`` and no proper subset recovers ``obj``.

    Dropping any single server must destroy recoverability; that suffices
    because recoverability is monotone under adding servers.
    """
    servers = sorted(set(servers))
    if c.column_sum(servers) != 1 << (obj - 1):
        return False
    for j in servers:
        if is_recovery_set(c, obj, [s for s in servers if s != j]):
            return False
    return True


def symmetric_difference_check(
    c: LinearCode, obj: int, r1: Sequence[int], r2: Sequence[int]
) -> BinaryVector:
    """Incidence vector of ``r1 xor r2``, asserted to be a dual word of weight >= d_perp."""
    s1, s2 = tuple(sorted(set(r1))), tuple(sorted(set(r2)))
    if s1 == s2:
        raise ValueError("recovery sets must differ")
    for s in (s1, s2):
        if not is_minimal_recovery_set(c, obj, s):
            raise ValueError(f"{s} is not a minimal recovery set for object {obj}")
    diff = mask_from_support(s1, c.n) ^ mask_from_support(s2, c.n)
    if not c.is_dual_word(diff):
        raise InvariantViolation("symmetric difference is not a parity check")
    if popcount(diff) < c.dual_distance():
        raise InvariantViolation("symmetric difference lighter than the dual distance")
    return BinaryVector(c.n, diff)


def brute_force_minimal_recovery_masks(c: LinearCode, obj: int) -> list[int]:
    """Reference route: scan all ``2**n`` server subsets.

    A subset qualifies when its columns sum to ``e_obj`` and no proper subset
    can recover the object (rank test on every one-smaller subset).
    """
    target = 1 << (obj - 1)
    out = []
    for m in range(1, 1 << c.n):
        if c.column_sum_mask(m) != target:
            continue
        servers = [j + 1 for j in gf2.bits_of(m)]
        if is_minimal_recovery_set(c, obj, servers):
            out.append(m)
    return sorted(out, key=_sort_key)
