"""One-step majority-logic decoding from orthogonal check families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from . import gf2
from .checks import OrthogonalFamily, disjoint_recovery_sets
from .codes import LinearCode, mask_from_support
from .config import CLIQUE_NODE_BUDGET, ERROR_PATTERN_CAP, SPAN_CAP
from .errors import CapExceeded, InvariantViolation
from .gf2 import BinaryVector, parity


@dataclass(frozen=True)
class VoteSet:
    object: int
    direct_positions: tuple[int, ...]
    check_sums: tuple[tuple[int, ...], ...]

    @property
    def J(self) -> int:
        return len(self.check_sums)

    @property
    def estimates(self) -> tuple[tuple[int, ...], ...]:
        return (self.direct_positions,) + self.check_sums

    def masks(self) -> list[int]:
        return [sum(1 << (j - 1) for j in s) for s in self.estimates]

    def validate(self, c: LinearCode) -> None:
        target = 1 << (self.object - 1)
        used = 0
        for s in self.estimates:
            m = mask_from_support(s, c.n)
            if m & used:
                raise InvariantViolation("vote position sets overlap")
            used |= m
            if c.column_sum(s) != target:
                raise InvariantViolation(f"{s} does not sum to e_{self.object}")


def build_votes(
    c: LinearCode,
    obj: int,
    checks: Sequence[Sequence[int]] | None = None,
    O: Sequence[int] | None = None,
    node_budget: int = CLIQUE_NODE_BUDGET,
    cap: int = SPAN_CAP,
) -> VoteSet:
    """Direct estimate from ``O`` plus one estimate per orthogonal check.

    Without ``checks`` the maximum family over the smallest recovery sets is
    used.  Given ``checks`` (full parity-check supports), ``O`` defaults to
    their common intersection.
    """
    if checks is None:
        dr = disjoint_recovery_sets(c, obj, node_budget, cap)
        votes = VoteSet(obj, dr.O, tuple(tuple(r.servers) for r in dr.sets[1:]))
    else:
        sets = [tuple(sorted(set(s))) for s in checks]
        if O is None:
            common = set(sets[0]) if sets else set()
            for s in sets[1:]:
                common &= set(s)
            O = sorted(common)
        fam = OrthogonalFamily(tuple(sorted(set(O))), sets)
        fam.verify(c)
        votes = VoteSet(obj, fam.O, tuple(fam.outside_parts()))
    votes.validate(c)
    return votes


def vote_values(v: VoteSet, y: BinaryVector) -> list[int]:
    return [parity(y.bits & m) for m in v.masks()]


def decode_symbol(v: VoteSet, y: BinaryVector) -> int:
    """Majority of the estimates; a tie decodes to 0."""
    votes = vote_values(v, y)
    ones = sum(votes)
    return 1 if 2 * ones > len(votes) else 0


def decode_message(c: LinearCode, votes: Sequence[VoteSet], y: BinaryVector) -> list[int]:
    """Decode every object in ``votes`` (one VoteSet per object, in order)."""
    return [decode_symbol(v, y) for v in votes]


def all_vote_sets(
    c: LinearCode, node_budget: int = CLIQUE_NODE_BUDGET, cap: int = SPAN_CAP
) -> list[VoteSet]:
    return [build_votes(c, obj, node_budget=node_budget, cap=cap) for obj in range(1, c.k + 1)]


@dataclass
class CapabilityResult:
    ok: bool
    t: int
    patterns_checked: int
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _pattern_count(n: int, t: int) -> int:
    return sum(comb(n, w) for w in range(t + 1))


def pattern_safe(v: VoteSet, error_mask: int) -> bool:
    """True when the pattern leaves a strict majority of estimates unchanged.

    Each estimate is linear, so on ``x + e`` it equals its value on ``x``
    flipped by its parity on ``e``.  The decoder then recovers ``a_l`` for
    every codeword exactly when fewer than half of the estimates are flipped;
    with exactly half flipped the tie rule is right only for ``a_l = 0``.
    """
    flipped = sum(parity(error_mask & m) for m in v.masks())
    return 2 * flipped < v.J + 1


def verify_capability(
    c: LinearCode,
    obj: int,
    t: int,
    votes: VoteSet | None = None,
    cap: int = ERROR_PATTERN_CAP,
) -> CapabilityResult:
    """Exhaustively test all error patterns of weight ``<= t``.

    A pattern passes when the decoder returns ``a_obj`` for every codeword.
    Patterns are scanned by increasing weight, so a reported counterexample
    has minimum weight.
    """
    if votes is None:
        votes = build_votes(c, obj)
    need = _pattern_count(c.n, t)
    if need > cap:
        raise CapExceeded("error-pattern enumeration", need, cap, "error_patterns")
    checked = 0
    for w in range(t + 1):
        for pos in combinations(range(c.n), w):
            checked += 1
            if not pattern_safe(votes, gf2.mask_of(pos)):
                return CapabilityResult(False, t, checked, tuple(p + 1 for p in pos))
    return CapabilityResult(True, t, checked)


def beyond_bound_success(
    c: LinearCode, votes: VoteSet, cap: int = ERROR_PATTERN_CAP
) -> tuple[int, int]:
    """Count weight ``floor(J/2) + 1`` patterns that still decode correctly.

    Returns ``(safe, total)``; informational only.
    """
    w = votes.J // 2 + 1
    total = comb(c.n, w)
    if total > cap:
        raise CapExceeded("error-pattern enumeration", total, cap, "error_patterns")
    safe = sum(pattern_safe(votes, gf2.mask_of(pos)) for pos in combinations(range(c.n), w))
    return safe, total
