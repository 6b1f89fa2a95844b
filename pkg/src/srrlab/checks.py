"""Parity checks orthogonal on a coordinate set.

A family of parity checks ``I_1..I_J`` is orthogonal on ``O`` when every
member contains ``O`` and any two members meet in exactly ``O``.  The largest
such family is a maximum clique in the graph whose vertices are the candidate
checks and whose edges join pairs meeting exactly in ``O``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import gf2
from .codes import LinearCode, mask_from_support, support_of
from .config import CLIQUE_NODE_BUDGET, SPAN_CAP
from .errors import InvariantViolation
from .gf2 import popcount
from .recovery import RecoverySet, smallest_recovery_sets


def _key(m: int) -> tuple[int, tuple[int, ...]]:
    return popcount(m), support_of(m)


def parity_check_masks_through(
    c: LinearCode, o_mask: int, cap: int = SPAN_CAP, max_weight: int | None = None
) -> list[int]:
    out = [
        h
        for h in c.dual_codewords(cap)
        if h and h & o_mask == o_mask and (max_weight is None or popcount(h) <= max_weight)
    ]
    return sorted(out, key=_key)


def parity_checks_through(
    c: LinearCode,
    O: Iterable[int] = (),
    cap: int = SPAN_CAP,
    max_weight: int | None = None,
) -> list[tuple[int, ...]]:
    """Supports of all nonzero dual codewords containing ``O``, by size then lexicographically."""
    o_mask = mask_from_support(sorted(set(O)), c.n)
    return [support_of(h) for h in parity_check_masks_through(c, o_mask, cap, max_weight)]


@dataclass
class OrthogonalFamily:
    O: tuple[int, ...]
    members: list[tuple[int, ...]]
    lower_bound_only: bool = False
    mode: str = "exact"
    nodes: int = 0

    @property
    def J(self) -> int:
        return len(self.members)

    def outside_parts(self) -> list[tuple[int, ...]]:
        o = set(self.O)
        return [tuple(j for j in m if j not in o) for m in self.members]

    def verify(self, c: LinearCode) -> None:
        """Raise :class:`InvariantViolation` unless all three family invariants hold."""
        o_mask = mask_from_support(self.O, c.n)
        masks = [mask_from_support(m, c.n) for m in self.members]
        for m in masks:
            if not c.is_dual_word(m):
                raise InvariantViolation(f"{support_of(m)} is not a parity check")
            if m & o_mask != o_mask:
                raise InvariantViolation(f"{support_of(m)} does not contain O")
        for a, b in combinations(masks, 2):
            if a & b != o_mask:
                raise InvariantViolation(
                    f"{support_of(a)} and {support_of(b)} meet outside O"
                )


def _dominating_candidates(c: LinearCode, o_mask: int, checks: Sequence[int]) -> list[int]:
    """Keep checks whose part outside ``O`` contains no smaller candidate's part.

    Swapping a family member for a check with a smaller outside part keeps
    the family orthogonal, so the maximum family size is unchanged.  A part
    ``X`` is dominated exactly when a nonzero dual word lies strictly inside
    it, which is a rank condition on the columns of ``X``.
    """
    s = c.column_sum_mask(o_mask)
    out = []
    for h in checks:
        x = h & ~o_mask
        size = popcount(x)
        if not size:
            continue
        r = gf2.rank_of_rows([c.columns[j] for j in gf2.bits_of(x)], c.k)
        if r == size - (0 if s else 1):
            out.append(h)
    return out


class _CliqueSearch:
    """Branch and bound with greedy-coloring bounds (Tomita style) on bitsets."""

    def __init__(self, adj: list[int], budget: int):
        self.adj = adj
        self.budget = budget
        self.nodes = 0
        self.best: list[int] = []
        self.exhausted = False

    def color_order(self, p: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        colors: list[int] = []
        uncolored = p
        color = 0
        while uncolored:
            color += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~low & ~self.adj[v]
                uncolored &= ~low
                order.append(v)
                colors.append(color)
        return order, colors

    def expand(self, clique: list[int], p: int) -> None:
        if self.exhausted:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return
        order, colors = self.color_order(p)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + colors[idx] <= len(self.best):
                return
            v = order[idx]
            clique.append(v)
            newp = p & self.adj[v]
            if newp:
                self.expand(clique, newp)
            elif len(clique) > len(self.best):
                self.best = clique.copy()
            clique.pop()
            if self.exhausted:
                return
            p &= ~(1 << v)


def _greedy(masks: Sequence[int], o_mask: int) -> list[int]:
    chosen: list[int] = []
    used = 0
    for m in masks:
        if (m & ~o_mask) & used == 0:
            chosen.append(m)
            used |= m & ~o_mask
    return chosen


def max_orthogonal_family(
    c: LinearCode,
    O: Iterable[int],
    mode: str = "exact",
    node_budget: int = CLIQUE_NODE_BUDGET,
    cap: int = SPAN_CAP,
    max_weight: int | None = None,
    prune: bool = True,
) -> OrthogonalFamily:
    """Largest family of parity checks orthogonal on ``O``.

    ``mode="greedy"`` takes checks in (size, lexicographic) order and is only
    a lower bound.  ``mode="exact"`` runs a maximum-clique search seeded with
    the greedy family; if the node budget runs out the best family found is
    returned with ``lower_bound_only`` set, as it is whenever ``max_weight``
    truncates the candidates.  A check equal to ``O`` itself is never a
    member since it leaves nothing outside ``O`` to vote with.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    o = tuple(sorted(set(O)))
    o_mask = mask_from_support(o, c.n)
    checks = [h for h in parity_check_masks_through(c, o_mask, cap, max_weight) if h != o_mask]
    truncated = max_weight is not None
    if prune:
        checks = _dominating_candidates(c, o_mask, checks)
    greedy = _greedy(checks, o_mask)
    if mode == "greedy":
        fam = OrthogonalFamily(o, [support_of(m) for m in greedy], True, "greedy")
        return fam

    outside = [h & ~o_mask for h in checks]
    adj = [0] * len(checks)
    for i in range(len(checks)):
        xi = outside[i]
        row = 0
        for j in range(len(checks)):
            if j != i and xi & outside[j] == 0:
                row |= 1 << j
        adj[i] = row
    search = _CliqueSearch(adj, node_budget)
    index = {h: i for i, h in enumerate(checks)}
    search.best = [index[h] for h in greedy]
    if checks:
        search.expand([], (1 << len(checks)) - 1)
    members = sorted((checks[i] for i in search.best), key=_key)
    return OrthogonalFamily(
        o,
        [support_of(m) for m in members],
        lower_bound_only=search.exhausted or truncated,
        mode="exact",
        nodes=search.nodes,
    )


def brute_force_max_family(candidates: Sequence[Sequence[int]], O: Iterable[int]) -> int:
    """Reference route: grow the sub-family size until no orthogonal choice exists.

    Orthogonality is inherited by sub-families, so the first size with no
    valid choice ends the scan.
    """
    o = frozenset(O)
    sets = [frozenset(s) for s in candidates if frozenset(s) != o]
    best = 0
    for size in range(1, len(sets) + 1):
        found = False
        for combo in combinations(sets, size):
            if all(a & b == o for a, b in combinations(combo, 2)):
                found = True
                break
        if not found:
            break
        best = size
    return best


def j_upper_bound(c: LinearCode, O: Sequence[int]) -> Fraction:
    """``(n - a) / max(a, d_perp - a)`` with ``a = |O|``."""
    a = len(set(O))
    return Fraction(c.n - a, max(a, c.dual_distance() - a))


@dataclass
class DisjointRecovery:
    object: int
    O: tuple[int, ...]
    family: OrthogonalFamily
    sets: list[RecoverySet] = field(default_factory=list)

    @property
    def J(self) -> int:
        return self.family.J


def best_smallest_family(
    c: LinearCode,
    obj: int,
    node_budget: int = CLIQUE_NODE_BUDGET,
    cap: int = SPAN_CAP,
) -> tuple[int, list[RecoverySet], OrthogonalFamily]:
    """Over all smallest recovery sets ``O`` of ``obj``, the one with the largest ``J_O``.

    Ties go to the lexicographically first ``O``.  Returns ``(a, smallest sets, family)``.
    """
    a, smallest = smallest_recovery_sets(c, obj, cap)
    best: OrthogonalFamily | None = None
    for r in smallest:
        fam = max_orthogonal_family(c, r.servers, "exact", node_budget, cap)
        if best is None or fam.J > best.J:
            best = fam
    assert best is not None
    return a, smallest, best


def disjoint_recovery_sets(
    c: LinearCode,
    obj: int,
    node_budget: int = CLIQUE_NODE_BUDGET,
    cap: int = SPAN_CAP,
) -> DisjointRecovery:
    """``O`` plus the ``J_O`` sets ``I_i \\ O``: pairwise disjoint recovery sets for ``obj``."""
    _, _, fam = best_smallest_family(c, obj, node_budget, cap)
    target = 1 << (obj - 1)
    sets = [RecoverySet(obj, fam.O)]
    for part in fam.outside_parts():
        if c.column_sum(part) != target:
            raise InvariantViolation(f"{part} does not recover object {obj}")
        cols = [c.columns[j - 1] for j in part]
        minimal = gf2.rank_of_rows(cols, c.k) == len(part)
        sets.append(RecoverySet(obj, part, minimal=minimal))
    used = 0
    for r in sets:
        m = r.mask()
        if used & m:
            raise InvariantViolation("recovery sets overlap")
        used |= m
    return DisjointRecovery(obj, fam.O, fam, sets)
