"""Slow reference routes over plain lists, sharing no code with srrlab."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def rank_mod2(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col]:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[r])]
        r += 1
    return r


def codewords(G: list[list[int]]) -> list[tuple[int, ...]]:
    k, n = len(G), len(G[0])
    out = []
    for a in product((0, 1), repeat=k):
        out.append(tuple(sum(a[i] * G[i][j] for i in range(k)) % 2 for j in range(n)))
    return out


def dual_words(G: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(G[0])
    return [
        h
        for h in product((0, 1), repeat=n)
        if all(sum(g[j] * h[j] for j in range(n)) % 2 == 0 for g in G)
    ]


def weight_distribution(words: list[tuple[int, ...]]) -> list[int]:
    n = len(words[0])
    dist = [0] * (n + 1)
    for w in words:
        dist[sum(w)] += 1
    return dist


def column_sum(G: list[list[int]], servers) -> tuple[int, ...]:
    return tuple(sum(row[j - 1] for j in servers) % 2 for row in G)


def unit(k: int, obj: int) -> tuple[int, ...]:
    return tuple(1 if i == obj - 1 else 0 for i in range(k))


def minimal_recovery_sets(G: list[list[int]], obj: int) -> list[tuple[int, ...]]:
    """Subsets summing to ``e_obj`` with no proper subset also summing to ``e_obj``."""
    n, k = len(G[0]), len(G)
    e = unit(k, obj)
    hits = [
        s
        for size in range(1, n + 1)
        for s in combinations(range(1, n + 1), size)
        if column_sum(G, s) == e
    ]
    hit_sets = [frozenset(s) for s in hits]
    return sorted(
        (s for s in hits if not any(h < frozenset(s) for h in hit_sets)),
        key=lambda s: (len(s), s),
    )


def max_orthogonal(checks: list[tuple[int, ...]], O: tuple[int, ...]) -> int:
    o = frozenset(O)
    sets = [frozenset(c) for c in checks if o <= frozenset(c) and frozenset(c) != o]
    best = 0
    for size in range(1, len(sets) + 1):
        if any(all(a & b == o for a, b in combinations(cb, 2)) for cb in combinations(sets, size)):
            best = size
        else:
            break
    return best


def is_t_design(v: int, blocks: list[tuple[int, ...]], t: int) -> int | None:
    """The common cover count of every ``t``-subset, or ``None``."""
    counts = {
        sum(1 for b in blocks if set(s) <= set(b)) for s in combinations(range(1, v + 1), t)
    }
    return counts.pop() if len(counts) == 1 else None


def check_packing_certificate(
    n: int, sets: list[tuple[int, ...]], x: dict, y: dict
) -> Fraction:
    """Verify a primal packing ``x`` and dual cover ``y`` with equal value; return it."""
    load = [Fraction(0)] * (n + 1)
    for s, v in x.items():
        assert v >= 0
        for j in s:
            load[j] += v
    assert all(l <= 1 for l in load[1:])
    for s in sets:
        assert sum((y.get(j, 0) for j in s), Fraction(0)) >= 1
    assert all(v >= 0 for v in y.values())
    primal = sum(x.values(), Fraction(0))
    dual = sum(y.values(), Fraction(0))
    assert primal == dual
    return primal
