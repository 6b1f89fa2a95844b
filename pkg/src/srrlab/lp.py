"""Exact two-phase simplex over the rationals.

The tableau is kept fraction-free: every entry is an integer and the true
tableau is ``T / D`` for a single common denominator ``D`` (the determinant
of the current basis, up to sign).  A pivot on ``T[r][s] = p`` maps each
other row to ``(T[i][j] * p - T[i][s] * T[r][j]) / D`` and sets ``D = p``;
the division is always exact.  Pivot selection follows Bland's rule, so the
method terminates on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

Number = int | Fraction


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: list[Fraction] = field(default_factory=list)
    y_ub: list[Fraction] = field(default_factory=list)
    y_eq: list[Fraction] = field(default_factory=list)
    pivots: int = 0


def _row_scale(values: Sequence[Number]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.T = rows  # constraint rows then the objective row; last column is the rhs
        self.basis = basis
        self.D = 1
        self.ncols = ncols
        self.pivots = 0

    @property
    def z(self) -> list[int]:
        return self.T[-1]

    def pivot(self, r: int, s: int) -> None:
        T, D = self.T, self.D
        prow = T[r]
        p = prow[s]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[s]
            if f:
                T[i] = [(a * p - f * b) // D for a, b in zip(row, prow)]
            else:
                T[i] = [a * p // D for a in row]
        self.D = p
        self.basis[r] = s
        self.pivots += 1

    def positive(self, x: int) -> bool:
        return _sign(x) * _sign(self.D) > 0

    def negative(self, x: int) -> bool:
        return _sign(x) * _sign(self.D) < 0

    def run(self, allowed: Sequence[bool]) -> str:
        rhs = self.ncols
        while True:
            z = self.z
            s = next((j for j in range(self.ncols) if allowed[j] and self.negative(z[j])), None)
            if s is None:
                return "optimal"
            best = None
            for i in range(len(self.T) - 1):
                a = self.T[i][s]
                if not self.positive(a):
                    continue
                num = self.T[i][rhs]
                if best is None:
                    best = i
                    continue
                bn, ba = self.T[best][rhs], self.T[best][s]
                # num/a vs bn/ba with a, ba of the same sign
                lhs, rhs_cmp = num * ba, bn * a
                if _sign(a * ba) < 0:
                    lhs, rhs_cmp = -lhs, -rhs_cmp
                if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return "unbounded"
            self.pivot(best, s)

    def value(self, i: int, j: int) -> Fraction:
        return Fraction(self.T[i][j], self.D)


def solve_lp(
    c: Sequence[Number],
    A_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    A_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
) -> LPResult:
    """Maximize ``c x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Right-hand sides must be nonnegative.  On optimality ``y_ub >= 0`` and
    ``y_eq`` are dual multipliers with ``y A >= c`` and ``y b = value``.  On
    infeasibility they form a Farkas certificate: ``y_ub >= 0``,
    ``y A >= 0`` column-wise and ``y b < 0``.
    """
    nvar = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    if len(b_ub) != m_ub or len(b_eq) != m_eq:
        raise ValueError("constraint and rhs lengths differ")
    if any(Fraction(b) < 0 for b in list(b_ub) + list(b_eq)):
        raise ValueError("right-hand sides must be nonnegative")
    m = m_ub + m_eq
    ncols = nvar + m
    raw = [(list(r), b) for r, b in zip(A_ub, b_ub)] + [(list(r), b) for r, b in zip(A_eq, b_eq)]
    scales = []
    rows: list[list[int]] = []
    for i, (coefs, b) in enumerate(raw):
        if len(coefs) != nvar:
            raise ValueError("constraint row has wrong length")
        s = _row_scale(coefs + [b])
        scales.append(s)
        row = [int(Fraction(v) * s) for v in coefs] + [0] * m + [int(Fraction(b) * s)]
        row[nvar + i] = 1
        rows.append(row)
    is_art = [False] * nvar + [i >= m_ub for i in range(m)]

    # Phase I: maximize -sum(artificials).  Reduced cost row = c_B B^-1 A - c.
    z = [0] * (ncols + 1)
    for i in range(m_ub, m):
        for j in range(nvar):
            z[j] -= rows[i][j]
        z[ncols] -= rows[i][ncols]
    tab = _Tableau(rows + [z], [nvar + i for i in range(m)], ncols)
    if m_eq:
        allowed = [True] * nvar + [not a for a in is_art[nvar:]]
        tab.run(allowed)
        if tab.negative(tab.z[ncols]):
            y = []
            for i in range(m):
                y.append(tab.value(-1, nvar + i) - (1 if is_art[nvar + i] else 0))
            y = [v * s for v, s in zip(y, scales)]
            return LPResult("infeasible", None, [], y[:m_ub], y[m_ub:], tab.pivots)
        # Drive zero-level artificials out of the basis where possible.
        for i in range(m):
            if is_art[tab.basis[i]]:
                s = next((j for j in range(nvar) if tab.T[i][j]), None)
                if s is not None:
                    tab.pivot(i, s)

    # Phase II objective row: c_B B^-1 A - c, all scaled by the objective lcm.
    cs = _row_scale(list(c))
    cint = [int(Fraction(v) * cs) for v in c] + [0] * m
    D = tab.D
    zrow = [-cj * D for cj in cint] + [0]
    for i, bj in enumerate(tab.basis):
        cb = cint[bj]
        if cb:
            row = tab.T[i]
            zrow = [a + cb * b for a, b in zip(zrow, row)]
    tab.T[-1] = zrow
    allowed = [True] * nvar + [not a for a in is_art[nvar:]]
    status = tab.run(allowed)
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = [Fraction(0)] * nvar
    for i, bj in enumerate(tab.basis):
        if bj < nvar:
            x[bj] = tab.value(i, ncols)
    value = tab.value(-1, ncols) / cs
    y = [tab.value(-1, nvar + i) * s / cs for i, s in enumerate(scales)]
    return LPResult("optimal", value, x, y[:m_ub], y[m_ub:], tab.pivots)
