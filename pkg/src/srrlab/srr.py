"""Service rates: axis intercepts, region membership, bounds and design allocations.

Every server has unit capacity.  Rates are ``fractions.Fraction`` values and
render as ``"p/q"`` (or ``"p"``) in reports.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import gf2
from .checks import OrthogonalFamily, best_smallest_family
from .codes import LinearCode, mask_from_support, support_of
from .config import CLIQUE_NODE_BUDGET, SPAN_CAP
from .designs import BlockCollection, DesignReport, check_t_design, reduce_design
from .errors import InvariantViolation
from .gf2 import BinaryMatrix, popcount
from .lp import solve_lp
from .recovery import RecoverySet, minimal_recovery_sets

Rational = Fraction


def fmt_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    return q


@dataclass
class LPSolution:
    object: int
    value: Fraction
    primal: dict[RecoverySet, Fraction]
    dual_certificate: dict[int, Fraction]
    status: str = "optimal"


def max_demand(c: LinearCode, obj: int, cap: int = SPAN_CAP) -> LPSolution:
    """Axis intercept for ``obj``: the largest rate it can get when all others ask for nothing.

    Solves ``max sum_R x_R`` over the minimal recovery sets ``R`` of ``obj``
    with every server loaded at most 1.  The dual multipliers are per-server
    prices covering every recovery set at least once.
    """
    sets = minimal_recovery_sets(c, obj, cap)
    A = [[1 if j in r.servers else 0 for r in sets] for j in range(1, c.n + 1)]
    res = solve_lp([1] * len(sets), A, [1] * c.n)
    if res.status != "optimal" or res.value is None:
        raise InvariantViolation(f"axis-intercept LP ended {res.status}")
    primal = {r: v for r, v in zip(sets, res.x) if v}
    dual = {j + 1: y for j, y in enumerate(res.y_ub)}
    return LPSolution(obj, res.value, primal, dual)


def _coset_masks(c: LinearCode, obj: int, cap: int) -> list[int]:
    # Recomputed from the generator on purpose: certificate checks must not
    # reuse the solver's variable list.
    x0 = gf2.solve_columns(c.generator.columns_bits(), 1 << (obj - 1), c.k)
    if x0 is None:
        raise InvariantViolation(f"e_{obj} is not reachable")
    null = gf2.nullspace_rows(c.generator.rows, c.n)
    return [x0 ^ h for h in gf2.span_ints(null, cap)]


def verify_max_demand(c: LinearCode, sol: LPSolution, cap: int = SPAN_CAP) -> None:
    """Re-check both certificates of an axis-intercept solution with exact arithmetic.

    Primal: every variable is a recovery set, rates are nonnegative, no
    server exceeds capacity, rates sum to the value.  Dual: prices are
    nonnegative, every set of servers whose columns sum to ``e_obj`` costs at
    least 1 (supersets then cost more), and the prices sum to the value.
    """
    obj = sol.object
    target = 1 << (obj - 1)
    load = [Fraction(0)] * (c.n + 1)
    for r, x in sol.primal.items():
        if x < 0:
            raise InvariantViolation(f"negative rate on {r}")
        if r.object != obj or c.column_sum(r.servers) != target:
            raise InvariantViolation(f"{r} does not recover object {obj}")
        for j in r.servers:
            load[j] += x
    if any(v > 1 for v in load[1:]):
        raise InvariantViolation("server over capacity")
    if sum(sol.primal.values(), Fraction(0)) != sol.value:
        raise InvariantViolation("primal rates do not sum to the value")

    y = [Fraction(0)] * c.n
    for j, v in sol.dual_certificate.items():
        if v < 0:
            raise InvariantViolation(f"negative price on server {j}")
        y[j - 1] = v
    for m in _coset_masks(c, obj, cap):
        if sum((y[j] for j in gf2.bits_of(m)), Fraction(0)) < 1:
            raise InvariantViolation(f"recovery set {support_of(m)} priced below 1")
    if sum(y, Fraction(0)) != sol.value:
        raise InvariantViolation("dual prices do not sum to the value")


@dataclass
class FeasibilityResult:
    feasible: bool
    demand: tuple[Fraction, ...]
    allocation: dict[RecoverySet, Fraction] = field(default_factory=dict)
    object_prices: dict[int, Fraction] = field(default_factory=dict)
    server_prices: dict[int, Fraction] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.feasible


def feasible(
    c: LinearCode, demand: Sequence[Fraction | int], cap: int = SPAN_CAP
) -> FeasibilityResult:
    """Is the demand vector inside the service rate region?

    Feasible: ``allocation`` splits each object's demand over its minimal
    recovery sets within server capacity.  Infeasible: ``object_prices``
    (free) and ``server_prices`` (nonnegative) certify it, with every
    recovery set ``R`` of object ``i`` satisfying
    ``object_prices[i] + sum(server_prices[R]) >= 0`` while
    ``sum(object_prices[i] * demand[i]) + sum(server_prices) < 0``.
    """
    if len(demand) != c.k:
        raise ValueError(f"demand needs {c.k} entries, got {len(demand)}")
    d = tuple(Fraction(v) for v in demand)
    if any(v < 0 for v in d):
        raise ValueError("demands must be nonnegative")
    active = [i + 1 for i, v in enumerate(d) if v]
    if not active:
        return FeasibilityResult(True, d)
    variables: list[RecoverySet] = []
    for obj in active:
        variables.extend(minimal_recovery_sets(c, obj, cap))
    A_ub = [[1 if j in r.servers else 0 for r in variables] for j in range(1, c.n + 1)]
    A_eq = [[1 if r.object == obj else 0 for r in variables] for obj in active]
    res = solve_lp([0] * len(variables), A_ub, [1] * c.n, A_eq, [d[o - 1] for o in active])
    if res.status == "optimal":
        alloc = {r: v for r, v in zip(variables, res.x) if v}
        return FeasibilityResult(True, d, alloc)
    if res.status != "infeasible":
        raise InvariantViolation(f"feasibility LP ended {res.status}")
    prices = {o: Fraction(0) for o in range(1, c.k + 1)}
    prices.update({o: y for o, y in zip(active, res.y_eq)})
    servers = {j + 1: y for j, y in enumerate(res.y_ub)}
    return FeasibilityResult(False, d, {}, prices, servers)


def verify_feasibility(c: LinearCode, result: FeasibilityResult, cap: int = SPAN_CAP) -> None:
    """Independent exact check of either outcome of :func:`feasible`."""
    d = result.demand
    if result.feasible:
        served = [Fraction(0)] * (c.k + 1)
        load = [Fraction(0)] * (c.n + 1)
        for r, x in result.allocation.items():
            if x < 0 or c.column_sum(r.servers) != 1 << (r.object - 1):
                raise InvariantViolation(f"bad allocation entry {r}: {x}")
            served[r.object] += x
            for j in r.servers:
                load[j] += x
        if tuple(served[1:]) != d:
            raise InvariantViolation("allocation does not meet the demand exactly")
        if any(v > 1 for v in load[1:]):
            raise InvariantViolation("server over capacity")
        return
    w = result.server_prices
    if any(v < 0 for v in w.values()):
        raise InvariantViolation("negative server price")
    for obj in range(1, c.k + 1):
        u = result.object_prices[obj]
        for m in _coset_masks(c, obj, cap):
            if u + sum((w[j + 1] for j in gf2.bits_of(m)), Fraction(0)) < 0:
                raise InvariantViolation(f"certificate fails on {support_of(m)}")
    total = sum((result.object_prices[o] * d[o - 1] for o in range(1, c.k + 1)), Fraction(0))
    if total + sum(w.values(), Fraction(0)) >= 0:
        raise InvariantViolation("certificate does not separate the demand")


@dataclass
class BoundsReport:
    object: int
    a: int
    O: tuple[int, ...]
    smallest_sets: int
    J: int
    J_exact: bool
    lower: Fraction
    upper_refined: Fraction | None
    upper_loose: Fraction | None
    dmin_bound: int
    d_dual: int
    lp_exact: Fraction | None = None
    family: OrthogonalFamily | None = None
    lp_solution: LPSolution | None = None

    def check(self) -> None:
        """Raise unless ``lower <= lp <= upper_refined <= upper_loose`` where present."""
        chain = [self.lower, self.lp_exact, self.upper_refined, self.upper_loose]
        present = [v for v in chain if v is not None]
        if any(a > b for a, b in zip(present, present[1:])):
            raise InvariantViolation(f"bounds out of order for object {self.object}: {chain}")


def upper_bounds(n: int, a: int, d_dual: int) -> tuple[Fraction | None, Fraction | None]:
    """``1 + (n-a)/max(d_dual-a, a)`` and ``1 + (n-a)/(d_dual-a)``.

    The refined bound is withheld when ``d_dual < 2`` and the loose one when
    ``d_dual <= a`` (non-positive denominator).
    """
    refined = 1 + Fraction(n - a, max(d_dual - a, a)) if d_dual >= 2 else None
    loose = 1 + Fraction(n - a, d_dual - a) if d_dual > a else None
    return refined, loose


def demand_bounds(
    c: LinearCode,
    obj: int,
    with_lp: bool = True,
    node_budget: int = CLIQUE_NODE_BUDGET,
    cap: int = SPAN_CAP,
) -> BoundsReport:
    """Orthogonal-check lower bound, the two capacity upper bounds, and optionally the LP value.

    ``J`` is the best ``J_O`` over all smallest recovery sets ``O``; each
    choice yields a valid lower bound, so the largest is reported.
    """
    a, smallest, fam = best_smallest_family(c, obj, node_budget, cap)
    d_dual = c.dual_distance(cap)
    refined, loose = upper_bounds(c.n, a, d_dual)
    rep = BoundsReport(
        object=obj,
        a=a,
        O=fam.O,
        smallest_sets=len(smallest),
        J=fam.J,
        J_exact=not fam.lower_bound_only,
        lower=Fraction(1 + fam.J),
        upper_refined=refined,
        upper_loose=loose,
        dmin_bound=c.min_distance(cap),
        d_dual=d_dual,
        family=fam,
    )
    if with_lp:
        sol = max_demand(c, obj, cap)
        rep.lp_exact = sol.value
        rep.lp_solution = sol
    return rep


@dataclass
class DesignAllocation:
    object: int
    column: int
    blocks: list[tuple[int, ...]]
    design: DesignReport
    d_c: int
    gamma: int
    rate: Fraction
    allocation: dict[RecoverySet, Fraction]


def punctured_min_weight_blocks(
    c: LinearCode, column: int, cap: int = SPAN_CAP
) -> BlockCollection:
    """Supports of minimum-weight dual words through ``column``, with ``column`` removed."""
    d_dual = c.dual_distance(cap)
    bit = 1 << (column - 1)
    supports = [
        support_of(h) for h in c.dual_codewords(cap) if h & bit and popcount(h) == d_dual
    ]
    full = BlockCollection.of(c.n, sorted(supports))
    return reduce_design(full, [column])


def design_allocation(
    c: LinearCode, obj: int, cap: int = SPAN_CAP
) -> DesignAllocation | None:
    """Rate-``1 + (n-1)/(d_perp-1)`` allocation when the punctured blocks form a 1-design.

    Rate 1 goes to the systematic column of ``obj`` and ``1/d_c`` to each
    block.  Returns ``None`` when the blocks are not a 1-design.
    """
    column = c.systematic_map.get(obj)
    if column is None:
        raise ValueError(f"object {obj} has no systematic column")
    d_dual = c.dual_distance(cap)
    if d_dual <= 1:
        raise ValueError("design allocation needs dual distance > 1")
    reduced = punctured_min_weight_blocks(c, column, cap)
    rep = check_t_design(reduced, 1)
    if not rep.is_design or not rep.replication:
        return None
    d_c, gamma = rep.replication, rep.num_blocks
    blocks = [tuple(reduced.point_label(p) for p in b) for b in reduced.blocks]
    share = Fraction(1, d_c)
    alloc = {RecoverySet(obj, (column,)): Fraction(1)}
    for b in blocks:
        alloc[RecoverySet(obj, b)] = share
    load = [Fraction(0)] * (c.n + 1)
    for r, x in alloc.items():
        if c.column_sum(r.servers) != 1 << (obj - 1):
            raise InvariantViolation(f"block {r} does not recover object {obj}")
        for j in r.servers:
            load[j] += x
    if any(v > 1 for v in load[1:]):
        raise InvariantViolation("design allocation overloads a server")
    rate = 1 + Fraction(gamma, d_c)
    if rate != 1 + Fraction(c.n - 1, d_dual - 1):
        raise InvariantViolation("design rate disagrees with the counting identity")
    return DesignAllocation(obj, column, blocks, rep, d_c, gamma, rate, alloc)


def _intercept_worker(args: tuple[int, tuple[int, ...], int, int]) -> Fraction:
    ncols, rows, obj, cap = args
    return max_demand(LinearCode(BinaryMatrix(ncols, rows)), obj, cap).value


def maximal_simplex(c: LinearCode, jobs: int = 1, cap: int = SPAN_CAP) -> list[Fraction]:
    """Axis intercepts ``lambda_1^max .. lambda_k^max`` in object order."""
    objs = range(1, c.k + 1)
    if jobs <= 1 or c.k == 1:
        return [max_demand(c, o, cap).value for o in objs]
    g = c.generator
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_intercept_worker, [(g.ncols, g.rows, o, cap) for o in objs]))


def disjoint_family_allocation(
    c: LinearCode, sets: Sequence[RecoverySet]
) -> tuple[dict[RecoverySet, Fraction], Fraction]:
    """Rate 1 on each of a list of pairwise disjoint recovery sets; checked for feasibility."""
    used = 0
    for r in sets:
        m = mask_from_support(r.servers, c.n)
        if m & used:
            raise InvariantViolation("recovery sets are not disjoint")
        if c.column_sum(r.servers) != 1 << (r.object - 1):
            raise InvariantViolation(f"{r} is not a recovery set")
        used |= m
    alloc = {r: Fraction(1) for r in sets}
    return alloc, Fraction(len(sets))
