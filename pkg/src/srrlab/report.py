"""Per-object analysis reports and their table, JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from . import __version__
from .codes import LinearCode
from .config import Caps
from .gf2 import BinaryMatrix
from .srr import design_allocation, fmt_rational, demand_bounds


@dataclass(frozen=True)
class ReportRow:
    object: int
    a: int
    J: int
    J_exact: bool
    lower: str
    upper_refined: str | None
    upper_loose: str | None
    lambda_max: str | None
    design_status: str
    allocation: str


ROW_FIELDS = tuple(f.name for f in fields(ReportRow))


@dataclass
class CodeInfo:
    name: str
    n: int
    k: int
    d: int
    d_dual: int


@dataclass
class AnalysisReport:
    code: CodeInfo
    rows: list[ReportRow]
    caps: dict[str, int]
    exact_lp: bool
    tool: str = "srrlab"
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "code": asdict(self.code),
            "caps": dict(self.caps),
            "exact_lp": self.exact_lp,
            "rows": [asdict(r) for r in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        return cls(
            code=CodeInfo(**data["code"]),
            rows=[ReportRow(**r) for r in data["rows"]],
            caps=dict(data["caps"]),
            exact_lp=data["exact_lp"],
            tool=data["tool"],
            version=data["version"],
        )


def _opt(q: Fraction | None) -> str | None:
    return None if q is None else fmt_rational(q)


def summarize_allocation(alloc: dict) -> str:
    """``count*sSIZE@weight`` terms joined by ``+``, e.g. ``1*s1@1 + 8*s7@1/4``."""
    groups: dict[tuple[int, Fraction], int] = {}
    for r, x in alloc.items():
        key = (r.size, x)
        groups[key] = groups.get(key, 0) + 1
    terms = [f"{cnt}*s{size}@{fmt_rational(x)}" for (size, x), cnt in sorted(groups.items())]
    return " + ".join(terms) if terms else "-"


def analyze_object(c: LinearCode, obj: int, caps: Caps, exact_lp: bool = True) -> ReportRow:
    b = demand_bounds(c, obj, with_lp=exact_lp, node_budget=caps.clique_nodes, cap=caps.span)
    b.check()
    if obj not in c.systematic_map:
        status = "not systematic"
    elif b.d_dual < 2:
        status = "dual distance < 2"
    else:
        da = design_allocation(c, obj, caps.span)
        status = "no 1-design" if da is None else f"{da.design.params()} rate {fmt_rational(da.rate)}"
    alloc = "-"
    if b.lp_solution is not None:
        alloc = summarize_allocation(b.lp_solution.primal)
    return ReportRow(
        object=obj,
        a=b.a,
        J=b.J,
        J_exact=b.J_exact,
        lower=fmt_rational(b.lower),
        upper_refined=_opt(b.upper_refined),
        upper_loose=_opt(b.upper_loose),
        lambda_max=_opt(b.lp_exact),
        design_status=status,
        allocation=alloc,
    )


def _row_worker(args: tuple[int, tuple[int, ...], int, Caps, bool]) -> ReportRow:
    ncols, rows, obj, caps, exact_lp = args
    return analyze_object(LinearCode(BinaryMatrix(ncols, rows)), obj, caps, exact_lp)


def analyze(
    c: LinearCode,
    objects: list[int] | None = None,
    caps: Caps = Caps(),
    exact_lp: bool = True,
    jobs: int = 1,
) -> AnalysisReport:
    """Build the report; rows come back in object order whatever ``jobs`` is."""
    objs = sorted(set(objects)) if objects else list(range(1, c.k + 1))
    for o in objs:
        if not 1 <= o <= c.k:
            raise ValueError(f"object {o} outside 1..{c.k}")
    if jobs <= 1 or len(objs) == 1:
        rows = [analyze_object(c, o, caps, exact_lp) for o in objs]
    else:
        g = c.generator
        work = [(g.ncols, g.rows, o, caps, exact_lp) for o in objs]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_worker, work))
    info = CodeInfo(c.name, c.n, c.k, c.min_distance(caps.span), c.dual_distance(caps.span))
    return AnalysisReport(info, rows, asdict(caps), exact_lp)


def render_json(rep: AnalysisReport) -> str:
    return json.dumps(rep.to_dict(), indent=2) + "\n"


def parse_json(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def render_csv(rep: AnalysisReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for r in rep.rows:
        w.writerow(["" if v is None else v for v in asdict(r).values()])
    return buf.getvalue()


def render_table(rep: AnalysisReport) -> str:
    c = rep.code
    head = f"{c.name or 'code'}: n={c.n} k={c.k} d={c.d} d_dual={c.d_dual}"
    cols = ROW_FIELDS
    cells = [[("-" if v is None else str(v)) for v in asdict(r).values()] for r in rep.rows]
    widths = [max([len(h)] + [len(row[i]) for row in cells]) for i, h in enumerate(cols)]
    lines = [head, "  ".join(h.ljust(w) for h, w in zip(cols, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}
