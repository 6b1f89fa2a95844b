"""``srrlab`` command line.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 cap refusal,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import codes, mld
from .codes import LinearCode
from .config import Caps, caps_from_env
from .designs import BlockCollection, check_t_design, reduce_design
from .errors import CapExceeded, InvariantViolation, ParseError, RankDeficientError
from .gf2 import mask_of
from .report import RENDERERS, analyze
from .srr import feasible, fmt_rational, parse_rational, verify_feasibility

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _family(name: str, params: list[int], form: str, seed: int | None) -> LinearCode:
    want = {"hamming": 1, "simplex": 1, "repetition": 1, "spc": 1, "reed_muller": 2, "random": 2}
    if name not in want:
        raise UsageError(f"unknown family {name!r}")
    if len(params) != want[name]:
        raise UsageError(f"{name} takes {want[name]} --param value(s)")
    try:
        if name == "simplex":
            forms = codes.simplex(params[0])
            return forms.evaluation if form == "evaluation" else forms.systematic
        if name == "reed_muller":
            return codes.reed_muller(*params)
        if name == "random":
            return codes.random_code(params[0], params[1], 0 if seed is None else seed)
        return {"hamming": codes.hamming, "repetition": codes.repetition, "spc": codes.spc}[name](
            params[0]
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> LinearCode:
    try:
        return codes.read_gm(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_family(args: argparse.Namespace, caps: Caps) -> int:
    c = _family(args.name, args.param, args.form, args.seed)
    comments = [f"{c.name} [n={c.n}, k={c.k}]"]
    _emit(codes.format_gm(c.generator, comments), args.out)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, caps: Caps) -> int:
    c = _load(args.code)
    objects = [args.object] if args.object is not None else None
    try:
        rep = analyze(c, objects, caps, exact_lp=args.exact_lp, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(RENDERERS[args.format](rep), args.out)
    return EXIT_OK


def _parse_demand(text: str, k: int) -> list:
    parts = text.split(",")
    if len(parts) != k:
        raise ParseError(f"expected {k} comma-separated rates, got {len(parts)}")
    try:
        demand = [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if any(q < 0 for q in demand):
        raise ParseError("rates must be nonnegative")
    return demand


def cmd_feasible(args: argparse.Namespace, caps: Caps) -> int:
    c = _load(args.code)
    demand = _parse_demand(args.rates, c.k)
    res = feasible(c, demand, caps.span)
    verify_feasibility(c, res, caps.span)
    lines = [f"demand: {','.join(fmt_rational(q) for q in demand)}"]
    if res.feasible:
        lines.append("FEASIBLE")
        for r, x in sorted(res.allocation.items(), key=lambda kv: (kv[0].object, kv[0].size, kv[0].servers)):
            lines.append(f"  object {r.object} via {r}: {fmt_rational(x)}")
    else:
        lines.append("INFEASIBLE")
        lines.append("  certificate: u_l + sum(w over R) >= 0 for every recovery set R of l,")
        lines.append("  yet sum(u_l * demand_l) + sum(w) < 0")
        for obj, u in sorted(res.object_prices.items()):
            lines.append(f"  u_{obj} = {fmt_rational(u)}")
        for j, w in sorted(res.server_prices.items()):
            if w:
                lines.append(f"  w_{j} = {fmt_rational(w)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _parse_checks(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise ParseError(f"malformed check list {text!r}") from exc


def cmd_mld(args: argparse.Namespace, caps: Caps) -> int:
    c = _load(args.code)
    if not 1 <= args.object <= c.k:
        raise UsageError(f"object {args.object} outside 1..{c.k}")
    if args.t < 0:
        raise UsageError("t must be nonnegative")
    checks = _parse_checks(args.checks) if args.checks else None
    try:
        votes = mld.build_votes(
            c, args.object, checks=checks, node_budget=caps.clique_nodes, cap=caps.span
        )
    except InvariantViolation as exc:
        if checks is None:
            raise
        raise UsageError(f"supplied checks rejected: {exc}") from exc
    print(f"object {args.object}: {votes.J + 1} votes, direct {set(votes.direct_positions)}")
    if args.mode == "exhaustive":
        res = mld.verify_capability(c, args.object, args.t, votes, caps.error_patterns)
        checked, bad = res.patterns_checked, res.counterexample
    else:
        rng = random.Random(0 if args.seed is None else args.seed)
        bad, checked = None, 0
        for _ in range(args.samples):
            w = rng.randint(0, args.t)
            pos = tuple(sorted(rng.sample(range(c.n), min(w, c.n))))
            checked += 1
            if not mld.pattern_safe(votes, mask_of(pos)):
                bad = tuple(p + 1 for p in pos)
                break
    if bad is None:
        print(f"t={args.t}: PASS ({checked} patterns, {args.mode})")
    else:
        print(f"t={args.t}: FAIL ({checked} patterns, {args.mode})")
        print(f"  counterexample: {set(bad) if bad else '{}'}")
    return EXIT_OK


def cmd_design(args: argparse.Namespace, caps: Caps) -> int:
    c = _load(args.code)
    w = c.min_distance(caps.span) if args.weight == "min" else int(args.weight)
    supports = codes.min_weight_codewords(c, w, cap=caps.span)
    bc = BlockCollection.of(c.n, supports)
    label = f"weight-{w} codewords ({len(supports)})"
    if args.puncture is not None:
        if not 1 <= args.puncture <= c.n:
            raise UsageError(f"puncture coordinate outside 1..{c.n}")
        bc = reduce_design(bc, [args.puncture])
        label += f", through {args.puncture}, punctured"
    rep = check_t_design(bc, args.t, caps.design_subsets)
    verdict = "YES" if rep.is_design else "NO"
    line = f"{rep.params()} design: {verdict}"
    if rep.is_steiner:
        line += " (Steiner)"
    if not rep.is_design and rep.reason:
        line += f" ({rep.reason})"
    print(label)
    print(line)
    return EXIT_OK


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-dual", type=_int_arg, help="max codewords enumerated in any span")
    common.add_argument("--cap-clique-nodes", type=_int_arg, help="clique search node budget")
    common.add_argument("--jobs", type=_int_arg, default=1, help="worker processes")
    common.add_argument("--seed", type=_int_arg, help="seed for random codes and sampling")

    p = _Parser(prog="srrlab", description="Service-rate analysis of binary linear codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("family", parents=[common], help="write a generator from a code family")
    f.add_argument("--name", required=True)
    f.add_argument("--param", type=_int_arg, action="extend", nargs="+", default=[])
    f.add_argument("--form", choices=("evaluation", "systematic"), default="systematic")
    f.add_argument("--out")
    f.set_defaults(func=cmd_family)

    a = sub.add_parser("analyze", parents=[common], help="bounds and axis intercepts per object")
    a.add_argument("code")
    a.add_argument("--object", type=_int_arg)
    a.add_argument("--format", choices=tuple(RENDERERS), default="table")
    a.add_argument("--exact-lp", action=argparse.BooleanOptionalAction, default=True)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    fe = sub.add_parser("feasible", parents=[common], help="test a demand vector")
    fe.add_argument("code")
    fe.add_argument("rates", help="k comma-separated rationals, e.g. 3,0,1/2")
    fe.set_defaults(func=cmd_feasible)

    m = sub.add_parser("mld", parents=[common], help="check majority-logic correction of t errors")
    m.add_argument("code")
    m.add_argument("object", type=_int_arg)
    m.add_argument("t", type=_int_arg)
    m.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    m.add_argument("--samples", type=_int_arg, default=10000)
    m.add_argument("--checks", help="parity-check supports, e.g. '1,12,13;1,2,3'")
    m.set_defaults(func=cmd_mld)

    d = sub.add_parser("design", parents=[common], help="test codeword supports for a t-design")
    d.add_argument("code")
    d.add_argument("--weight", default="min", help="'min' or a codeword weight")
    d.add_argument("--t", type=_int_arg, default=2)
    d.add_argument("--puncture", type=_int_arg)
    d.set_defaults(func=cmd_design)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "weight", "min") != "min" and not str(args.weight).isdigit():
            raise UsageError("--weight must be 'min' or a positive integer")
        try:
            env_caps = caps_from_env()
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        caps = env_caps.override(span=args.cap_dual, clique_nodes=args.cap_clique_nodes)
        if any(v is not None and v < 1 for v in (args.cap_dual, args.cap_clique_nodes)) or args.jobs < 1:
            raise UsageError("caps and --jobs must be positive")
        return args.func(args, caps)
    except UsageError as exc:
        print(f"srrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, RankDeficientError) as exc:
        print(f"srrlab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"srrlab: refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"srrlab: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
