"""Command-line front end: ``segopt <subcommand> ...``.

Exit codes: 0 success, 2 usage, 3 parse or input errors, 4 validation
failures, 5 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import (
    BudgetExceeded,
    InvalidK,
    ParseError,
    SegoptError,
)
from .extremal import make_mk, random_representation
from .geometry import format_segments, grid_stats, read_segments, validate_general_position
from .graph import build_graph, format_independent_set, is_independent, read_independent_set
from .lower_bound import TECHNIQUES, build_cut, candidate_points, run_technique
from .normalize import is_favorable, make_favorable
from .oracles import clique_cover_number_trianglefree, exact_mis, fractional_independence
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VALIDATION, EXIT_BUDGET = 0, 2, 3, 4, 5


class _UsageError(Exception):
    pass


@dataclass
class RunReport:
    """Everything one subcommand computed for one input."""

    command: str
    input: str | None = None
    n: int = 0
    stats: dict = field(default_factory=dict)
    techniques: dict = field(default_factory=dict)
    chosen: str | None = None
    oracles: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    seconds: float | None = None

    def as_dict(self, deterministic: bool = False) -> dict:
        d = {
            "command": self.command,
            "input": self.input,
            "n": self.n,
            "stats": self.stats,
            "techniques": self.techniques,
            "chosen": self.chosen,
            "oracles": self.oracles,
            "violations": self.violations,
        }
        if not deterministic:
            d["seconds"] = self.seconds
        return d

    def to_text(self, deterministic: bool = False) -> str:
        rows = [f"command     {self.command}"]
        if self.input is not None:
            rows.append(f"input       {self.input}")
        rows.append(f"segments    {self.n}")
        for k, v in self.stats.items():
            rows.append(f"{k:<11} {v}")
        if self.techniques:
            rows.append("technique  achieved  guarantee              verified")
            for name, t in self.techniques.items():
                rows.append(f"{name:<10} {t['achieved']:>8}  {t['guarantee']:<22} {t['verified']}")
        if self.chosen:
            rows.append(f"chosen      {self.chosen}")
        for k, v in self.oracles.items():
            rows.append(f"{k:<11} {v}")
        rows.extend(f"violation   {v}" for v in self.violations)
        if not deterministic and self.seconds is not None:
            rows.append(f"seconds     {self.seconds:.3f}")
        return "\n".join(rows) + "\n"


def _emit(args, report: RunReport) -> None:
    report.seconds = time.perf_counter() - args._t0
    if args.json:
        print(json.dumps(report.as_dict(args.deterministic), sort_keys=True, indent=2))
    else:
        sys.stdout.write(report.to_text(args.deterministic))


def _load(path):
    try:
        return read_segments(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _frac(v: Fraction) -> str:
    return str(v)


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate_mk(args) -> int:
    try:
        inst = make_mk(args.k)
    except InvalidK as exc:
        raise _UsageError(str(exc)) from exc
    text = format_segments(inst.representation, header=f"M_{args.k}: {len(inst.representation)} segments")
    _write_text(args.output, text)
    return EXIT_OK


def cmd_random(args) -> int:
    rep = random_representation(
        args.seed, n=args.n, lines=args.lines, extent=args.extent, max_length=args.max_length
    )
    _write_text(args.output, format_segments(rep, header=f"random n={args.n} seed={args.seed}"))
    return EXIT_OK


def cmd_stats(args) -> int:
    rep = _load(args.input)
    stats = grid_stats(rep)
    _emit(args, RunReport("stats", args.input, len(rep), stats.as_dict()))
    return EXIT_OK


def _technique_row(rep, res) -> dict:
    return {
        "achieved": res.achieved_size,
        "guarantee": str(res.guarantee),
        "guarantee_value": round(float(res.guarantee), 6),
        "meets_guarantee": res.meets_guarantee,
        "verified": is_independent(rep, res.independent_set.ids),
    }


def cmd_lb(args) -> int:
    status = EXIT_OK
    for path in args.inputs:
        rep = _load(path)
        frep = make_favorable(rep)
        result = run_technique(frep, args.technique)
        report = RunReport("lb", path, len(rep), grid_stats(frep.rep).as_dict())
        if result.technique == "best":
            for name in TECHNIQUES:
                report.techniques[name] = _technique_row(rep, result.details["results"][name])
            report.chosen = result.details["chosen"]
        report.techniques[result.technique] = _technique_row(rep, result)
        if not all(t["verified"] and t["meets_guarantee"] for t in report.techniques.values()):
            status = EXIT_VALIDATION
        if args.output:
            _write_text(args.output, result.to_text())
        _emit(args, report)
    return status


def cmd_exact(args) -> int:
    rep = _load(args.input)
    best = exact_mis(build_graph(rep), budget=args.budget)
    report = RunReport("exact", args.input, len(rep), oracles={"alpha": best.size})
    if args.output:
        _write_text(args.output, format_independent_set(best.ids, header=f"# exact alpha={best.size}"))
    _emit(args, report)
    return EXIT_OK


def cmd_theta(args) -> int:
    rep = _load(args.input)
    cover = clique_cover_number_trianglefree(build_graph(rep))
    _emit(args, RunReport("theta", args.input, len(rep), oracles={"theta": cover.size}))
    return EXIT_OK


def cmd_alpha_star(args) -> int:
    rep = _load(args.input)
    sol = fractional_independence(build_graph(rep))
    _emit(args, RunReport("alpha-star", args.input, len(rep), oracles={"alpha_star": _frac(sol.value)}))
    return EXIT_OK


def cmd_oracles(args) -> int:
    rep = _load(args.input)
    g = build_graph(rep)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    unknown = set(which) - {"alpha", "theta", "alpha_star"}
    if unknown:
        raise _UsageError(f"unknown oracle(s): {', '.join(sorted(unknown))}")
    values = {}
    if "alpha" in which:
        values["alpha"] = exact_mis(g, budget=args.budget).size
    if "theta" in which:
        values["theta"] = clique_cover_number_trianglefree(g).size
    if "alpha_star" in which:
        values["alpha_star"] = _frac(fractional_independence(g).value)
    _emit(args, RunReport("oracles", args.input, len(rep), oracles=values))
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = _load(args.input)
    report = RunReport("verify", args.input, len(rep))
    gp = validate_general_position(rep)
    if not gp.ok:
        report.violations.append(gp.describe())
    else:
        fav = is_favorable(rep)
        if not fav:
            report.violations.append(str(fav))
    _emit(args, report)
    return EXIT_OK if not report.violations else EXIT_VALIDATION


def cmd_render(args) -> int:
    rep = _load(args.input)
    chosen = None
    if args.independent_set:
        try:
            chosen = read_independent_set(args.independent_set)
        except OSError as exc:
            raise ParseError(f"cannot read {args.independent_set}: {exc.strerror or exc}") from exc
        for i in chosen:
            rep.get(i)
    cut = None
    if args.cut:
        frep = make_favorable(rep)
        rep = frep.rep
        cut = build_cut(candidate_points(frep), frep)
    _write_text(args.output, render_svg(rep, chosen, cut))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--deterministic", action="store_true", help="omit timing from reports")

    p = argparse.ArgumentParser(prog="segopt", description="Independent sets of axis-parallel segments.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate-mk", parents=[common], help="write the extremal family M_k")
    s.add_argument("k", type=int)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_generate_mk)

    s = sub.add_parser("random", parents=[common], help="write a random family in general position")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lines", type=int)
    s.add_argument("--extent", type=int)
    s.add_argument("--max-length", type=int)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("stats", parents=[common], help="grid statistics")
    s.add_argument("input")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("lb", parents=[common], help="constructive lower bounds")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--technique", choices=(*TECHNIQUES, "all"), default="all")
    s.add_argument("-o", "--output", help="write the chosen independent set here")
    s.set_defaults(func=cmd_lb)

    for name, func, helptext in (
        ("exact", cmd_exact, "exact independence number"),
        ("theta", cmd_theta, "clique cover number (triangle-free inputs)"),
        ("alpha-star", cmd_alpha_star, "fractional independence number"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("input")
        if name == "exact":
            s.add_argument("-o", "--output")
            s.add_argument("--budget", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("oracles", parents=[common], help="several oracles at once")
    s.add_argument("input")
    s.add_argument("--which", default="alpha,theta,alpha_star")
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_oracles)

    s = sub.add_parser("verify", parents=[common], help="general position and favorability")
    s.add_argument("input")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", parents=[common], help="SVG drawing")
    s.add_argument("input")
    s.add_argument("--is", dest="independent_set", help="independent-set file to highlight")
    s.add_argument("--cut", action="store_true", help="normalize and draw the even-technique cut")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"segopt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"segopt: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"segopt: oracle budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SegoptError as exc:
        print(f"segopt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"segopt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"segopt: I/O error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
