"""``sobmult`` command line.

Exit codes: 0 Proved (or a passing experiment), 2 Disproved (or a failing
experiment), 3 Undetermined, 1 any usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .exponents import DomainSpec, Family, SpaceSpec, format_rational, rational_parse
from .experiments import CounterexampleConfig, counterexample_growth, empirical_boundedness
from .interpolation import InterpMethod, interpolate_specs
from .rules import (
    EmbedQuery,
    MultQuery,
    Verdict,
    check,
    query_from_dict,
    replay_certificate,
    verdict_from_dict,
    verdict_to_dict,
)

EXIT_ERROR = 1
EXIT_FAIL = 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _rational(flag: str):
    def parse(text: str):
        try:
            return rational_parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    parse.__name__ = flag
    return parse


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_domain(p: argparse.ArgumentParser, family: bool = True):
    p.add_argument("--n", type=_positive_int, required=True, help="space dimension")
    p.add_argument("--domain", choices=["rn", "bounded"], default="rn")
    if family:
        p.add_argument("--family", choices=[f.value for f in Family], default="W")


def _add_mult_flags(p: argparse.ArgumentParser, required: bool = True):
    for name in ("s1", "p1", "s2", "p2", "s", "p"):
        p.add_argument(f"--{name}", type=_rational(f"--{name}"), required=required)


def _add_embed_flags(p: argparse.ArgumentParser, required: bool = True):
    for name in ("s", "p", "t", "q"):
        p.add_argument(f"--{name}", type=_rational(f"--{name}"), required=required)


def _add_format(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["text", "json"], default="text")


def _domain(args) -> DomainSpec:
    return DomainSpec(args.domain, args.n)


def _mult_query(args) -> MultQuery:
    dom = _domain(args)
    fam = Family(args.family)
    pairs = ((args.s1, args.p1), (args.s2, args.p2), (args.s, args.p))
    return MultQuery(*(SpaceSpec(fam, s, p, dom) for s, p in pairs))


def _embed_query(args) -> EmbedQuery:
    dom = _domain(args)
    fam = Family(args.family)
    return EmbedQuery(SpaceSpec(fam, args.s, args.p, dom), SpaceSpec(fam, args.t, args.q, dom))


def format_verdict_text(v: Verdict, q) -> str:
    lines = [f"query: {q.describe()}", f"verdict: {v.status.value}"]
    if v.certificate is not None:
        lines.append(f"rule: {v.rule_id.value}")
        lines.append("conditions:")
        for c in v.certificate.conditions:
            lines.append(
                f"  [{'true' if c.holds else 'false'}] {c.label}: "
                f"{format_rational(c.lhs)} {c.relation.value} {format_rational(c.rhs)}"
            )
        notes = v.certificate.notes
    else:
        notes = v.notes
    if notes:
        lines.append("notes:")
        lines.extend(f"  - {note}" for note in notes)
    if v.tried:
        lines.append("tried:")
        for a in v.tried:
            name = a.rule_id.value + (f" ({a.variant})" if a.variant else "")
            if a.failed is not None:
                c = a.failed
                why = f"failed {c.label}: {format_rational(c.lhs)} {c.relation.value} {format_rational(c.rhs)}"
            else:
                why = a.reason
            lines.append(f"  - {name}: {why}")
    return "\n".join(lines)


def _emit_verdict(args, q) -> int:
    v = check(q)
    if args.format == "json":
        print(json.dumps(verdict_to_dict(v, q), indent=2, ensure_ascii=False))
    else:
        print(format_verdict_text(v, q))
    return v.exit_code


def cmd_check_mult(args) -> int:
    return _emit_verdict(args, _mult_query(args))


def cmd_check_embed(args) -> int:
    return _emit_verdict(args, _embed_query(args))


def cmd_interp(args) -> int:
    dom = _domain(args)
    fam = Family(args.family)
    a = SpaceSpec(fam, args.s0, args.p0, dom)
    b = SpaceSpec(fam, args.s1, args.p1, dom)
    method = InterpMethod(args.method) if args.method else None
    out, params = interpolate_specs(a, b, args.theta, method)
    if args.format == "json":
        print(json.dumps({
            "family": fam.value,
            "s": format_rational(out.s),
            "p": format_rational(out.p),
            "theta": format_rational(params.theta),
            "method": params.method.value,
            "admissible": params.admissible,
            "caveats": list(params.caveats),
        }, indent=2, ensure_ascii=False))
    else:
        print(f"space: {out.describe()}")
        print(f"s = {format_rational(out.s)}, p = {format_rational(out.p)}")
        print(f"method: {params.method.value}, theta = {format_rational(params.theta)}")
        print(f"admissible: {'yes' if params.admissible else 'no'}")
        for cav in params.caveats:
            print(f"  - {cav}")
    return 0


def _write_report(report, stem: str) -> list[Path]:
    base = Path(stem)
    if base.suffix in (".json", ".csv"):
        base = base.with_suffix("")
    paths = [base.with_suffix(".json"), base.with_suffix(".csv")]
    report.write_json(paths[0])
    report.write_csv(paths[1])
    return paths


def _summarize(report, paths) -> None:
    print(f"experiment: {report.experiment}")
    print(f"slope: {report.fitted_slope:.6f} (stderr {report.slope_stderr:.2e})")
    bound = "<=" if report.one_sided else "~="
    print(f"expected: slope {bound} {float(report.expected_slope):.6f} (tolerance {report.tolerance})")
    print(f"pass: {'yes' if report.passed else 'no'}")
    for path in paths:
        print(f"wrote {path}")


def cmd_verify(args) -> int:
    if args.kind == "mult":
        missing = [f for f in ("s1", "p1", "s2", "p2", "s", "p") if getattr(args, f) is None]
        if missing:
            raise CliError("mult verification needs " + ", ".join("--" + m for m in missing))
        q = _mult_query(args)
    else:
        missing = [f for f in ("s", "p", "t", "q") if getattr(args, f) is None]
        if missing:
            raise CliError("embed verification needs " + ", ".join("--" + m for m in missing))
        q = _embed_query(args)
    report = empirical_boundedness(q, samples=args.samples, seed=args.seed, grid=args.grid)
    paths = _write_report(report, args.out)
    _summarize(report, paths)
    return 0 if report.passed else EXIT_FAIL


def cmd_counterexample(args) -> int:
    if args.p1 <= args.p:
        raise CliError(f"p1 = {args.p1} <= p = {args.p}: no contradiction expected")
    if args.Nmax < 3:
        raise CliError(f"--Nmax {args.Nmax}: the slope fit needs at least 3 values of N")
    cfg = CounterexampleConfig(s=args.s, p1=args.p1, p=args.p, s2=args.s2, p2=args.p2,
                               N_list=tuple(range(1, args.Nmax + 1)), grid=args.grid)
    report = counterexample_growth(cfg)
    paths = _write_report(report, args.out) if args.out else []
    _summarize(report, paths)
    return 0 if report.passed else EXIT_FAIL


def cmd_replay(args) -> int:
    data = json.loads(Path(args.path).read_text())
    v = verdict_from_dict(data)
    if v.certificate is not None and not replay_certificate(v.certificate):
        bad = [c for c in v.certificate.conditions if not c.replays()]
        raise CliError("certificate does not replay: " + "; ".join(str(c) for c in bad))
    if "query" in data:
        fresh = check(query_from_dict(data["query"]))
        if fresh.status is not v.status or fresh.rule_id != v.rule_id:
            raise CliError(
                f"recorded {v.status.value}/{v.rule_id and v.rule_id.value} but engine gives "
                f"{fresh.status.value}/{fresh.rule_id and fresh.rule_id.value}"
            )
    rule = v.rule_id.value if v.rule_id else "none"
    print(f"replayed: {v.status.value} ({rule}), {len(v.certificate.conditions) if v.certificate else 0} conditions")
    return v.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sobmult", description="Exact Sobolev multiplication and embedding checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-mult", help="decide left x right -> target")
    _add_domain(p)
    _add_mult_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_check_mult)

    p = sub.add_parser("check-embed", help="decide W^{s,p} -> W^{t,q}")
    _add_domain(p)
    _add_embed_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_check_embed)

    p = sub.add_parser("interp", help="interpolate two spaces")
    _add_domain(p)
    for name in ("s0", "p0", "s1", "p1", "theta"):
        p.add_argument(f"--{name}", type=_rational(f"--{name}"), required=True)
    p.add_argument("--method", choices=[m.value for m in InterpMethod])
    _add_format(p)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("verify", help="numerically probe a proved statement")
    p.add_argument("--kind", choices=["mult", "embed"], default="mult")
    _add_domain(p)
    for name in ("s1", "p1", "s2", "p2", "s", "p", "t", "q"):
        p.add_argument(f"--{name}", type=_rational(f"--{name}"))
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=_positive_int, default=1024)
    p.add_argument("--out", required=True, help="report path stem; writes STEM.json and STEM.csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", help="growth of the modulated-copies ratio")
    p.add_argument("--s", type=_rational("--s"), default=rational_parse("1/2"))
    p.add_argument("--p1", type=_rational("--p1"), default=rational_parse("4"))
    p.add_argument("--p", type=_rational("--p"), default=rational_parse("2"))
    p.add_argument("--s2", type=_rational("--s2"), default=rational_parse("1"))
    p.add_argument("--p2", type=_rational("--p2"), default=rational_parse("2"))
    p.add_argument("--Nmax", type=_positive_int, default=7)
    p.add_argument("--grid", type=_positive_int, default=2 ** 14)
    p.add_argument("--out", help="report path stem; writes STEM.json and STEM.csv")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("replay", help="re-check a JSON verdict")
    p.add_argument("path")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
