"""Command-line front end.

Commands: curvature, check-einstein, check-extremal, immersion, diastasis,
report, fixtures. Exit status convention: 0 means the run succeeded and any
mathematical question was answered yes; 2 means the run succeeded but the
answer is no (not Einstein, not extremal, no immersion, criterion failed);
1 means the run itself failed (bad config, unsupported capability).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reporting
from .config import parse_config
from .curvature import VERDICT_TOLERANCE, verdicts
from .domains import sample_points
from .errors import HartogsError
from .fixtures import run_acceptance
from .immersion import Answer, ImmersionTarget, cross_check, decide, table_one
from .series import Form, block, resolvability


def _add_common(parser, config_required=True):
    parser.add_argument("--config", type=Path, required=config_required,
                        help="domain configuration file")
    parser.add_argument("--samples", type=int, default=50, metavar="N")
    parser.add_argument("--seed", type=int, default=42, metavar="N")
    parser.add_argument("--truncation", type=int, default=10, metavar="N")
    parser.add_argument("--h", default="1", metavar="LIST",
                        help="comma-separated metric scales")
    parser.add_argument("--target", default="CH",
                        help="{C,CP,CH} optionally suffixed -finite/-infinite")
    parser.add_argument("--out", type=Path, default=None, metavar="PATH")
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hartogs",
        description="curvature checks and immersion decisions for Hartogs domains",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext, needs_config in (
        ("curvature", "sample-point sweep of the curvature identities", True),
        ("check-einstein", "is the canonical metric Einstein?", True),
        ("check-extremal", "is the canonical metric extremal?", True),
        ("immersion", "existence of a Kahler immersion into a space form", True),
        ("diastasis", "resolvability verdicts for all three space forms", True),
        ("report", "full report: curvature, verdicts, diastasis, immersion", True),
        ("fixtures", "run the canned verification suite", False),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p, config_required=needs_config)
    return parser


def _parse_h_list(text: str) -> list[float]:
    values = []
    for part in text.split(","):
        h = float(part)
        if h <= 0:
            raise ValueError("all h values must be positive")
        values.append(h)
    return values


def _run_config(args):
    parsed = parse_config(args.config)
    if args.samples < 1:
        raise ValueError("--samples must be at least 1")
    if args.truncation < 2:
        raise ValueError("--truncation must be at least 2")
    return parsed


def cmd_curvature(args) -> int:
    parsed = _run_config(args)
    pts = sample_points(parsed.spec, args.samples, seed=args.seed, min_margin=0.02)
    rows = reporting.curvature_rows(parsed.spec, pts)
    if args.format == "csv":
        reporting.write_text(reporting.render_csv(rows), args.out)
    else:
        payload = reporting.with_schema(
            {
                "command": "curvature",
                "spec": reporting.spec_summary(parsed.spec),
                "seed": args.seed,
                "rows": rows,
            }
        )
        reporting.write_text(reporting.to_json(payload), args.out)
    return 0


def _check_payload(parsed, args):
    pts = sample_points(
        parsed.spec, max(args.samples, 10), seed=args.seed,
        margin_frac=0.1, min_margin=0.05,
    )
    return verdicts(parsed.spec, pts), pts


def cmd_check_einstein(args) -> int:
    parsed = _run_config(args)
    v, pts = _check_payload(parsed, args)
    payload = reporting.with_schema(
        {
            "command": "check-einstein",
            "spec": reporting.spec_summary(parsed.spec),
            "seed": args.seed,
            "samples": len(pts),
            "is_einstein": v.is_einstein,
            "residual": v.max_einstein_residual,
            "tau": v.tau,
            "tolerance": v.tolerance,
            "rule": "Einstein iff every factor constant equals -(d+1)",
        }
    )
    reporting.write_text(reporting.to_json(payload), args.out)
    return 0 if v.is_einstein else 2


def cmd_check_extremal(args) -> int:
    parsed = _run_config(args)
    v, pts = _check_payload(parsed, args)
    payload = reporting.with_schema(
        {
            "command": "check-extremal",
            "spec": reporting.spec_summary(parsed.spec),
            "seed": args.seed,
            "samples": len(pts),
            "is_extremal": v.is_extremal,
            "residual": v.max_extremal_residual,
            "tau": v.tau,
            "tolerance": v.tolerance,
            "rule": "extremal iff the scalar curvature is constant (tau = 0)",
        }
    )
    reporting.write_text(reporting.to_json(payload), args.out)
    return 0 if v.is_extremal else 2


def cmd_immersion(args) -> int:
    parsed = _run_config(args)
    target = ImmersionTarget.parse(args.target)
    results = []
    all_exist = True
    for h in _parse_h_list(args.h):
        chk = cross_check(
            parsed.spec, target, h=h,
            truncation_degree=args.truncation, facts=parsed.facts,
        )
        v = chk.verdict
        all_exist = all_exist and v.answer is Answer.EXISTS
        results.append(
            {
                "target": v.target.value,
                "h": v.h,
                "answer": v.answer.value,
                "rule": v.rule,
                "provenance": v.provenance,
                "cross_check": {
                    "agreement": chk.agreement,
                    "truncation": chk.truncation_degree,
                    "all_psd": chk.all_psd,
                    "rank_lower_bound": chk.rank_lower_bound,
                    "first_failure": chk.first_failure,
                },
            }
        )
    payload = reporting.with_schema(
        {
            "command": "immersion",
            "spec": reporting.spec_summary(parsed.spec),
            "verdicts": results,
        }
    )
    reporting.write_text(reporting.to_json(payload), args.out)
    return 0 if all_exist else 2


def cmd_diastasis(args) -> int:
    parsed = _run_config(args)
    results = []
    for form in Form:
        for h in _parse_h_list(args.h):
            v = resolvability(
                form, parsed.spec, h=h, truncation_degree=args.truncation
            )
            results.append(reporting.resolvability_payload(v))
    payload = reporting.with_schema(
        {
            "command": "diastasis",
            "spec": reporting.spec_summary(parsed.spec),
            "verdicts": results,
        }
    )
    if args.format == "csv":
        # dump one CSV per block (per form and first h value) next to --out
        if args.out is None:
            raise ValueError("--format csv for diastasis requires --out DIR")
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        h = _parse_h_list(args.h)[0]
        for form in Form:
            for i in range(args.truncation + 1):
                for sigma in range(i, -1, -1):
                    b = block(form, parsed.spec, i, sigma, h=h)
                    name = f"{form.value}_i{i}_sigma{sigma}.csv"
                    reporting.write_text(reporting.block_csv(b), outdir / name)
        reporting.write_text(
            reporting.to_json(payload), outdir / "verdicts.json"
        )
    else:
        reporting.write_text(reporting.to_json(payload), args.out)
    return 0


def cmd_report(args) -> int:
    parsed = _run_config(args)
    spec = parsed.spec
    pts = sample_points(
        spec, max(args.samples, 10), seed=args.seed,
        margin_frac=0.1, min_margin=0.05,
    )
    v = verdicts(spec, pts)
    h_values = _parse_h_list(args.h)
    diastasis = [
        reporting.resolvability_payload(
            resolvability(form, spec, h=h, truncation_degree=args.truncation)
        )
        for form in Form
        for h in h_values
    ]
    immersions = []
    for target in ImmersionTarget:
        for h in h_values:
            verdict = decide(spec, target, h=h, facts=parsed.facts)
            immersions.append(
                {
                    "target": verdict.target.value,
                    "h": verdict.h,
                    "answer": verdict.answer.value,
                    "rule": verdict.rule,
                    "provenance": verdict.provenance,
                }
            )
    payload = reporting.with_schema(
        {
            "command": "report",
            "spec": reporting.spec_summary(spec),
            "seed": args.seed,
            "samples": len(pts),
            "curvature": {
                "is_einstein": v.is_einstein,
                "is_extremal": v.is_extremal,
                "is_constant_scalar": v.is_constant_scalar,
                "einstein_residual": v.max_einstein_residual,
                "extremal_residual": v.max_extremal_residual,
                "tau": v.tau,
                "tolerance": v.tolerance,
            },
            "diastasis": diastasis,
            "immersion": immersions,
            "rows": reporting.curvature_rows(spec, pts[: min(len(pts), 10)]),
        }
    )
    reporting.write_text(reporting.to_json(payload), args.out)
    return 0


def cmd_fixtures(args) -> int:
    summary = run_acceptance(seed=args.seed)
    for c in summary.criteria:
        print(c.line())
    print(f"total wall time {summary.total_elapsed:.1f} s", file=sys.stderr)
    payload = summary.payload()
    reporting.write_text(reporting.to_json(payload), args.out)
    if not summary.all_passed:
        failing = ", ".join(str(c.cid) for c in summary.criteria if not c.passed)
        print(f"failing criteria: {failing}", file=sys.stderr)
        return 2
    return 0


_COMMANDS = {
    "curvature": cmd_curvature,
    "check-einstein": cmd_check_einstein,
    "check-extremal": cmd_check_extremal,
    "immersion": cmd_immersion,
    "diastasis": cmd_diastasis,
    "report": cmd_report,
    "fixtures": cmd_fixtures,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except HartogsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
