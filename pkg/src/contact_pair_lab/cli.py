"""Command-line scenario runner.

Exit codes: 0 all checks passed, 1 at least one check failed,
2 input/usage/schema error.  The optional environment variable
CONTACT_PAIR_LAB_SEED overrides the default probe seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .checks import STAGES, CheckReport, run_checks
from .corpus import (CORPUS_NAMES, Scenario, ScenarioError, corpus_build,
                     load_scenario)
from .contact import ValidationError
from .scalars import ParseError, ScalarError
from .submanifolds import SubframeError


def _default_seed() -> int:
    value = os.environ.get("CONTACT_PAIR_LAB_SEED")
    if value is None:
        return 1
    try:
        return int(value)
    except ValueError:
        raise SystemExit(
            f"CONTACT_PAIR_LAB_SEED must be an integer, got {value!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contact-pair-lab",
        description="Exact verification of metric contact pair scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    corpus = sub.add_parser("corpus", help="built-in scenarios")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True)
    corpus_sub.add_parser("list", help="list built-in scenario names")
    run = corpus_sub.add_parser("run", help="run checks on a scenario")
    run.add_argument("name", nargs="?", default=None,
                     help="scenario name (default: every scenario)")
    run.add_argument("--params", default=None, metavar="H,K",
                     help="type parameters for the darboux scenario")
    _common_flags(run)

    verify = sub.add_parser("verify", help="run checks on a scenario file")
    verify.add_argument("--input", required=True, metavar="FILE")
    _common_flags(verify)

    subm = sub.add_parser("submanifold",
                          help="analyze one named submanifold of a scenario"
                               " file")
    subm.add_argument("--input", required=True, metavar="FILE")
    subm.add_argument("--name", required=True, metavar="SUB")
    subm.add_argument("--theorems", action="store_true",
                      help="include the theorem-level identity checks")
    subm.add_argument("--format", choices=("text", "json"), default="text")
    subm.add_argument("--seed", type=int, default=None)
    return parser


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"),
                        default="text")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--checks", default="all", metavar="LIST",
                        help="comma-separated subset of: "
                             + ", ".join(STAGES) + ", all")


def _parse_checks(text: str) -> List[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    unknown = [item for item in items
               if item != "all" and item not in STAGES]
    if unknown:
        raise ScenarioError(
            f"--checks: unknown selection {', '.join(unknown)}")
    return items or ["all"]


def _emit(report: CheckReport, fmt: str, out) -> int:
    if fmt == "json":
        json.dump(report.to_dict(), out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"scenario: {report.scenario} (seed {report.seed})\n")
        for row in report.rows:
            line = f"  [{row.verdict:>7s}] {row.id}"
            if row.witness:
                line += f"  -- {row.witness}"
            out.write(line + "\n")
        out.write(f"overall: {report.overall}\n")
    return 0 if report.overall == "pass" else 1


def _run_scenarios(scenarios: Sequence[Scenario], selection: List[str],
                   seed: int, fmt: str, out) -> int:
    code = 0
    reports = [run_checks(scenario, selection, seed=seed)
               for scenario in scenarios]
    if fmt == "json" and len(reports) > 1:
        json.dump([r.to_dict() for r in reports], out, indent=2,
                  sort_keys=True)
        out.write("\n")
        return 1 if any(r.overall != "pass" for r in reports) else 0
    for report in reports:
        code = max(code, _emit(report, fmt, out))
    return code


def _cmd_submanifold(args, seed: int, out) -> int:
    from .checks import slugify
    from .contact import (validate_contact_pair, validate_metric,
                          validate_structure)
    from .frames import seeded_probe_points
    from .submanifolds import classify, restrict_structure, shape_data, \
        verify_theorems

    scenario = load_scenario(args.input)
    if args.name not in scenario.submanifolds:
        raise ScenarioError(
            f"submanifolds.{args.name}: not present in {args.input}; "
            f"available: {', '.join(sorted(scenario.submanifolds)) or 'none'}")
    presentation = scenario.presentation()
    probes = seeded_probe_points(presentation, seed=seed)
    alpha1, alpha2 = scenario.forms()
    pair = validate_contact_pair(presentation, alpha1, alpha2,
                                 *scenario.pair_type, probes=probes)
    structure = validate_structure(pair, scenario.phi_endo(), probes=probes,
                                   metric=scenario.metric_field())
    mcp = validate_metric(structure, scenario.metric_field(), probes=probes)
    sub = scenario.subframe(args.name)
    profile = classify(sub, mcp)
    shape = shape_data(sub, mcp.connection)

    def reconcile(rid, ok, witness):
        expected = scenario.expectations.get(
            f"submanifold.{args.name}.{rid}", "pass")
        if expected == "fail":
            if ok:
                return rid, "fail", "expected a failure but the check passed"
            return rid, "pass", ("expected failure confirmed"
                                 + (f": {witness}" if witness else ""))
        return rid, _flag(ok), witness

    rows = [
        ("dimension", "pass", str(profile.dimension)),
        reconcile("invariant-phi", profile.phi_invariant, ""),
        reconcile("invariant-J", profile.j_invariant, ""),
        reconcile("invariant-T", profile.t_invariant, ""),
        reconcile("invariant-rho", profile.rho_invariant, ""),
        ("reeb-position", "pass", profile.reeb_position),
        reconcile("minimal", shape.minimal,
                  "" if shape.minimal else f"H = {shape.mean_curvature}"),
    ]
    findings = restrict_structure(sub, mcp, profile)
    if args.theorems:
        findings = findings + verify_theorems(sub, mcp, profile)
    for finding in findings:
        rows.append(reconcile(slugify(finding.condition), finding.ok,
                              finding.witness))

    report = {
        "scenario": scenario.name, "submanifold": args.name, "seed": seed,
        "checks": [{"id": rid, "verdict": verdict, "witness": witness,
                    "ms": 0.0} for rid, verdict, witness in rows],
    }
    failed = any(verdict == "fail" for _, verdict, _ in rows)
    report["overall"] = "fail" if failed else "pass"
    if args.format == "json":
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"scenario: {scenario.name}, "
                  f"submanifold: {args.name} (seed {seed})\n")
        for rid, verdict, witness in rows:
            line = f"  [{verdict:>7s}] {rid}"
            if witness:
                line += f"  -- {witness}"
            out.write(line + "\n")
        out.write(f"overall: {report['overall']}\n")
    return 0 if report["overall"] == "pass" else 1


def _flag(ok: bool) -> str:
    return "pass" if ok else "fail"


def main(argv: Optional[Sequence[str]] = None,
         out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _default_seed()

    try:
        if args.command == "corpus":
            if args.corpus_command == "list":
                for name in CORPUS_NAMES:
                    out.write(name + "\n")
                return 0
            selection = _parse_checks(args.checks)
            params = None
            if args.params is not None:
                try:
                    h, k = (int(x) for x in args.params.split(","))
                except ValueError:
                    raise ScenarioError("--params: expected H,K integers")
                params = (h, k)
            if args.name is None:
                scenarios = [corpus_build(name) for name in CORPUS_NAMES]
            else:
                scenarios = [corpus_build(args.name, params)]
            return _run_scenarios(scenarios, selection, seed,
                                  args.format, out)
        if args.command == "verify":
            selection = _parse_checks(args.checks)
            scenario = load_scenario(args.input)
            return _run_scenarios([scenario], selection, seed,
                                  args.format, out)
        if args.command == "submanifold":
            return _cmd_submanifold(args, seed, out)
    except (ScenarioError, ParseError, ScalarError, OSError,
            ValidationError, SubframeError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
