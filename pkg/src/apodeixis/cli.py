"""Command-line entry point.

Subcommands:

  eval            evaluate statements against a model file
  check           search one mood/pattern for countermodels
  verify-catalog  re-check the whole verdict table at given bounds
  fixtures        emit the five countermodels and confirm their roles
  properties      run the exhaustive property suites

Exit codes: 0 claim confirmed, 1 claim refuted or divergence or property
violation, 2 usage or parse error (including oversized bounds), 3 internal
invariant failure (a fixture or re-verification defect).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, search, semantics, suites
from .dsl import (
    ModelFormatError,
    ParseError,
    decode_model,
    encode_model,
    parse_mood,
    parse_statement,
    print_statement,
)
from .model_core import (
    DEFAULT_MAX_MODELS,
    POLICIES,
    BoundsTooLarge,
    EnumerationBounds,
    bounds,
    model_at_rank,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


def _parse_bounds(text: str) -> EnumerationBounds:
    parts = text.split(",")
    policy = "AllSubsetsOfFunctions"
    if parts and parts[-1] and not parts[-1].lstrip("-").isdigit():
        policy = parts.pop()
        if policy not in POLICIES:
            raise UsageError(
                f"unknown policy {policy!r}; expected one of {', '.join(POLICIES)}"
            )
    try:
        sizes = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"malformed bounds {text!r}; expected W0,W1[,policy]") from None
    if not sizes or any(s < 1 for s in sizes):
        raise UsageError(f"world sizes must be positive integers, got {text!r}")
    return bounds(sizes, policy=policy)


def _default_threads() -> int:
    raw = os.environ.get("APODEIXIS_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"APODEIXIS_THREADS={raw!r} is not an integer") from None
    if value < 1:
        raise UsageError("APODEIXIS_THREADS must be at least 1")
    return value


def _bounds_line(b: EnumerationBounds) -> str:
    sizes = ",".join(str(s) for s in b.world_sizes)
    names = ",".join(b.concept_names)
    return (
        f"bounds: t_count={b.t_count} world_sizes=[{sizes}] "
        f"concepts=[{names}] policy={b.individual_policy}"
    )


def _model_json(model) -> str:
    return json.dumps(search.model_dict(model), sort_keys=True)


def _span_caret(text: str, err: ParseError) -> str:
    raw = text.encode()
    prefix = raw[: err.span.begin].decode(errors="replace")
    width = max(1, err.span.end - err.span.begin)
    return text + "\n" + " " * len(prefix) + "^" * width


# --- eval -------------------------------------------------------------------


def cmd_eval(args) -> int:
    try:
        with open(args.model, "rb") as fh:
            model = decode_model(fh.read())
    except OSError as exc:
        print(f"error: cannot read model file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelFormatError as exc:
        print(f"error: {args.model}: {exc} (at {exc.path})", file=sys.stderr)
        return EXIT_USAGE
    lines = []
    for text in args.statements:
        try:
            stmt = parse_statement(text)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            print(_span_caret(text, exc), file=sys.stderr)
            return EXIT_USAGE
        for term in (stmt.subject, stmt.predicate):
            if term.base not in model.concepts:
                print(
                    f"error: statement {text!r} mentions concept "
                    f"{term.base!r} absent from the model",
                    file=sys.stderr,
                )
                return EXIT_USAGE
        value = semantics.holds(model, stmt)
        lines.append(f"{print_statement(stmt)}\t{'true' if value else 'false'}")
    print("\n".join(lines))
    return EXIT_OK


# --- check ------------------------------------------------------------------


def _print_report(report: search.CheckReport, inf: catalog.Inference):
    print(f"inference: {inf.label}")
    print("  premises: " + "; ".join(print_statement(p) for p in inf.premises))
    if inf.side_conditions:
        conds = "; ".join(f"NonEmpty({c})" for c in inf.side_conditions)
        print(f"  side conditions: {conds}")
    print(f"  conclusion: {print_statement(inf.conclusion)}")
    print(_bounds_line(report.bounds))
    print(f"models checked: {report.models_checked}")
    print(f"outcome: {report.outcome}")
    if report.countermodel is not None and report.outcome == search.COUNTERMODEL_FOUND:
        print(f"countermodel (canonical rank {report.models_checked - 1}):")
        print("  " + _model_json(report.countermodel))


def cmd_check(args) -> int:
    mood, pattern = parse_mood(args.mood_pattern)
    try:
        inf = catalog.instantiate(mood, pattern)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    report = search.verify_up_to(
        inf, args.bounds, threads=args.threads, max_models=args.max_models
    )
    entry = catalog.find_entry(mood, pattern)
    if args.json:
        payload = report.to_dict()
        if entry is not None:
            payload["catalog"] = catalog.entry_json(
                entry,
                "Valid" if report.outcome == search.NO_COUNTERMODEL else "Invalid",
            )
        print(json.dumps(payload, indent=2))
    else:
        _print_report(report, inf)
    if entry is None:
        if not args.json:
            print("catalog: entry not cataloged; reporting engine outcome only")
        return EXIT_OK
    engine_result = "Valid" if report.outcome == search.NO_COUNTERMODEL else "Invalid"
    agrees = engine_result == entry.engine
    if not args.json:
        tail = "engine agrees" if agrees else f"engine found {engine_result}"
        print(f"verdict: {entry.verdict} ({tail})")
        if entry.partial_conclusion:
            print(f"note: {entry.partial_conclusion}")
    return EXIT_OK if agrees else EXIT_REFUTED


# --- verify-catalog ----------------------------------------------------------


def cmd_verify_catalog(args) -> int:
    try:
        run = search.run_catalog(
            args.bounds, scope=args.scope, threads=args.threads, max_models=args.max_models
        )
    except search.SearchInvariantError as exc:
        print(f"catalog defect: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    verify_reports = [r for r in run.reports if r.outcome != search.FIXTURE_CONFIRMED]
    rows = []
    for entry_dict, report in zip(run.entry_results, verify_reports):
        witness = ""
        if report.outcome == search.COUNTERMODEL_FOUND:
            witness = f"countermodel rank {report.models_checked - 1}"
            if entry_dict["fixture"]:
                witness += f", fixture {entry_dict['fixture']}"
        rows.append(
            (
                entry_dict["mood"],
                entry_dict["pattern"],
                entry_dict["verdict"],
                report.outcome,
                witness,
            )
        )
    widths = [max(len(row[i]) for row in rows + [("mood", "pattern", "verdict", "outcome", "witness")]) for i in range(5)]
    header = ("mood", "pattern", "verdict", "outcome", "witness")
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    outcomes: dict[str, int] = {}
    for report in run.reports:
        outcomes[report.outcome] = outcomes.get(report.outcome, 0) + 1
    print(
        "summary: "
        + ", ".join(f"{k}={v}" for k, v in sorted(outcomes.items()))
        + f", divergences={len(run.divergences)}"
    )
    for d in run.divergences:
        print(f"divergence: {d}")
    if args.json:
        data = run.to_json_bytes()
        if args.json == "-":
            sys.stdout.buffer.write(data)
        else:
            with open(args.json, "wb") as fh:
                fh.write(data)
    return EXIT_OK if not run.divergences else EXIT_REFUTED


# --- fixtures ----------------------------------------------------------------


def _label_map_line(fx: catalog.Fixture) -> str:
    by_t: dict[int, list[str]] = {}
    for (t, w), label in sorted(fx.labels.items()):
        by_t.setdefault(t, []).append(f"{w}->{label}")
    return "; ".join(f"t{t}: " + " ".join(items) for t, items in sorted(by_t.items()))


def cmd_fixtures(args) -> int:
    names = catalog.FIXTURE_NAMES if args.all else (args.name,)
    if not args.all and args.name not in catalog.FIXTURE_NAMES:
        print(
            f"error: unknown fixture {args.name!r}; known: "
            + ", ".join(catalog.FIXTURE_NAMES),
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    status = EXIT_OK
    for name in names:
        fx = catalog.fixture(name)
        print(f"fixture {name}: {fx.note}")
        print(f"  labels: {_label_map_line(fx)}")
        print(f"  model: {_model_json(fx.model)}")
        reports = []
        for entry in catalog.verdict_table():
            if entry.fixture != name:
                continue
            try:
                report = search.confirm_fixture(entry)
            except search.SearchInvariantError as exc:
                print(f"  FAILED {entry.label}: {exc}", file=sys.stderr)
                status = EXIT_INTERNAL
                continue
            mapped = " (letter map applied)" if entry.letter_map else ""
            print(f"  confirms refutation of {entry.label}{mapped}")
            payload = report.to_dict()
            payload["entry"] = catalog.entry_json(entry, "Invalid")
            reports.append(payload)
        if args.out:
            path = os.path.join(args.out, f"{name}.json")
            with open(path, "wb") as fh:
                fh.write(encode_model(fx.model))
            report_path = os.path.join(args.out, f"{name}.report.json")
            with open(report_path, "w") as fh:
                json.dump({"fixture": name, "reports": reports}, fh, indent=2)
                fh.write("\n")
            print(f"  wrote {path} and {report_path}")
    return status


# --- properties ---------------------------------------------------------------


def cmd_properties(args) -> int:
    names = suites.SUITE_NAMES if args.suite == "all" else (args.suite,)
    status = EXIT_OK
    for name in names:
        result = suites.run_suite(name, args.bounds, max_models=args.max_models)
        state = "pass" if result.passed else "FAIL"
        print(
            f"suite {name}: {state} "
            f"({result.models} models, {result.checks} checks)"
        )
        for violation in result.violations:
            print(f"  violation: {violation}")
        if result.violations:
            rank = int(result.violations[0].split()[1].rstrip(":"))
            print("  violating model: " + _model_json(model_at_rank(args.bounds, rank)))
        for missing in result.missing_witnesses:
            print(f"  missing witness: {missing}")
        for w in result.witnesses:
            detail = f" ({w.detail})" if w.detail else ""
            print(f"  witness {w.name}: rank {w.rank}{detail}")
            print(f"    model: {_model_json(w.model)}")
        if not result.passed:
            status = EXIT_REFUTED
    return status


# --- argument wiring -----------------------------------------------------------


def _add_bounds_options(sub, with_threads: bool = True):
    sub.add_argument(
        "--bounds",
        default="2,2",
        metavar="W0,W1[,policy]",
        help="world sizes per parameter and optional individual policy "
        "(default 2,2 with AllSubsetsOfFunctions)",
    )
    if with_threads:
        sub.add_argument(
            "--threads",
            type=int,
            default=None,
            metavar="N",
            help="worker threads (default: APODEIXIS_THREADS or 1)",
        )
    sub.add_argument(
        "--max-models",
        type=int,
        default=DEFAULT_MAX_MODELS,
        metavar="N",
        help="abort if the bounds enumerate more than N models (default 10^8)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apodeixis",
        description="Model checking for the necessity and contingency syllogistic "
        "over finite two-parameter models.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate statements against a model file")
    p_eval.add_argument("--model", required=True, metavar="FILE")
    p_eval.add_argument("statements", nargs="+", metavar="STATEMENT")
    p_eval.set_defaults(fn=cmd_eval)

    p_check = subs.add_parser("check", help="countermodel search for one mood/pattern")
    p_check.add_argument("mood_pattern", metavar="'MOOD PATTERN'")
    _add_bounds_options(p_check)
    p_check.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_check.set_defaults(fn=cmd_check)

    p_cat = subs.add_parser("verify-catalog", help="re-check the verdict table")
    p_cat.add_argument(
        "--scope", choices=("nnn", "mixed", "contingency", "all"), default="all"
    )
    _add_bounds_options(p_cat)
    p_cat.add_argument(
        "--json", metavar="PATH", help="also write the full run as JSON ('-' = stdout)"
    )
    p_cat.set_defaults(fn=cmd_verify_catalog)

    p_fix = subs.add_parser("fixtures", help="emit and confirm the countermodels")
    group = p_fix.add_mutually_exclusive_group(required=True)
    group.add_argument("--name", metavar="NAME")
    group.add_argument("--all", action="store_true")
    p_fix.add_argument("--out", metavar="DIR", help="write model and report files here")
    p_fix.set_defaults(fn=cmd_fixtures)

    p_prop = subs.add_parser("properties", help="run the exhaustive property suites")
    p_prop.add_argument(
        "--suite",
        choices=suites.SUITE_NAMES + ("all",),
        default="all",
    )
    _add_bounds_options(p_prop, with_threads=False)
    p_prop.set_defaults(fn=cmd_properties)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "bounds"):
            args.bounds = _parse_bounds(args.bounds)
        if hasattr(args, "threads") and args.threads is None:
            args.threads = _default_threads()
        if hasattr(args, "threads") and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundsTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except search.SearchInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
