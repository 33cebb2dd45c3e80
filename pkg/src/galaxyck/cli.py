"""Command-line front end: run the checks, emit deterministic reports.

Exit codes: 0 when the requested check passes, 1 when it fails, 2 on usage
or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from .emailgame import (
    CutoffStrategy,
    PayoffParams,
    best_response_check,
    check_ast_possibility,
    check_classical_impossibility,
    check_monotone_ck,
    state_b,
)
from .epistemic import ModelFormatError, ck_classical, ck_subjective, meet, model_from_dict
from .hypernat import finite, parse_hypernat
from .reports import CheckReport, jsonable
from .sorites import chain_relation

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad inputs; reported on stderr with exit code 2."""


def _hyper(text: str):
    try:
        return parse_hypernat(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _split_csv(text: str) -> list:
    return [token.strip() for token in text.split(",") if token.strip()]


def _hyper_list(text: str) -> list:
    values = [_hyper(token) for token in _split_csv(text)]
    if not values:
        raise UsageError("expected a comma-separated list of values")
    return values


def _int_samples(text: str) -> list:
    """Either a comma list ("0,1,2") or an inclusive range ("0..10")."""
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        if lo > hi:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(token) for token in _split_csv(text)]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def cmd_model_check(args) -> tuple:
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"{args.file}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from None
    try:
        model, events = model_from_dict(payload)
    except ModelFormatError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    if args.event not in events:
        raise UsageError(f"unknown event {args.event!r}; file defines {sorted(events)}")
    if args.state not in model.states:
        raise UsageError(f"unknown state {args.state!r}")
    event = events[args.event]
    if args.mode == "classical":
        verdict = ck_classical(model, event, args.state)
    else:
        verdict = ck_subjective(model, event, args.state)
    report = CheckReport(
        "model-check",
        {"file": args.file, "event": args.event, "state": args.state, "mode": args.mode},
    )
    report.add(
        {"event": args.event, "state": args.state, "mode": args.mode},
        "common knowledge",
        "common knowledge" if verdict else "not common knowledge",
        verdict,
    )
    extras = {"meet": [sorted(block) for block in meet(model)]}
    return report, extras


def cmd_email_impossibility(args) -> tuple:
    if args.truncation < 1:
        raise UsageError("--T must be >= 1")
    return check_classical_impossibility(args.truncation), None


def cmd_email_ast_ck(args) -> tuple:
    t = _hyper(args.t)
    if t < finite(1):
        raise UsageError("--t must be >= 1 (the state checked is (b,t,t))")
    state = state_b(t)
    verdict = check_ast_possibility(state)
    report = CheckReport("ast-ck", {"t": str(t)})
    report.add(
        {"state": str(state)},
        "B is common knowledge",
        "common knowledge" if verdict else "not common knowledge",
        verdict,
    )
    return report, None


def cmd_email_monotone(args) -> tuple:
    return check_monotone_ck(_hyper_list(args.samples)), None


def cmd_email_equilibrium(args) -> tuple:
    try:
        params = PayoffParams(args.M, args.L, args.p, args.eps)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"bad payoff parameters: {exc}") from None
    finite_samples = _int_samples(args.finite_samples)
    huge_samples = _hyper_list(args.huge_samples)
    cutoff = CutoffStrategy.play_a_while_finite()
    try:
        report = best_response_check((cutoff, cutoff), params, finite_samples, huge_samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return report, None


def cmd_sorites_demo(args) -> tuple:
    alpha = _hyper(args.alpha)
    probes = _hyper_list(args.probes)
    rel = chain_relation()
    start = finite(1)
    report = CheckReport(
        "sorites-demo",
        {"alpha": str(alpha), "probes": [str(p) for p in probes]},
    )
    for index in [alpha] + probes:
        verdict = rel.related(start, index)
        expected = index.is_finite  # walking from index 1, only finite indices stay inside
        report.add(
            {"index": str(index)},
            "related" if expected else "unrelated",
            "related" if verdict else "unrelated",
            verdict == expected,
        )
    return report, None


def _add_format(parser) -> None:
    parser.add_argument(
        "--format", choices=("json", "text"), default="json", help="report output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galaxyck",
        description="Common-knowledge checks on partition models, chains and the e-mail game.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    model = commands.add_parser("model", help="operations on JSON partition models")
    model_sub = model.add_subparsers(dest="subcommand", required=True)
    check = model_sub.add_parser("check", help="common-knowledge verdict on a model file")
    check.add_argument("--file", required=True, help="JSON model document")
    check.add_argument("--event", required=True, help="event name from the file")
    check.add_argument("--state", required=True, help="state at which to test")
    check.add_argument("--mode", choices=("classical", "subjective"), default="classical")
    _add_format(check)
    check.set_defaults(handler=cmd_model_check)

    email = commands.add_parser("emailgame", help="electronic-mail game checks")
    email_sub = email.add_subparsers(dest="subcommand", required=True)

    imp = email_sub.add_parser("impossibility", help="B is nowhere classical common knowledge")
    imp.add_argument("--T", dest="truncation", type=int, default=50, help="truncation bound")
    _add_format(imp)
    imp.set_defaults(handler=cmd_email_impossibility)

    ast = email_sub.add_parser("ast-ck", help="galaxy common knowledge of B at (b,t,t)")
    ast.add_argument("--t", required=True, help="message count, e.g. 3 or w+0")
    _add_format(ast)
    ast.set_defaults(handler=cmd_email_ast_ck)

    mono = email_sub.add_parser("monotone", help="one-step persistence of the verdict")
    mono.add_argument("--samples", required=True, help="comma list of counts, e.g. 0,4,w+0")
    _add_format(mono)
    mono.set_defaults(handler=cmd_email_monotone)

    eq = email_sub.add_parser("equilibrium", help="best-response audit of the cutoff strategies")
    eq.add_argument("--M", default="2", help="coordination reward (rational)")
    eq.add_argument("--L", default="3", help="mismatch penalty (rational)")
    eq.add_argument("--p", default="1/2", help="probability of game b")
    eq.add_argument("--eps", default="1/10", help="per-message loss probability")
    eq.add_argument("--finite-samples", default="0..10", help="own counts, range or comma list")
    eq.add_argument("--huge-samples", default="w-2,w+0,w+5", help="huge own counts, comma list")
    _add_format(eq)
    eq.set_defaults(handler=cmd_email_equilibrium)

    sor = commands.add_parser("sorites", help="chain walk demonstrations")
    sor_sub = sor.add_subparsers(dest="subcommand", required=True)
    demo = sor_sub.add_parser("demo", help="relatedness of chain start vs probe indices")
    demo.add_argument("--alpha", default="w+0", help="chain end index")
    demo.add_argument("--probes", default="10,1000000,w+0,w-5", help="comma list of indices")
    _add_format(demo)
    demo.set_defaults(handler=cmd_sorites_demo)

    return parser


def main(argv: Optional[list] = None) -> int:
    seed = os.environ.get("SORITES_SEED")
    if seed is not None:
        try:
            random.seed(int(seed))
        except ValueError:
            print("error: SORITES_SEED must be an integer", file=sys.stderr)
            return EXIT_USAGE
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, extras = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        payload = report.to_dict()
        if extras:
            payload.update(jsonable(extras))
        print(json.dumps(payload, indent=2))
    else:
        print(report.to_text())
        if extras and "meet" in extras:
            print("meet:")
            for block in extras["meet"]:
                print("  " + ", ".join(block))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
