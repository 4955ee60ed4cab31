"""Command-line front end.

Exit codes: 0 for success, true, valid, equivalent or accepted; 1 for false,
a witness or a rejection; 2 for usage errors, unreadable input and exceeded
budgets.  With ``--json`` stdout carries exactly one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .formula import EMPTY_SIGNATURE, Signature
from .oracle import DEFAULT_CEILING, SearchBudget, entails, equiv, valid
from .semantics import LAX, MODES, eval_team, load_context, signature_of
from .syntax import parse, parse_with_header, render

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
DEFAULT_SYSTEMS = ("L", "S", "M", "Q", "X")


class UsageError(ValueError):
    """Bad flags or arguments, detected before any work starts."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False)


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _signature(args) -> Optional[Signature]:
    if getattr(args, "signature", None):
        return Signature.from_json(_read_json(args.signature))
    return None


def _formula(text: str, sig: Optional[Signature] = None):
    if sig is not None:
        return parse(text, sig)
    if text.lstrip().startswith("{"):
        return parse_with_header(text)[0]
    return parse(text)


def _budget(args, sig: Optional[Signature] = None) -> SearchBudget:
    return SearchBudget(
        max_props=args.props,
        max_worlds=args.worlds,
        max_domain=args.domain,
        max_team_size=args.max_team_size,
        mode=args.mode,
        ceiling=args.ceiling,
        signature=sig if sig is not None and sig.is_first_order else None,
    )


def _signature_json(sig: Signature) -> dict:
    return {
        "relations": dict(sig.relations),
        "functions": dict(sig.functions),
        "constants": list(sig.constants),
        "props": list(sig.props),
    }


# -- commands ---------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    if not args.team:
        raise UsageError("eval needs a model file (--team FILE)")
    ctx = load_context(_read_json(args.team))
    sig = _signature(args) or signature_of(ctx)
    value = eval_team(ctx, _formula(args.formula, sig if sig.is_first_order else None), args.mode)
    out(_dump({"value": value, "mode": args.mode}) if args.json else ("true" if value else "false"))
    return EXIT_OK if value else EXIT_NO


def _verdict(args, verdict, word: str, out) -> int:
    data = verdict.to_json()
    if args.json:
        out(_dump(data))
    else:
        out(word if verdict.holds else f"not {word}")
        out(_dump(data))
    return EXIT_OK if verdict.holds else EXIT_NO


def cmd_equiv(args, out) -> int:
    sig = _signature(args)
    b = _budget(args, sig)
    return _verdict(args, equiv(_formula(args.left, sig), _formula(args.right, sig), b), "equivalent", out)


def cmd_valid(args, out) -> int:
    sig = _signature(args)
    return _verdict(args, valid(_formula(args.formula, sig), _budget(args, sig)), "valid", out)


def cmd_eliminate(args, out) -> int:
    from .elimination import to_boolean_closure

    sig = _signature(args)
    f = _formula(args.formula, sig)
    result = to_boolean_closure(
        f,
        args.mode,
        max_nodes=args.max_nodes,
        spot_check=not args.no_spot_check,
        budget=_budget(args, sig) if sig is not None and sig.is_first_order else None,
    )
    trace = [step.to_json() for step in result.trace]
    if args.json:
        data = {"fragment": result.fragment}
        if args.emit in ("formula", "both"):
            data["output"] = render(result.output)
        if args.emit in ("trace", "both"):
            data["trace"] = trace
        out(_dump(data))
        return EXIT_OK
    if args.emit in ("formula", "both"):
        out(render(result.output))
    if args.emit in ("trace", "both"):
        out(_dump(trace))
    return EXIT_OK


def cmd_splus(args, out) -> int:
    from .elimination import to_splus

    g = to_splus(_formula(args.formula, _signature(args)))
    out(_dump({"output": render(g)}) if args.json else render(g))
    return EXIT_OK


def cmd_check(args, out) -> int:
    from .calculus import check_proof

    report = check_proof(_read_json(args.script))
    if args.json:
        out(_dump(report.to_json()))
    else:
        status = "accepted" if report.accepted else "rejected"
        out(f"{status}: {report.name}" + ("" if report.accepted else f": {report.reason}"))
        for step in report.steps:
            mark = "ok" if step.ok else "FAIL"
            flag = " [theorem]" if step.theorem else ""
            out(f"  {step.id:>6} {mark:<4} {step.formula}{flag}")
    return EXIT_OK if report.accepted else EXIT_NO


def cmd_corpus(args, out) -> int:
    from .calculus import check_corpus, mutation_suite

    reports = check_corpus()
    rejected = [r for r in reports if not r.accepted]
    data = {"scripts": len(reports), "rejected": [{"name": r.name, "reason": r.reason} for r in rejected]}
    lines = [f"{len(reports)} scripts, " + ("all accepted" if not rejected else f"{len(rejected)} rejected")]
    lines += [f"  rejected {r.name}: {r.reason}" for r in rejected]
    escaped = []
    if args.mutations:
        suite = mutation_suite()
        escaped = [m for m, report in suite if report.accepted]
        data["mutations"] = len(suite)
        data["accepted_mutations"] = [{"script": m.script, "kind": m.kind, "step": m.step} for m in escaped]
        lines.append(f"{len(suite)} mutations, " + ("all rejected" if not escaped else f"{len(escaped)} accepted"))
        lines += [f"  accepted {m.script} {m.kind} at {m.step}: {m.description}" for m in escaped]
    if args.json:
        out(_dump(data))
    else:
        for line in lines:
            out(line)
    return EXIT_OK if not rejected and not escaped else EXIT_NO


def cmd_soundness(args, out) -> int:
    from .calculus import soundness_fuzz

    b = SearchBudget(mode=args.mode, ceiling=args.ceiling)
    reports = [
        soundness_fuzz(name, b, args.samples, args.seed, depth=args.depth, schemas=args.schema or None)
        for name in (args.system or DEFAULT_SYSTEMS)
    ]
    failures = sum(r.failures for r in reports)
    if args.json:
        out(_dump({"mode": args.mode, "seed": args.seed, "failures": failures, "systems": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            checked = sum(s.checked for s in r.results)
            out(f"{r.system}: {r.failures} failures in {checked} instances ({args.mode})")
            for s in r.results:
                for c in s.failures[:1]:
                    out(f"  {s.name}: {c.formula}")
                    out(f"    instantiation {_dump(c.instantiation)}")
                    out(f"    witness {_dump(c.witness)}")
    return EXIT_OK if failures == 0 else EXIT_NO


def cmd_translate_fo(args, out) -> int:
    from .elimination import first_order_translation

    sig = _signature(args) or EMPTY_SIGNATURE
    formulas = [_formula(text, sig) for text in args.formulas]
    sentences, extended = first_order_translation(formulas, sig if sig.is_first_order else None, auto_rename=args.auto_rename)
    rendered = [render(s) for s in sentences]
    if args.json:
        out(_dump({"sentences": rendered, "signature": _signature_json(extended)}))
    else:
        for line in rendered:
            out(line)
    return EXIT_OK


def cmd_interpolate(args, out) -> int:
    from .elimination import sentence_interpolant

    sig = _signature(args) or EMPTY_SIGNATURE
    parse_sig = sig if sig.is_first_order else None
    delta = [_formula(text, parse_sig) for text in args.delta]
    alpha = _formula(args.alpha, parse_sig)
    eps = sentence_interpolant(delta, alpha)
    data = {"interpolant": render(eps)}
    code = EXIT_OK
    if args.check:
        b = _budget(args, sig)
        data["checks"] = {
            "delta_entails_alpha": entails(delta, alpha, b).holds,
            "delta_entails_interpolant": entails(delta, eps, b).holds,
            "interpolant_entails_alpha": entails([eps], alpha, b).holds,
        }
        if data["checks"]["delta_entails_alpha"] and not all(data["checks"].values()):
            code = EXIT_NO
    if args.json:
        out(_dump(data))
    else:
        out(data["interpolant"])
        for name, holds in data.get("checks", {}).items():
            out(f"  {name}: {'yes' if holds else 'no'}")
    return code


# -- argument parsing ------------------------------------------------------------------


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--json", action="store_true", help="print one JSON document on stdout")
    shared.add_argument("--mode", choices=MODES, default=LAX, help="team semantics (default lax)")
    shared.add_argument("--props", type=_non_negative, default=2, help="largest number of propositions searched")
    shared.add_argument("--worlds", type=_non_negative, default=2, help="largest Kripke frame searched")
    shared.add_argument("--domain", type=_non_negative, default=2, help="largest first-order domain searched")
    shared.add_argument("--max-team-size", type=_non_negative, default=None)
    shared.add_argument("--ceiling", type=_non_negative, default=DEFAULT_CEILING, help="abort searches above this many contexts")
    shared.add_argument("--signature", metavar="FILE", help="JSON signature file for first-order input")
    shared.add_argument("--seed", type=int, default=0, help="seed for randomised commands (default 0)")

    parser = _Parser(prog="teamlogic", description="Team logic toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[shared], help="evaluate a formula on a model file")
    p.add_argument("formula")
    p.add_argument("--team", "--model", dest="team", metavar="FILE", help="model file (props, Kripke or first-order)")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("equiv", parents=[shared], help="exhaustive equivalence check")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("valid", parents=[shared], help="exhaustive validity check")
    p.add_argument("formula")
    p.set_defaults(run=cmd_valid)

    p = sub.add_parser("eliminate", parents=[shared], help="translate into the Boolean closure of the flat base")
    p.add_argument("formula")
    p.add_argument("--emit", choices=("formula", "trace", "both"), default="formula")
    p.add_argument("--max-nodes", type=_positive, default=10**6)
    p.add_argument("--no-spot-check", action="store_true", help="skip the per-step equivalence checks")
    p.set_defaults(run=cmd_eliminate)

    p = sub.add_parser("splus", parents=[shared], help="negation-free form over NE, ⊼, ⊻ and ⊗")
    p.add_argument("formula")
    p.set_defaults(run=cmd_splus)

    p = sub.add_parser("check", parents=[shared], help="check a proof script")
    p.add_argument("script", metavar="FILE")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("corpus", parents=[shared], help="check every bundled derivation")
    p.add_argument("--mutations", action="store_true", help="also check that every single-step mutation is rejected")
    p.set_defaults(run=cmd_corpus)

    p = sub.add_parser("soundness", parents=[shared], help="randomised axiom soundness check")
    p.add_argument("--system", action="append", help="system to fuzz (repeatable; default L S M Q X)")
    p.add_argument("--schema", action="append", help="restrict to the named schema (repeatable)")
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--depth", type=_positive, default=3)
    p.set_defaults(run=cmd_soundness)

    p = sub.add_parser("translate-fo", parents=[shared], help="first-order translation of FO and ~FO formulas")
    p.add_argument("formulas", nargs="+")
    p.add_argument("--auto-rename", action="store_true", help="rename bound variables that clash with free ones")
    p.set_defaults(run=cmd_translate_fo)

    p = sub.add_parser("interpolate", parents=[shared], help="sentence interpolant of ~FO premises and an FO formula")
    p.add_argument("alpha")
    p.add_argument("--delta", action="append", default=[], help="strongly negated premise (repeatable)")
    p.add_argument("--check", action="store_true", help="verify the entailments by exhaustive search")
    p.set_defaults(run=cmd_interpolate)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv

    def out(line: str):
        print(line, file=stdout)

    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except (ValueError, OSError, RecursionError) as exc:
        kind = "usage error" if isinstance(exc, UsageError) else "error"
        message = str(exc) or type(exc).__name__
        if want_json:
            out(_dump({"error": message, "kind": kind}))
        print(f"teamlogic: {kind}: {message}", file=stderr)
        return EXIT_ERROR


def main(argv=None) -> int:
    try:
        code = run(argv)
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    sys.exit(code)


__all__ = ["build_parser", "main", "run"]
