"""Command-line entry points: check, print, validate, fuzz-soundness, corpus, serve.

Exit codes: 0 success / accepted / valid; 1 rejected / countermodel found;
2 unreadable or malformed input file; 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import corpus as corpus_mod
from .formats import (
    DecodeError,
    ParseError,
    load_formula_file,
    load_proof_file,
    print_formula,
    render_ok_listing,
    render_tree,
)
from .fuzz import fuzz_soundness
from .kernel import check
from .semantics import Interpretation, valid_up_to

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_USAGE = 64


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _load_proof(path: str):
    try:
        return load_proof_file(path)
    except (OSError, json.JSONDecodeError, DecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return None


def _countermodel_lines(m: Interpretation) -> list[str]:
    lines = [f"countermodel found (universe size {m.universe_size})"]
    lines.append(f"  env = {list(m.env)} (default {m.env_default})")
    for (name, arity), table in sorted(m.funcs.items()):
        lines.append(f'  fun  "{name}"/{arity} -> {list(table)}')
    for (name, arity), table in sorted(m.preds.items()):
        lines.append(f'  pred "{name}"/{arity} -> {[int(v) for v in table]}')
    return lines


def _cmd_check(args: argparse.Namespace) -> int:
    proof = _load_proof(args.file)
    if proof is None:
        return EXIT_BAD_INPUT
    report = check(proof)
    if report.accepted:
        print("accepted")
        return EXIT_OK
    print(f"rejected at path {list(report.failure_path)}: "
          f"{report.failure_code}: {report.failure_message}")
    return EXIT_FAIL


def _cmd_print(args: argparse.Namespace) -> int:
    proof = _load_proof(args.file)
    if proof is None:
        return EXIT_BAD_INPUT
    renderer = render_ok_listing if args.format == "ok" else render_tree
    print(renderer(proof))
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        formula = load_formula_file(args.file)
    except (OSError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BAD_INPUT
    verdict = valid_up_to(formula, args.max_size, args.budget, args.seed)
    if verdict.valid:
        mode = "exhaustive" if verdict.exhaustive else "sampled"
        print(f"valid up to {verdict.bound} ({mode}); "
              f"{verdict.checked} interpretations checked, seed {verdict.seed}")
        return EXIT_OK
    for line in _countermodel_lines(verdict.countermodel):
        print(line)
    return EXIT_FAIL


def _cmd_fuzz(args: argparse.Namespace) -> int:
    report = fuzz_soundness(args.count, args.max_size, args.seed, args.budget)
    print(report.summary())
    print(f"elapsed: {report.elapsed:.1f}s", file=sys.stderr)
    if not report.sound:
        print("SOUNDNESS VIOLATION: an accepted proof admitted a countermodel",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    entries = (
        corpus_mod.load_corpus_dir(args.dir) if args.dir else corpus_mod.corpus()
    )
    failures = 0
    for entry in entries:
        marker = "proof" if entry.has_proof else "goal only"
        print(f"{entry.name:<28} [{marker}]  {print_formula(entry.goal)}")
        if not args.run_all:
            continue
        if entry.proof is not None:
            report = check(entry.proof)
            if report.accepted:
                print("    check: accepted")
            else:
                failures += 1
                print(f"    check: REJECTED at {list(report.failure_path)} "
                      f"({report.failure_code})")
            verdict = valid_up_to(entry.goal, args.max_size, args.budget)
            if verdict.valid:
                mode = "exhaustive" if verdict.exhaustive else "sampled"
                print(f"    validate: no countermodel up to {verdict.bound} ({mode})")
            else:
                failures += 1
                print("    validate: COUNTERMODEL FOUND")
    if args.run_all and failures:
        print(f"{failures} failure(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import ServiceConfig, serve

    config = ServiceConfig.from_env()
    if args.port is not None:
        config.port = args.port
    if args.persist is not None:
        config.persist_dir = Path(args.persist)
    if args.corpus_dir is not None:
        config.corpus_dir = Path(args.corpus_dir)
    if args.static_dir is not None:
        config.static_dir = Path(args.static_dir)
    if args.budget_cap is not None:
        config.budget_cap = args.budget_cap
    serve(config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="natded", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check a .ndproof document")
    p_check.add_argument("file")
    p_check.set_defaults(func=_cmd_check)

    p_print = sub.add_parser("print", help="render a .ndproof document")
    p_print.add_argument("file")
    p_print.add_argument("--format", choices=("ok", "tree"), default="ok")
    p_print.set_defaults(func=_cmd_print)

    p_validate = sub.add_parser("validate", help="model-check a .fol formula")
    p_validate.add_argument("file")
    p_validate.add_argument("--max-size", type=_positive, default=3)
    p_validate.add_argument("--budget", type=_positive, default=10_000)
    p_validate.add_argument("--seed", type=int, default=0)
    p_validate.set_defaults(func=_cmd_validate)

    p_fuzz = sub.add_parser(
        "fuzz-soundness", help="model-check randomly generated accepted proofs"
    )
    p_fuzz.add_argument("--count", type=_positive, default=200)
    p_fuzz.add_argument("--max-size", type=_positive, default=3)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--budget", type=_positive, default=2000,
                        help="model-check budget per proof")
    p_fuzz.set_defaults(func=_cmd_fuzz)

    p_corpus = sub.add_parser("corpus", help="list bundled goals and proofs")
    p_corpus.add_argument("--run-all", action="store_true",
                          help="check every bundled proof and validate every theorem")
    p_corpus.add_argument("--dir", default=None, help="corpus directory override")
    p_corpus.add_argument("--max-size", type=_positive, default=3)
    p_corpus.add_argument("--budget", type=_positive, default=10_000)
    p_corpus.set_defaults(func=_cmd_corpus)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--persist", default=None, help="session persistence directory")
    p_serve.add_argument("--corpus-dir", default=None)
    p_serve.add_argument("--static-dir", default=None, help="web UI assets directory")
    p_serve.add_argument("--budget-cap", type=_positive, default=None)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
