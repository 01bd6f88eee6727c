"""Command-line surface: allocate payouts, export games, run axiom audits.

Exit codes: 0 success (and, for audits, everything matches), 1 usage error,
2 data error, 3 audit mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import axioms, reporting
from .core import ProblemError
from .game import TooManyArtists
from .indices import ALL_RULE_NAMES, TABLE_RULE_NAMES, UnknownRule, make_rule

SEED_ENV_VAR = "STREAMSHARE_SEED"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            pass
    return 42


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="streamshare")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", type=Path, default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=_default_seed(),
                       help=f"seed for audits and default weights "
                            f"(env {SEED_ENV_VAR} overrides the default)")

    alloc = sub.add_parser("allocate", help="compute index values and payouts")
    alloc.add_argument("--input", type=Path, required=True, help="CSV stream matrix")
    alloc.add_argument("--index", default="shapley,pro-rata,user-centric",
                       help="comma-separated index names, or 'all'")
    alloc.add_argument("--price", default="1",
                       help="display multiplier for payouts (exact fraction)")
    common(alloc)

    game = sub.add_parser("game", help="export a coalition game worth table")
    game.add_argument("--input", type=Path, required=True, help="CSV stream matrix")
    game.add_argument("--stance", choices=("pessimistic", "optimistic", "dual"),
                      default="pessimistic")
    game.add_argument("--cap", type=int, default=None,
                      help="artist enumeration cap override")
    common(game)

    audit = sub.add_parser("audit", help="search axioms for counterexamples")
    audit.add_argument("--axiom", default="all",
                       help="axiom name or 'all' (" + ", ".join(axioms.AXIOM_IDS) + ")")
    audit.add_argument("--index", default="all",
                       help="index name or 'all' (the three table indices)")
    audit.add_argument("--trials", type=int, default=500)
    audit.add_argument("--table", action="store_true",
                       help="reproduce the full rules-vs-axioms table")
    audit.add_argument("--independence", action="store_true",
                       help="run the characterization independence suite")
    common(audit)
    return parser


def _emit(doc: dict, args) -> None:
    text = reporting.render_json(doc) if args.format == "json" else reporting.render_text(doc)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")


def _read_problem(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise reporting.ParseError(f"cannot read {path}: {exc}") from None
    return reporting.parse_matrix(text)


def _run_allocate(args) -> int:
    p = _read_problem(args.input)
    if args.index == "all":
        names = list(ALL_RULE_NAMES)
    else:
        names = [n.strip() for n in args.index.split(",") if n.strip()]
        if not names:
            raise UnknownRule("no index selected")
        for n in names:
            make_rule(n)  # validate early
    price = Fraction(args.price)
    if price <= 0:
        raise ValueError("price multiplier must be positive")
    _emit(reporting.allocation_document(p, names, price=price, seed=args.seed), args)
    return EXIT_OK


def _run_game(args) -> int:
    p = _read_problem(args.input)
    _emit(reporting.game_document(p, args.stance, cap=args.cap), args)
    return EXIT_OK


def _run_audit(args) -> int:
    if args.table and args.independence:
        raise SystemExit(EXIT_USAGE)
    if args.table:
        result = axioms.reproduce_table(trials=args.trials, seed=args.seed)
        _emit(reporting.table_document(result), args)
        return EXIT_OK if result.all_match else EXIT_MISMATCH
    if args.independence:
        result = axioms.independence_suite(trials=args.trials, seed=args.seed)
        _emit(reporting.independence_document(result), args)
        return EXIT_OK if result.all_match else EXIT_MISMATCH
    axiom_names = list(axioms.AXIOM_IDS) if args.axiom == "all" else [args.axiom]
    for a in axiom_names:
        if a not in axioms.AXIOM_IDS:
            raise axioms.UnknownAxiom(f"unknown axiom {a!r}")
    rule_names = list(TABLE_RULE_NAMES) if args.index == "all" else [args.index]
    verdicts = []
    for a in axiom_names:
        for name in rule_names:
            rule = make_rule(name, seed=args.seed)
            verdicts.append(axioms.audit(a, rule, trials=args.trials, seed=args.seed))
    _emit(reporting.audit_document(verdicts), args)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "allocate":
            return _run_allocate(args)
        if args.command == "game":
            return _run_game(args)
        if args.command == "audit":
            return _run_audit(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ProblemError, reporting.ParseError, TooManyArtists,
            axioms.UnknownAxiom, UnknownRule, ValueError) as exc:
        print(f"streamshare: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
