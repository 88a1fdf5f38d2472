"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from twominds.documents import (
    BUNDLED_SPECS,
    GameSpecDocument,
    build_analysis,
    bundled_spec_text,
    export_analysis,
    parse_spec,
)
from twominds.errors import GameError, InvalidArgumentError, SpecParseError
from twominds.extensive import all_orders, backward_induction, framing_report, sequentialize
from twominds.game import Game, payoff_of, unilateral_deviations, validate
from twominds.render import render_table
from twominds.solver import EquilibriumReport, best_response_marks, pure_nash

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(ref: str, guilt: int | None) -> GameSpecDocument:
    path = Path(ref)
    if path.is_file():
        doc = parse_spec(path.read_bytes())
    elif ref in BUNDLED_SPECS:
        doc = parse_spec(bundled_spec_text(ref))
    else:
        raise UsageError(f"no such spec file or bundled spec: {ref}")
    if guilt is not None:
        if doc.composite is None:
            raise UsageError("--guilt applies only to composite specs")
        doc = doc.with_guilt(guilt)
    return doc


def _fmt(profile) -> str:
    return "(" + ",".join(profile) + ")"


def _parse_order(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _check_equilibria(game: Game, report: EquilibriumReport) -> None:
    for eq in report.equilibria:
        for i in range(game.n_players):
            here = payoff_of(game, eq, i)
            for dev in unilateral_deviations(game, eq, i):
                if payoff_of(game, dev, i) > here:
                    raise AssertionError(f"{eq} is not an equilibrium: {dev} improves player {i}")


def _solve_text(game: Game, report: EquilibriumReport) -> str:
    lines = [f"players: {', '.join(game.players)}"]
    if not report.equilibria:
        lines.append("pure Nash equilibria: none")
    else:
        lines.append(f"pure Nash equilibria ({len(report.equilibria)}):")
        for eq in report.equilibria:
            line = f"  {_fmt(eq)}  ranks {_fmt(str(r) for r in game.payoffs[eq])}"
            flags = report.conflicts.get(eq)
            if flags:
                torn = [name for name, flag in flags.items() if flag]
                line += f"  conflicted: {', '.join(torn) if torn else 'none'}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def _marks_text(game: Game) -> str:
    lines = []
    for m in best_response_marks(game):
        ctx = " ".join(f"{p}={a}" for p, a in m.context)
        lines.append(f"{m.player} | {ctx} -> {{{', '.join(m.responses)}}}")
    return "\n".join(lines) + "\n"


def _framing_text(report) -> str:
    lines = []
    for order, outcomes in report.entries:
        outs = ", ".join(_fmt(p) for p in outcomes)
        lines.append(f"{','.join(order)}: {outs}")
    lines.append(report.summary())
    return "\n".join(lines) + "\n"


def _spe_text(game: Game, order: list[str]) -> str:
    tree = sequentialize(game, order)
    sol = backward_induction(tree)
    labels = tree.order_labels
    lines = [f"move order: {', '.join(labels)}", "subgame-perfect outcomes:"]
    lines += [f"  {_fmt(p)}  ranks {_fmt(str(r) for r in game.payoffs[p])}" for p in sol.outcomes]
    lines.append("optimal actions per node:")
    for history, actions in sorted(sol.optimal.items(), key=lambda kv: (len(kv[0]), kv[0])):
        path = " ".join(f"{labels[k]}={a}" for k, a in enumerate(history)) or "root"
        lines.append(f"  {path}: {labels[len(history)]} plays {{{', '.join(actions)}}}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="spec file path or bundled spec name")
    common.add_argument("--guilt", type=int, help="override every altruistic guilt penalty")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = _Parser(prog="twominds", description="Multiple-self game analysis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common], help="pure Nash equilibria and conflicts")
    sub.add_parser("table", parents=[common], help="payoff table with markers")
    sub.add_parser("best-responses", parents=[common], help="best-response sets")
    sub.add_parser("validate", parents=[common], help="check the spec and its game")
    spe = sub.add_parser("spe", parents=[common], help="backward induction for one order")
    spe.add_argument("--order", required=True, help="comma-separated player names")
    framing = sub.add_parser("framing", parents=[common], help="compare move orders")
    group = framing.add_mutually_exclusive_group(required=True)
    group.add_argument("--all-orders", action="store_true")
    group.add_argument("--order", action="append", help="repeatable; comma-separated")
    return parser


def run(args: argparse.Namespace) -> str:
    if args.guilt is not None and args.guilt < 0:
        raise UsageError("--guilt must be non-negative")
    doc = _load(args.spec, args.guilt)
    game = doc.game()
    machine = args.format == "machine"

    if args.command == "validate":
        report = validate(game)
        if not report.ok:
            raise SpecParseError(str(report))
        if machine:
            return export_analysis(build_analysis(doc, game, pure_nash(game)))
        return f"valid: {len(game.players)} players, {len(game.payoffs)} profiles\n"

    report = pure_nash(game)
    _check_equilibria(game, report)

    framing = None
    if args.command == "spe":
        framing = framing_report(game, [_parse_order(args.order)])
    elif args.command == "framing":
        orders = all_orders(game) if args.all_orders else [_parse_order(o) for o in args.order]
        framing = framing_report(game, orders)

    if machine:
        return export_analysis(build_analysis(doc, game, report, framing))
    if args.command == "solve":
        return _solve_text(game, report)
    if args.command == "table":
        return render_table(game, build_analysis(doc, game, report))
    if args.command == "best-responses":
        return _marks_text(game)
    if args.command == "spe":
        return _spe_text(game, _parse_order(args.order))
    return _framing_text(framing)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        output = run(args)
    except (UsageError, InvalidArgumentError) as exc:
        print(f"twominds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecParseError, GameError) as exc:
        print(f"twominds: invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"twominds: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
