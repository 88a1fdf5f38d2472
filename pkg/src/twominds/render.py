"""Plain-text payoff tables.

Each cell shows one rank per player in player order. A ``*`` after a rank
marks that player's action in the cell as a best response; a cell in
square brackets is a pure Nash equilibrium.
"""

from __future__ import annotations

from twominds.documents import AnalysisDocument
from twominds.errors import InvalidArgumentError
from twominds.game import Game, Profile, enumerate_profiles

LEGEND = "* best response; [ ] Nash equilibrium"


def _fmt_profile(profile) -> str:
    return "(" + ",".join(profile) + ")"


def _check_matches(game: Game, analysis: AnalysisDocument) -> None:
    if list(game.players) != list(analysis.players):
        raise InvalidArgumentError(
            f"analysis players {analysis.players} do not match game players {list(game.players)}"
        )
    for eq in analysis.equilibria:
        game.check_profile(eq)


def _marks(game: Game, analysis: AnalysisDocument) -> dict[Profile, tuple[bool, ...]]:
    lookup = {}
    for m in analysis.best_responses:
        lookup[m.player, tuple(sorted(m.context.items()))] = set(m.responses)
    marks = {}
    for profile in enumerate_profiles(game):
        flags = []
        for i, name in enumerate(game.players):
            ctx = tuple(sorted((game.players[j], profile[j]) for j in range(game.n_players) if j != i))
            try:
                flags.append(profile[i] in lookup[name, ctx])
            except KeyError:
                raise InvalidArgumentError(
                    f"analysis has no best-response entry for {name} against {dict(ctx)}"
                ) from None
        marks[profile] = tuple(flags)
    return marks


def _cell(ranks, flags, is_eq: bool) -> str:
    body = " ".join(f"{r}{'*' if f else ' '}" for r, f in zip(ranks, flags))
    return f"[{body}]" if is_eq else f" {body} "


def _footer(game: Game, analysis: AnalysisDocument) -> list[str]:
    lines = [LEGEND]
    header = f"Nash equilibria {_fmt_profile(game.players)}:"
    if analysis.equilibria:
        lines.append(header + " " + ", ".join(_fmt_profile(e) for e in analysis.equilibria))
    else:
        lines.append(header + " none")
    for c in analysis.conflicts:
        torn = [name for name, flag in c.persons.items() if flag]
        lines.append(
            f"  {_fmt_profile(c.profile)} internal conflict: {', '.join(torn) if torn else 'none'}"
        )
    return lines


def _grid(rows: list[list[str]], group_after: set[int]) -> list[str]:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    out = []
    for r in rows:
        parts = []
        for k, text in enumerate(r):
            parts.append(text.ljust(widths[k]))
            if k in group_after:
                parts.append("|")
        out.append(" ".join(parts).rstrip())
    return out


def _nested(game: Game, analysis: AnalysisDocument, marks) -> list[str]:
    # players 0,1 belong to the row person, 2,3 to the column person
    row_outer, row_inner, col_outer, col_inner = game.action_sets
    p = game.players
    eqs = {tuple(e) for e in analysis.equilibria}

    cols = [(a, b) for a in col_outer for b in col_inner]
    head1, head2 = ["", ""], ["", ""]
    for a in col_outer:
        for k, b in enumerate(col_inner):
            head1.append(f"{p[2]}={a}" if k == 0 else "")
            head2.append(f"{p[3]}={b}")
    rows = [head1, head2]
    separators = [2]
    for x in row_outer:
        for k, y in enumerate(row_inner):
            row = [f"{p[0]}={x}" if k == 0 else "", f"{p[1]}={y}"]
            for a, b in cols:
                profile = (x, y, a, b)
                row.append(_cell(game.payoffs[profile], marks[profile], profile in eqs))
            rows.append(row)
        separators.append(len(rows))

    group_after = {1} | {1 + len(col_inner) * (g + 1) for g in range(len(col_outer) - 1)}
    lines = _grid(rows, group_after)
    width = max(len(line) for line in lines)
    out = []
    for idx, line in enumerate(lines):
        if idx in separators:
            out.append("-" * width)
        out.append(line)
    out.append("-" * width)
    return out


def _flat(game: Game, analysis: AnalysisDocument, marks) -> list[str]:
    eqs = {tuple(e) for e in analysis.equilibria}
    rows = [list(game.players) + ["ranks"]]
    for profile in enumerate_profiles(game):
        rows.append(
            list(profile) + [_cell(game.payoffs[profile], marks[profile], profile in eqs)]
        )
    lines = _grid(rows, {game.n_players - 1})
    return [lines[0], "-" * max(len(line) for line in lines)] + lines[1:]


def render_table(game: Game, analysis: AnalysisDocument) -> str:
    """Text table of ``game`` annotated from ``analysis``.

    Games with two persons of two traits each get the nested layout (outer
    grid over each person's first trait, inner grids over the second);
    anything else is listed one profile per row.
    """
    _check_matches(game, analysis)
    marks = _marks(game, analysis)
    persons = game.metadata.get("persons") or ()
    nested = len(persons) == 2 and all(len(labels) == 2 for _, labels in persons)
    body = _nested(game, analysis, marks) if nested else _flat(game, analysis, marks)
    title = analysis.spec.get("title") or ""
    lines = ([title, ""] if title else []) + body + [""] + _footer(game, analysis)
    return "\n".join(lines) + "\n"
