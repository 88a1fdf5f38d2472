"""Best responses, pure Nash equilibria and internal-conflict flags."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from twominds.errors import InvalidArgumentError
from twominds.game import Action, Game, PlayerRef, Profile, enumerate_profiles
from twominds.multiself import CompositeSpec, conflict_flags

Context = tuple[tuple[str, Action], ...]


@dataclass(frozen=True)
class BestResponseMark:
    player: str
    context: Context
    responses: tuple[Action, ...]


@dataclass(frozen=True)
class EquilibriumReport:
    """Pure equilibria in lexicographic profile order.

    ``conflicts`` maps each equilibrium to ``{person: traits disagree}`` and
    is empty when the game carries no person structure.
    """

    players: tuple[str, ...]
    equilibria: tuple[Profile, ...]
    conflicts: Mapping[Profile, Mapping[str, bool]] = field(default_factory=dict)


def _resolve_context(game: Game, i: int, context) -> dict[int, Action]:
    others = [j for j in range(game.n_players) if j != i]
    if isinstance(context, Mapping):
        fixed = {}
        for ref, action in context.items():
            j = game.player_index(ref)
            if j == i:
                raise InvalidArgumentError(f"context must not fix the responding player {game.players[i]}")
            fixed[j] = action
        if sorted(fixed) != others:
            missing = [game.players[j] for j in others if j not in fixed]
            raise InvalidArgumentError(f"context does not fix players {missing}")
    else:
        context = tuple(context)
        if len(context) != len(others):
            raise InvalidArgumentError(
                f"context needs {len(others)} actions, got {len(context)}"
            )
        fixed = dict(zip(others, context))
    for j, action in fixed.items():
        if action not in game.action_sets[j]:
            raise InvalidArgumentError(f"{action!r} is not an action of player {game.players[j]}")
    return fixed


def best_responses(
    game: Game, player: PlayerRef, context: Mapping[PlayerRef, Action] | Sequence[Action]
) -> tuple[Action, ...]:
    """All rank-maximizing actions of ``player`` against ``context``.

    ``context`` is either a mapping from every other player to an action or
    the other players' actions in player order. Ties are all returned, in the
    player's action order.
    """
    i = game.player_index(player)
    fixed = _resolve_context(game, i, context)
    base = [fixed.get(j) for j in range(game.n_players)]

    scored = []
    for a in game.action_sets[i]:
        base[i] = a
        try:
            scored.append((a, game.payoffs[tuple(base)][i]))
        except KeyError:
            raise InvalidArgumentError(f"no payoff stored for profile {tuple(base)}") from None
    top = max(r for _, r in scored)
    return tuple(a for a, r in scored if r == top)


def best_response_marks(game: Game) -> list[BestResponseMark]:
    """Best-response sets for every player and every context, in lex order."""
    marks = []
    for i, name in enumerate(game.players):
        others = game.action_sets[:i] + game.action_sets[i + 1 :]
        other_names = game.players[:i] + game.players[i + 1 :]
        sub = Game(other_names, others, {})
        for ctx in enumerate_profiles(sub):
            marks.append(
                BestResponseMark(name, tuple(zip(other_names, ctx)), best_responses(game, i, ctx))
            )
    return marks


def _context_maxima(game: Game) -> list[dict[Profile, int]]:
    best: list[dict[Profile, int]] = [{} for _ in game.players]
    for profile, ranks in game.payoffs.items():
        for i, r in enumerate(ranks):
            key = profile[:i] + profile[i + 1 :]
            if r > best[i].get(key, 0):
                best[i][key] = r
    return best


def best_response_flags(game: Game) -> dict[Profile, tuple[bool, ...]]:
    """For each profile, whether each player's action there is a best response."""
    best = _context_maxima(game)
    return {
        profile: tuple(
            ranks[i] == best[i][profile[:i] + profile[i + 1 :]] for i in range(len(ranks))
        )
        for profile, ranks in ((p, game.payoffs[p]) for p in enumerate_profiles(game))
    }


def pure_nash(game: Game, spec: CompositeSpec | None = None) -> EquilibriumReport:
    """Profiles at which every player's action is a (weak) best response.

    Conflict flags come from ``spec`` when given, otherwise from the person
    structure a composite builder stores in ``game.metadata``.
    """
    flags = best_response_flags(game)
    equilibria = tuple(p for p, f in flags.items() if all(f))
    report = EquilibriumReport(game.players, equilibria)
    if spec is not None:
        return EquilibriumReport(game.players, equilibria, internal_conflict(report, spec))
    persons = game.metadata.get("persons")
    if persons:
        conflicts = {}
        for eq in equilibria:
            by_player = dict(zip(game.players, eq))
            conflicts[eq] = {
                name: len({by_player[label] for label in labels}) > 1 for name, labels in persons
            }
        return EquilibriumReport(game.players, equilibria, conflicts)
    return report


def internal_conflict(
    report: EquilibriumReport, spec: CompositeSpec
) -> dict[Profile, dict[str, bool]]:
    """Per equilibrium, whether each person's trait-players chose differently."""
    if tuple(report.players) != spec.players:
        raise InvalidArgumentError(
            f"report players {list(report.players)} do not match spec players {list(spec.players)}"
        )
    return {eq: conflict_flags(spec, eq) for eq in report.equilibria}
