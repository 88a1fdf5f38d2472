"""Sequential retellings of a strategic game and their subgame-perfect outcomes.

A move order turns the simultaneous game into a perfect-information tree:
players move one at a time in that order and each sees every earlier move.
Backward induction keeps ties as sets, so the outcome set covers every
subgame-perfect way of resolving indifference.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union

from twominds.errors import InvalidArgumentError
from twominds.game import Action, Game, PlayerRef, Profile, Ranks

History = tuple[Action, ...]


@dataclass(frozen=True)
class Leaf:
    history: History
    profile: Profile
    ranks: Ranks


@dataclass(frozen=True)
class DecisionNode:
    history: History
    mover: int
    children: dict[Action, Node] = field(compare=False)


Node = Union[DecisionNode, Leaf]


@dataclass(frozen=True)
class GameTree:
    game: Game
    order: tuple[int, ...]
    root: Node

    @property
    def order_labels(self) -> tuple[str, ...]:
        return tuple(self.game.players[i] for i in self.order)

    @property
    def depth(self) -> int:
        return len(self.order)

    def nodes(self) -> list[Node]:
        """All nodes, pre-order, children in action order."""
        out: list[Node] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            if isinstance(node, DecisionNode):
                stack.extend(reversed(list(node.children.values())))
        return out

    def leaves(self) -> list[Leaf]:
        return [n for n in self.nodes() if isinstance(n, Leaf)]


def resolve_order(game: Game, order: Sequence[PlayerRef]) -> tuple[int, ...]:
    idx = tuple(game.player_index(p) for p in order)
    if sorted(idx) != list(range(game.n_players)):
        labels = [game.players[i] for i in idx]
        raise InvalidArgumentError(
            f"move order {labels} is not a permutation of {list(game.players)}"
        )
    return idx


def sequentialize(game: Game, order: Sequence[PlayerRef]) -> GameTree:
    """Perfect-information tree where players move in ``order``."""
    idx = resolve_order(game, order)

    def grow(history: History) -> Node:
        depth = len(history)
        if depth == len(idx):
            profile = [None] * game.n_players
            for i, a in zip(idx, history):
                profile[i] = a
            profile = tuple(profile)
            return Leaf(history, profile, tuple(game.payoffs[profile]))
        mover = idx[depth]
        return DecisionNode(
            history, mover, {a: grow(history + (a,)) for a in game.action_sets[mover]}
        )

    return GameTree(game, idx, grow(()))


@dataclass(frozen=True)
class InductionSolution:
    """Subgame-perfect outcomes and, per decision node, the actions some
    subgame-perfect profile plays there (keyed by the node's history)."""

    outcomes: tuple[Profile, ...]
    optimal: dict[History, tuple[Action, ...]] = field(compare=False)


def _profile_key(game: Game):
    pos = [{a: k for k, a in enumerate(actions)} for actions in game.action_sets]
    return lambda p: tuple(pos[i][a] for i, a in enumerate(p))


def backward_induction(tree: GameTree) -> InductionSolution:
    """Solve ``tree`` bottom-up, keeping every tie-resolution.

    A subtree's value is the set of outcomes some subgame-perfect play can
    reach there. At a node, action ``a`` can be chosen when its best reachable
    outcome is at least as good for the mover as the worst reachable outcome
    of every alternative (the alternatives' own ties may resolve that badly),
    and the outcomes that survive through ``a`` are those clearing that bar.
    """
    optimal: dict[History, tuple[Action, ...]] = {}

    def solve(node: Node) -> dict[Profile, Ranks]:
        if isinstance(node, Leaf):
            return {node.profile: node.ranks}
        m = node.mover
        sub = {a: solve(child) for a, child in node.children.items()}
        worst = {a: min(r[m] for r in out.values()) for a, out in sub.items()}
        reached: dict[Profile, Ranks] = {}
        chosen = []
        for a, out in sub.items():
            bar = max((w for b, w in worst.items() if b != a), default=0)
            keep = {p: r for p, r in out.items() if r[m] >= bar}
            if keep:
                chosen.append(a)
                reached.update(keep)
        optimal[node.history] = tuple(chosen)
        return reached

    outcomes = solve(tree.root)
    return InductionSolution(tuple(sorted(outcomes, key=_profile_key(tree.game))), optimal)


def subgame_perfect_outcomes(game: Game, order: Sequence[PlayerRef]) -> tuple[Profile, ...]:
    return backward_induction(sequentialize(game, order)).outcomes


def all_orders(game: Game) -> list[tuple[str, ...]]:
    """Every move order, in lexicographic order of player indices."""
    return [tuple(game.players[i] for i in p) for p in itertools.permutations(range(game.n_players))]


@dataclass(frozen=True)
class FramingReport:
    """Outcome set per move order.

    ``all_same`` is None for a single order, otherwise whether every order
    led to the same outcome set; ``groups`` lists the orders sharing each
    distinct outcome set, in first-seen order.
    """

    entries: tuple[tuple[tuple[str, ...], tuple[Profile, ...]], ...]
    all_same: bool | None
    groups: tuple[tuple[tuple[Profile, ...], tuple[tuple[str, ...], ...]], ...]

    def outcomes_for(self, order: Sequence[str]) -> tuple[Profile, ...]:
        return dict(self.entries)[tuple(order)]

    def summary(self) -> str:
        if self.all_same is None:
            return "single order; nothing to compare"
        if self.all_same:
            return f"all {len(self.entries)} orders give the same outcome set"
        return (
            f"{len(self.groups)} distinct outcome sets across {len(self.entries)} orders"
        )


def framing_report(game: Game, orders: Iterable[Sequence[PlayerRef]]) -> FramingReport:
    """Backward-induction outcomes for each move order, side by side."""
    entries = []
    seen = set()
    for order in orders:
        idx = resolve_order(game, order)
        labels = tuple(game.players[i] for i in idx)
        if labels in seen:
            continue
        seen.add(labels)
        entries.append((labels, subgame_perfect_outcomes(game, idx)))
    if not entries:
        raise InvalidArgumentError("framing report needs at least one move order")

    grouped: dict[tuple[Profile, ...], list[tuple[str, ...]]] = {}
    for labels, outcomes in entries:
        grouped.setdefault(outcomes, []).append(labels)
    all_same = None if len(entries) == 1 else len(grouped) == 1
    return FramingReport(
        tuple(entries),
        all_same,
        tuple((out, tuple(ords)) for out, ords in grouped.items()),
    )
