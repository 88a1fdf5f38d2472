"""Finite normal-form games with ordinal payoffs.

A game is a roster of players, one finite action set per player and a total
payoff map from every profile (one action label per player, in player order)
to a vector of ordinal ranks. Ranks are compared, never added or averaged;
a higher rank is preferred.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Union

from twominds.errors import InvalidArgumentError

Action = str
Profile = tuple[Action, ...]
Ranks = tuple[int, ...]
PlayerRef = Union[int, str]


@dataclass(frozen=True)
class Game:
    """Strategic-form game with ordinal payoffs.

    ``payoffs`` maps each profile to one rank per player. Builders insert
    profiles in lexicographic order of action indices, which is also the
    order :func:`enumerate_profiles` produces. Construction does not
    validate; call :func:`validate` or :func:`require_valid`.
    """

    players: tuple[str, ...]
    action_sets: tuple[tuple[Action, ...], ...]
    payoffs: Mapping[Profile, Ranks]
    scale_max: int = 4
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_rank_list(
        cls,
        players: Sequence[str],
        action_sets: Sequence[Sequence[Action]],
        ranks: Iterable[Sequence[int]],
        scale_max: int = 4,
        metadata: Mapping[str, Any] | None = None,
    ) -> Game:
        """Build a game from rank vectors listed in lexicographic profile order."""
        action_sets = tuple(tuple(a) for a in action_sets)
        rank_rows = [tuple(r) for r in ranks]
        profiles = list(itertools.product(*action_sets))
        if len(rank_rows) != len(profiles):
            raise InvalidArgumentError(
                f"expected {len(profiles)} rank vectors, got {len(rank_rows)}"
            )
        return cls(
            players=tuple(players),
            action_sets=action_sets,
            payoffs=dict(zip(profiles, rank_rows)),
            scale_max=scale_max,
            metadata=dict(metadata or {}),
        )

    @property
    def n_players(self) -> int:
        return len(self.players)

    def player_index(self, player: PlayerRef) -> int:
        """Resolve a player given by 0-based index or display name."""
        if isinstance(player, bool):
            raise InvalidArgumentError(f"invalid player {player!r}")
        if isinstance(player, int):
            if 0 <= player < len(self.players):
                return player
            raise InvalidArgumentError(f"player index {player} out of range")
        try:
            return self.players.index(player)
        except ValueError:
            raise InvalidArgumentError(f"unknown player {player!r}") from None

    def actions_of(self, player: PlayerRef) -> tuple[Action, ...]:
        return self.action_sets[self.player_index(player)]

    def check_profile(self, profile: Sequence[Action]) -> Profile:
        """Return ``profile`` as a tuple, raising if it does not fit the game."""
        profile = tuple(profile)
        if len(profile) != len(self.players):
            raise InvalidArgumentError(
                f"profile has {len(profile)} actions, game has {len(self.players)} players"
            )
        for name, action, allowed in zip(self.players, profile, self.action_sets):
            if action not in allowed:
                raise InvalidArgumentError(f"{action!r} is not an action of player {name}")
        return profile


def enumerate_profiles(game: Game) -> Iterator[Profile]:
    """Yield every profile once, in lexicographic order of action indices."""
    return itertools.product(*game.action_sets)


def profile_count(game: Game) -> int:
    count = 1
    for actions in game.action_sets:
        count *= len(actions)
    return count


def payoff_of(game: Game, profile: Sequence[Action], player: PlayerRef) -> int:
    """Rank that ``player`` assigns to ``profile``."""
    i = game.player_index(player)
    profile = game.check_profile(profile)
    try:
        return game.payoffs[profile][i]
    except KeyError:
        raise InvalidArgumentError(f"no payoff stored for profile {profile}") from None


def unilateral_deviations(
    game: Game, profile: Sequence[Action], player: PlayerRef
) -> list[Profile]:
    """Profiles that differ from ``profile`` only in ``player``'s action."""
    i = game.player_index(player)
    profile = game.check_profile(profile)
    return [
        profile[:i] + (a,) + profile[i + 1 :]
        for a in game.action_sets[i]
        if a != profile[i]
    ]


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    profile: Profile | None = None
    player: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.findings

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{f.kind}: {f.message}" for f in self.findings)


def validate(game: Game) -> ValidationReport:
    """Check every structural invariant of ``game`` and report violations.

    Covers duplicate player names, empty or duplicate action labels, tensor
    completeness (missing and foreign profiles), rank-vector length and
    rank bounds ``1..scale_max``.
    """
    findings: list[Finding] = []

    def add(kind: str, message: str, **kw: Any) -> None:
        findings.append(Finding(kind, message, **kw))

    if len(game.action_sets) != len(game.players):
        add(
            "roster",
            f"{len(game.players)} players but {len(game.action_sets)} action sets",
        )
    if len(set(game.players)) != len(game.players):
        add("duplicate-player", f"duplicate player names in {list(game.players)}")
    if game.scale_max < 1:
        add("scale", f"scale_max must be >= 1, got {game.scale_max}")

    for name, actions in zip(game.players, game.action_sets):
        if not actions:
            add("empty-action-set", f"player {name} has no actions", player=name)
        if any(not a for a in actions):
            add("empty-action", f"player {name} has an empty action label", player=name)
        seen = set()
        for a in actions:
            if a in seen:
                add("duplicate-action", f"player {name} lists action {a!r} twice", player=name)
            seen.add(a)

    if findings:
        # completeness checks are meaningless on a malformed roster
        return ValidationReport(tuple(findings))

    expected = set(enumerate_profiles(game))
    for profile in enumerate_profiles(game):
        if profile not in game.payoffs:
            add("missing-profile", f"no payoff for profile {profile}", profile=profile)
    for profile, ranks in game.payoffs.items():
        profile = tuple(profile)
        if profile not in expected:
            add("unknown-profile", f"payoff given for invalid profile {profile}", profile=profile)
            continue
        if len(ranks) != game.n_players:
            add(
                "rank-length",
                f"profile {profile} has {len(ranks)} ranks for {game.n_players} players",
                profile=profile,
            )
            continue
        for name, r in zip(game.players, ranks):
            if isinstance(r, bool) or not isinstance(r, int) or not 1 <= r <= game.scale_max:
                add(
                    "rank-bound",
                    f"rank {r!r} for {name} at {profile} outside 1..{game.scale_max}",
                    profile=profile,
                    player=name,
                )
    return ValidationReport(tuple(findings))


def require_valid(game: Game) -> Game:
    report = validate(game)
    if not report.ok:
        raise InvalidArgumentError(f"invalid game:\n{report}")
    return game


def permute_players(game: Game, order: Sequence[PlayerRef]) -> Game:
    """Reorder players so that new player ``j`` is old player ``order[j]``."""
    idx = [game.player_index(p) for p in order]
    if sorted(idx) != list(range(game.n_players)):
        raise InvalidArgumentError(f"{list(order)} is not a permutation of the players")
    payoffs = {}
    for profile in itertools.product(*(game.action_sets[i] for i in idx)):
        old = [None] * game.n_players
        for j, i in enumerate(idx):
            old[i] = profile[j]
        ranks = game.payoffs[tuple(old)]
        payoffs[profile] = tuple(ranks[i] for i in idx)
    return Game(
        players=tuple(game.players[i] for i in idx),
        action_sets=tuple(game.action_sets[i] for i in idx),
        payoffs=payoffs,
        scale_max=game.scale_max,
        metadata={},
    )
