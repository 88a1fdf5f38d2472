"""Persons made of several independent trait-players.

Every trait of every person becomes a player of the composite game. The
traits' joint choice fixes the person's realized action through an
aggregation rule, and each trait ranks outcomes through its own
preference generator.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Union

from twominds.errors import InvalidArgumentError, UnsupportedConfigurationError
from twominds.game import Action, Game, Profile, require_valid
from twominds.preferences import COOPERATE, DEFECT, PreferenceGenerator

# (own internal action, own person action, other persons' actions) -> rank
CustomGenerator = Callable[[Action, Action, Sequence[Action]], int]
Generator = Union[PreferenceGenerator, CustomGenerator]


class AggregationRule(enum.Enum):
    WEAKEST_LINK = "weakest-link"


def aggregate_action(rule: AggregationRule, internal_actions: Sequence[Action]) -> Action:
    """Collapse a person's internal choices into the action the person takes.

    Under the weakest-link rule the person cooperates only when every trait
    cooperates.
    """
    if not internal_actions:
        raise InvalidArgumentError("cannot aggregate an empty action vector")
    for a in internal_actions:
        if a not in (COOPERATE, DEFECT):
            raise InvalidArgumentError(f"action must be 'C' or 'D', got {a!r}")
    if rule is AggregationRule.WEAKEST_LINK:
        return DEFECT if DEFECT in internal_actions else COOPERATE
    raise InvalidArgumentError(f"unsupported aggregation rule {rule!r}")


@dataclass(frozen=True)
class TraitPlayer:
    name: str
    generator: Generator
    label: str | None = None


@dataclass(frozen=True)
class Person:
    name: str
    traits: tuple[TraitPlayer, ...]
    aggregation: AggregationRule = AggregationRule.WEAKEST_LINK

    def __post_init__(self) -> None:
        object.__setattr__(self, "traits", tuple(self.traits))
        if not self.traits:
            raise InvalidArgumentError(f"person {self.name} needs at least one trait")
        names = [t.name for t in self.traits]
        if len(set(names)) != len(names):
            raise InvalidArgumentError(f"person {self.name} has duplicate trait names {names}")

    def labels(self) -> tuple[str, ...]:
        """Display names of this person's trait-players, e.g. ``Pm``, ``Pa``."""
        return tuple(t.label or f"{self.name}{t.name[:1]}" for t in self.traits)


@dataclass(frozen=True)
class CompositeSpec:
    persons: tuple[Person, ...]
    actions: tuple[Action, ...] = (COOPERATE, DEFECT)
    scale_max: int = 4
    title: str = ""
    notes: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "persons", tuple(self.persons))
        object.__setattr__(self, "actions", tuple(self.actions))
        if not self.persons:
            raise InvalidArgumentError("a composite spec needs at least one person")
        if set(self.actions) != {COOPERATE, DEFECT} or len(self.actions) != 2:
            raise InvalidArgumentError(
                f"composite games use the action alphabet ('C', 'D'), got {self.actions}"
            )
        names = [p.name for p in self.persons]
        if len(set(names)) != len(names):
            raise InvalidArgumentError(f"duplicate person names {names}")
        labels = self.players
        if len(set(labels)) != len(labels):
            raise InvalidArgumentError(f"trait-player labels collide: {list(labels)}")

    @property
    def players(self) -> tuple[str, ...]:
        """All trait-player labels, person-major."""
        return tuple(label for p in self.persons for label in p.labels())

    def person_slices(self) -> list[slice]:
        """Index range of each person's traits within a composite profile."""
        out, start = [], 0
        for p in self.persons:
            out.append(slice(start, start + len(p.traits)))
            start += len(p.traits)
        return out

    def with_guilt(self, guilt: int) -> CompositeSpec:
        """Copy with every built-in altruistic generator set to ``guilt``."""
        persons = []
        for p in self.persons:
            traits = []
            for t in p.traits:
                g = t.generator
                if isinstance(g, PreferenceGenerator) and g.kind == "altruistic":
                    t = TraitPlayer(t.name, PreferenceGenerator.altruistic(guilt), t.label)
                traits.append(t)
            persons.append(Person(p.name, tuple(traits), p.aggregation))
        return CompositeSpec(tuple(persons), self.actions, self.scale_max, self.title, self.notes)


def dilemma_spec(guilt: int = 1) -> CompositeSpec:
    """Two persons P and Q, each a mercenary trait plus an altruistic one."""

    def person(name: str) -> Person:
        return Person(
            name,
            (
                TraitPlayer("mercenary", PreferenceGenerator.mercenary()),
                TraitPlayer("altruistic", PreferenceGenerator.altruistic(guilt)),
            ),
        )

    return CompositeSpec((person("P"), person("Q")), title="Multiple-self prisoners' dilemma")


def person_actions(spec: CompositeSpec, internal_profile: Sequence[Action]) -> tuple[Action, ...]:
    """Realized action of each person for a profile over all trait-players."""
    if len(internal_profile) != len(spec.players):
        raise InvalidArgumentError(
            f"profile has {len(internal_profile)} actions, spec has {len(spec.players)} trait-players"
        )
    profile = tuple(internal_profile)
    return tuple(
        aggregate_action(p.aggregation, profile[s])
        for p, s in zip(spec.persons, spec.person_slices())
    )


def conflict_flags(spec: CompositeSpec, internal_profile: Sequence[Action]) -> dict[str, bool]:
    """Whether each person's traits disagree in ``internal_profile``."""
    if len(internal_profile) != len(spec.players):
        raise InvalidArgumentError(
            f"profile has {len(internal_profile)} actions, spec has {len(spec.players)} trait-players"
        )
    profile = tuple(internal_profile)
    return {p.name: len(set(profile[s])) > 1 for p, s in zip(spec.persons, spec.person_slices())}


def build_composite_game(spec: CompositeSpec) -> Game:
    """Materialize the normal-form game played by all trait-players.

    Each trait-player's rank at a profile is its generator applied to its own
    internal action, its person's aggregated action and the other persons'
    aggregated actions (in person order).
    """
    uses_builtin = any(
        isinstance(t.generator, PreferenceGenerator) for p in spec.persons for t in p.traits
    )
    if uses_builtin and len(spec.persons) != 2:
        raise UnsupportedConfigurationError(
            f"built-in generators need exactly 2 persons, spec has {len(spec.persons)}"
        )

    slices = spec.person_slices()
    owner = [k for k, s in enumerate(slices) for _ in range(s.start, s.stop)]
    generators = [t.generator for p in spec.persons for t in p.traits]

    payoffs: dict[Profile, tuple[int, ...]] = {}
    for profile in itertools.product(spec.actions, repeat=len(generators)):
        realized = person_actions(spec, profile)
        ranks = []
        for i, gen in enumerate(generators):
            k = owner[i]
            others = realized[:k] + realized[k + 1 :]
            ranks.append(gen(profile[i], realized[k], others))
        payoffs[profile] = tuple(ranks)

    game = Game(
        players=spec.players,
        action_sets=tuple(spec.actions for _ in generators),
        payoffs=payoffs,
        scale_max=spec.scale_max,
        metadata={"persons": tuple((p.name, p.labels()) for p in spec.persons)},
    )
    return require_valid(game)
