"""JSON spec documents and analysis exports.

Both formats are single JSON documents carrying ``schema_version: 1``.
Unknown fields are rejected everywhere. A spec holds either a ``composite``
description (persons, traits, generators) or a ``raw`` game (explicit
action sets and one payoff entry per profile).
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from twominds import __version__
from twominds.errors import GameError, SpecParseError
from twominds.extensive import FramingReport
from twominds.game import Game, enumerate_profiles, validate
from twominds.multiself import (
    AggregationRule,
    CompositeSpec,
    Person,
    TraitPlayer,
    build_composite_game,
)
from twominds.preferences import PreferenceGenerator
from twominds.solver import EquilibriumReport, best_response_marks

SCHEMA_VERSION = 1
BUNDLED_SPECS = ("prisoners_dilemma_multiself",)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class MercenaryGenerator(_Strict):
    kind: Literal["mercenary"]


class AltruisticGenerator(_Strict):
    kind: Literal["altruistic"]
    guilt: int = Field(default=1, ge=0)


GeneratorDoc = Annotated[
    Union[MercenaryGenerator, AltruisticGenerator], Field(discriminator="kind")
]


class TraitDoc(_Strict):
    name: str = Field(min_length=1)
    label: Optional[str] = Field(default=None, min_length=1)
    generator: GeneratorDoc


class PersonDoc(_Strict):
    name: str = Field(min_length=1)
    aggregation: Literal["weakest-link"] = "weakest-link"
    traits: list[TraitDoc] = Field(min_length=1)


class CompositeDoc(_Strict):
    actions: list[str] = Field(default_factory=lambda: ["C", "D"])
    persons: list[PersonDoc] = Field(min_length=1)


class PayoffEntry(_Strict):
    profile: list[str]
    ranks: list[int]


class RawDoc(_Strict):
    players: list[str] = Field(min_length=1)
    actions: list[list[str]]
    payoffs: list[PayoffEntry]


class SpecDoc(_Strict):
    schema_version: Literal[1]
    title: str = ""
    notes: str = ""
    scale_max: int = Field(default=4, ge=1)
    composite: Optional[CompositeDoc] = None
    raw: Optional[RawDoc] = None

    @model_validator(mode="after")
    def _one_form(self) -> SpecDoc:
        if (self.composite is None) == (self.raw is None):
            raise ValueError("exactly one of 'composite' or 'raw' must be present")
        return self


@dataclass(frozen=True)
class GameSpecDocument:
    """A parsed, validated spec: the composite description or the raw game."""

    source: dict[str, Any] = field(compare=False)
    title: str = ""
    notes: str = ""
    scale_max: int = 4
    composite: Optional[CompositeSpec] = None
    raw_game: Optional[Game] = None

    def game(self) -> Game:
        if self.composite is not None:
            return build_composite_game(self.composite)
        return self.raw_game

    def with_guilt(self, guilt: int) -> GameSpecDocument:
        """Override the penalty of every altruistic trait."""
        if self.composite is None:
            raise GameError("--guilt applies only to composite specs")
        source = copy.deepcopy(self.source)
        for person in source["composite"]["persons"]:
            for trait in person["traits"]:
                if trait["generator"]["kind"] == "altruistic":
                    trait["generator"]["guilt"] = guilt
        return parse_spec_data(source)


def _pydantic_error(exc: ValidationError) -> SpecParseError:
    errors = exc.errors()
    first = errors[0]
    path = ".".join(str(p) for p in first["loc"])
    msg = first["msg"]
    if len(errors) > 1:
        rest = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in errors[1:]
        )
        msg = f"{msg} (also: {rest})"
    return SpecParseError(msg, field=path or None)


def _composite_from_doc(doc: SpecDoc) -> CompositeSpec:
    if len(doc.composite.persons) != 2:
        raise SpecParseError(
            f"built-in generators need exactly 2 persons, got {len(doc.composite.persons)}",
            field="composite.persons",
        )
    persons = []
    for pi, p in enumerate(doc.composite.persons):
        traits = []
        for t in p.traits:
            g = t.generator
            gen = (
                PreferenceGenerator.mercenary()
                if g.kind == "mercenary"
                else PreferenceGenerator.altruistic(g.guilt)
            )
            traits.append(TraitPlayer(t.name, gen, t.label))
        try:
            persons.append(Person(p.name, tuple(traits), AggregationRule(p.aggregation)))
        except GameError as exc:
            raise SpecParseError(str(exc), field=f"composite.persons.{pi}") from exc
    try:
        return CompositeSpec(
            tuple(persons),
            tuple(doc.composite.actions),
            doc.scale_max,
            doc.title,
            doc.notes,
        )
    except GameError as exc:
        raise SpecParseError(str(exc), field="composite") from exc


def _raw_from_doc(doc: SpecDoc) -> Game:
    raw = doc.raw
    if len(raw.actions) != len(raw.players):
        raise SpecParseError(
            f"{len(raw.players)} players but {len(raw.actions)} action lists", field="raw.actions"
        )
    payoffs = {}
    for k, entry in enumerate(raw.payoffs):
        profile = tuple(entry.profile)
        if profile in payoffs:
            raise SpecParseError(f"duplicate payoff entry for {profile}", field=f"raw.payoffs.{k}")
        payoffs[profile] = tuple(entry.ranks)
    game = Game(
        players=tuple(raw.players),
        action_sets=tuple(tuple(a) for a in raw.actions),
        payoffs=payoffs,
        scale_max=doc.scale_max,
    )
    report = validate(game)
    if not report.ok:
        # point at a concrete entry when any finding names one
        located = [x for x in report.findings if x.profile in payoffs]
        f = located[0] if located else report.findings[0]
        where = "raw.payoffs"
        if f.profile in payoffs:
            where = f"raw.payoffs.{list(payoffs).index(f.profile)}"
        elif f.kind in ("roster", "duplicate-player"):
            where = "raw.players"
        elif f.kind in ("empty-action-set", "empty-action", "duplicate-action"):
            where = "raw.actions"
        raise SpecParseError(str(report).replace("\n", "; "), field=where)
    ordered = {p: payoffs[p] for p in enumerate_profiles(game)}
    return Game(game.players, game.action_sets, ordered, game.scale_max)


def parse_spec_data(data: Any) -> GameSpecDocument:
    """Validate an already-decoded spec document."""
    try:
        doc = SpecDoc.model_validate(data)
    except ValidationError as exc:
        raise _pydantic_error(exc) from None
    source = doc.model_dump(mode="json", exclude_none=True)
    if doc.composite is not None:
        return GameSpecDocument(
            source, doc.title, doc.notes, doc.scale_max, composite=_composite_from_doc(doc)
        )
    return GameSpecDocument(source, doc.title, doc.notes, doc.scale_max, raw_game=_raw_from_doc(doc))


def parse_spec(text: str | bytes) -> GameSpecDocument:
    """Parse a UTF-8 JSON spec document, strictly."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecParseError(f"not valid UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    return parse_spec_data(data)


def bundled_spec_text(name: str) -> str:
    if name not in BUNDLED_SPECS:
        raise SpecParseError(f"no bundled spec named {name!r}")
    return resources.files("twominds.data").joinpath(f"{name}.json").read_text("utf-8")


def load_bundled(name: str = "prisoners_dilemma_multiself") -> GameSpecDocument:
    return parse_spec(bundled_spec_text(name))


# -- analysis export ------------------------------------------------------


class MarkDoc(_Strict):
    player: str
    context: dict[str, str]
    responses: list[str]


class ConflictDoc(_Strict):
    profile: list[str]
    persons: dict[str, bool]


class OrderOutcomeDoc(_Strict):
    order: list[str]
    outcomes: list[list[str]]


class FramingDoc(_Strict):
    orders: list[OrderOutcomeDoc]
    all_same: Optional[bool]
    summary: str


class AnalysisDocument(_Strict):
    schema_version: Literal[1] = SCHEMA_VERSION
    tool_version: str = __version__
    spec: dict[str, Any]
    players: list[str]
    equilibria: list[list[str]]
    conflicts: list[ConflictDoc] = Field(default_factory=list)
    best_responses: list[MarkDoc] = Field(default_factory=list)
    framing: Optional[FramingDoc] = None


def build_analysis(
    spec: GameSpecDocument,
    game: Game,
    report: EquilibriumReport,
    framing: FramingReport | None = None,
) -> AnalysisDocument:
    """Assemble the exportable analysis of ``game`` (built from ``spec``)."""
    framing_doc = None
    if framing is not None:
        framing_doc = FramingDoc(
            orders=[
                OrderOutcomeDoc(order=list(o), outcomes=[list(p) for p in out])
                for o, out in framing.entries
            ],
            all_same=framing.all_same,
            summary=framing.summary(),
        )
    return AnalysisDocument(
        spec=spec.source,
        players=list(game.players),
        equilibria=[list(p) for p in report.equilibria],
        conflicts=[
            ConflictDoc(profile=list(p), persons=dict(flags))
            for p, flags in report.conflicts.items()
        ],
        best_responses=[
            MarkDoc(player=m.player, context=dict(m.context), responses=list(m.responses))
            for m in best_response_marks(game)
        ],
        framing=framing_doc,
    )


def export_analysis(analysis: AnalysisDocument) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    data = analysis.model_dump(mode="json")
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_export(text: str | bytes) -> AnalysisDocument:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    try:
        return AnalysisDocument.model_validate(data)
    except ValidationError as exc:
        raise _pydantic_error(exc) from None
