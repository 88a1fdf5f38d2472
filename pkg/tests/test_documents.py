import copy
import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import DILEMMA_EQUILIBRIA, REFERENCE_RANKS
from oracles import random_game
from twominds.documents import (
    AnalysisDocument,
    build_analysis,
    bundled_spec_text,
    export_analysis,
    load_bundled,
    parse_export,
    parse_spec,
    parse_spec_data,
)
from twominds.errors import GameError, SpecParseError
from twominds.extensive import all_orders, framing_report
from twominds.game import Game
from twominds.solver import pure_nash

DATA = Path(__file__).parent / "data"
RAW_PD = (DATA / "raw_pd.json").read_text()


def bundled():
    return json.loads(bundled_spec_text("prisoners_dilemma_multiself"))


def edit(doc, path, value, delete=False):
    doc = copy.deepcopy(doc)
    node = doc
    for key in path[:-1]:
        node = node[key]
    if delete:
        del node[path[-1]]
    else:
        node[path[-1]] = value
    return doc


def defects():
    base, raw = bundled(), json.loads(RAW_PD)
    yield "guilt-on-mercenary", edit(
        base, ["composite", "persons", 0, "traits", 0, "generator", "guilt"], 1
    ), "guilt"
    yield "unknown-kind", edit(
        base, ["composite", "persons", 1, "traits", 1, "generator", "kind"], "envious"
    ), "composite.persons.1.traits.1.generator"
    yield "unknown-top-field", edit(base, ["colour"], "blue"), "colour"
    yield "unknown-trait-field", edit(
        base, ["composite", "persons", 0, "traits", 0, "mood"], "calm"
    ), "composite.persons.0.traits.0.mood"
    yield "negative-guilt", edit(
        base, ["composite", "persons", 0, "traits", 1, "generator", "guilt"], -1
    ), "guilt"
    yield "string-guilt", edit(
        base, ["composite", "persons", 0, "traits", 1, "generator", "guilt"], "1"
    ), "guilt"
    yield "bad-version", edit(base, ["schema_version"], 2), "schema_version"
    yield "no-version", edit(base, ["schema_version"], None, delete=True), "schema_version"
    yield "bad-aggregation", edit(
        base, ["composite", "persons", 0, "aggregation"], "strongest-link"
    ), "composite.persons.0.aggregation"
    yield "no-traits", edit(base, ["composite", "persons", 0, "traits"], []), "composite.persons.0.traits"
    yield "three-persons", _three_persons(base), "composite.persons"
    yield "bad-alphabet", edit(base, ["composite", "actions"], ["C", "X"]), "composite"
    yield "both-forms", edit(base, ["raw"], raw["raw"]), ""
    yield "neither-form", edit(base, ["composite"], None, delete=True), ""
    yield "missing-profile", edit(raw, ["raw", "payoffs"], raw["raw"]["payoffs"][:3]), "raw.payoffs"
    yield "rank-too-high", edit(raw, ["raw", "payoffs", 1, "ranks"], [1, 5]), "raw.payoffs.1"
    yield "rank-string", edit(raw, ["raw", "payoffs", 1, "ranks"], [1, "4"]), "raw.payoffs.1.ranks.1"
    yield "duplicate-entry", edit(raw, ["raw", "payoffs", 3], raw["raw"]["payoffs"][0]), "raw.payoffs.3"
    yield "foreign-action", edit(raw, ["raw", "payoffs", 3, "profile"], ["D", "X"]), "raw.payoffs.3"
    yield "duplicate-label", edit(raw, ["raw", "actions", 0], ["C", "C"]), "raw.actions"
    yield "actions-count", edit(raw, ["raw", "actions"], [["C", "D"]]), "raw.actions"
    yield "short-ranks", edit(raw, ["raw", "payoffs", 0, "ranks"], [3]), "raw.payoffs.0"


def _three_persons(base):
    doc = copy.deepcopy(base)
    third = copy.deepcopy(doc["composite"]["persons"][0])
    third["name"] = "R"
    for t in third["traits"]:
        t["label"] = "R" + t["label"][1]
    doc["composite"]["persons"].append(third)
    return doc


DEFECTS = list(defects())


class TestParseSpec:
    def test_bundled_dilemma_spec(self):
        doc = load_bundled()
        assert doc.composite is not None and doc.raw_game is None
        assert [p.name for p in doc.composite.persons] == ["P", "Q"]
        assert all(len(p.traits) == 2 for p in doc.composite.persons)
        gens = [t.generator for p in doc.composite.persons for t in p.traits]
        assert [(g.kind, g.guilt_penalty) for g in gens] == [
            ("mercenary", None), ("altruistic", 1), ("mercenary", None), ("altruistic", 1)
        ]
        assert dict(doc.game().payoffs) == REFERENCE_RANKS

    def test_raw_pd(self):
        doc = parse_spec(RAW_PD)
        g = doc.game()
        assert doc.composite is None
        assert len(g.payoffs) == 4
        assert g.payoffs[("C", "D")] == (1, 4)
        assert pure_nash(g).equilibria == (("D", "D"),)

    def test_raw_entries_reordered(self):
        data = json.loads(RAW_PD)
        data["raw"]["payoffs"].reverse()
        g = parse_spec_data(data).game()
        assert list(g.payoffs) == [("C", "C"), ("C", "D"), ("D", "C"), ("D", "D")]

    def test_bytes_input(self):
        assert parse_spec(RAW_PD.encode()).game().players == ("P", "Q")

    def test_syntax_error_reports_line(self):
        with pytest.raises(SpecParseError) as info:
            parse_spec('{\n  "schema_version": 1,\n  "title": \n}')
        assert info.value.line == 4

    @pytest.mark.parametrize("name, doc, field", DEFECTS, ids=[d[0] for d in DEFECTS])
    def test_defects_rejected_with_field(self, name, doc, field):
        with pytest.raises(SpecParseError) as info:
            parse_spec(json.dumps(doc))
        if field:
            assert info.value.field is not None
            assert field in info.value.field
            assert field in str(info.value)

    def test_guilt_override(self):
        doc = load_bundled().with_guilt(2)
        assert doc.source["composite"]["persons"][0]["traits"][1]["generator"]["guilt"] == 2
        assert doc.game().payoffs[tuple("DDCC")][1] == 2
        with pytest.raises(GameError):
            parse_spec(RAW_PD).with_guilt(2)


def dilemma_analysis(with_framing=False):
    doc = load_bundled()
    game = doc.game()
    framing = framing_report(game, all_orders(game)) if with_framing else None
    return build_analysis(doc, game, pure_nash(game), framing)


class TestExport:
    def test_analysis_lists_four_equilibria(self):
        data = json.loads(export_analysis(dilemma_analysis()))
        assert [tuple(e) for e in data["equilibria"]] == DILEMMA_EQUILIBRIA
        assert data["schema_version"] == 1
        assert all(c["persons"] == {"P": True, "Q": True} for c in data["conflicts"])
        assert len(data["best_responses"]) == 32

    def test_empty_equilibria(self):
        pennies = Game.from_rank_list(
            ["a", "b"], [["H", "T"], ["H", "T"]], [[2, 1], [1, 2], [1, 2], [2, 1]], scale_max=2
        )
        doc = parse_spec(RAW_PD)
        analysis = build_analysis(doc, pennies, pure_nash(pennies))
        assert json.loads(export_analysis(analysis))["equilibria"] == []

    @pytest.mark.parametrize("with_framing", [False, True])
    def test_round_trip(self, with_framing):
        a = dilemma_analysis(with_framing)
        text = export_analysis(a)
        back = parse_export(text)
        assert back == a
        assert export_analysis(back) == text

    def test_deterministic(self):
        assert export_analysis(dilemma_analysis(True)) == export_analysis(dilemma_analysis(True))

    def test_sorted_keys(self):
        text = export_analysis(dilemma_analysis())
        top = list(json.loads(text))
        assert top == sorted(top)

    def test_rejects_unknown_field(self):
        data = json.loads(export_analysis(dilemma_analysis()))
        data["extra"] = 1
        with pytest.raises(SpecParseError) as info:
            parse_export(json.dumps(data))
        assert info.value.field == "extra"

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 4), st.randoms(use_true_random=False))
    def test_round_trip_random_games(self, n, rnd):
        g = random_game(rnd, n, [rnd.randint(2, 3) for _ in range(n)])
        doc = parse_spec(RAW_PD)
        orders = all_orders(g)[:3]
        a = build_analysis(doc, g, pure_nash(g), framing_report(g, orders))
        text = export_analysis(a)
        assert export_analysis(parse_export(text)) == text
        assert isinstance(parse_export(text), AnalysisDocument)
