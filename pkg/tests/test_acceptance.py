"""Exit criteria for the build, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import itertools
import json
import random
import time

from golden import DILEMMA_EQUILIBRIA, REFERENCE_MARKS, REFERENCE_RANKS
from oracles import (
    nash_by_definition,
    random_game,
    spe_outcomes_brute_force,
    spe_outcomes_by_combination,
)
from twominds.documents import build_analysis, export_analysis, load_bundled, parse_export, parse_spec
from twominds.extensive import all_orders, backward_induction, framing_report, resolve_order, sequentialize
from twominds.multiself import CompositeSpec, Person, TraitPlayer, build_composite_game
from twominds.preferences import PreferenceGenerator, mercenary_rank
from twominds.solver import best_response_flags, internal_conflict, pure_nash


def dilemma():
    doc = load_bundled()
    return doc, doc.game()


def test_c1_table_reproduction(criterion):
    start = time.perf_counter()
    doc, game = dilemma()
    elapsed = time.perf_counter() - start
    mismatches = [
        (p, i)
        for p, ranks in REFERENCE_RANKS.items()
        for i in range(4)
        if game.payoffs[p][i] != ranks[i]
    ]
    checked = sum(len(r) for r in REFERENCE_RANKS.values())
    ok = checked == 64 and not mismatches and len(game.payoffs) == 16 and elapsed < 1.0
    assert criterion(
        "1 payoff table reproduction", ok, f"{checked - len(mismatches)}/64 ranks, {elapsed:.3f}s < 1s"
    )


def test_c2_equilibrium_set(criterion):
    _, game = dilemma()
    got = list(pure_nash(game).equilibria)
    assert criterion("2 equilibrium set", got == DILEMMA_EQUILIBRIA, f"{len(got)} equilibria")


def test_c3_two_minds(criterion):
    doc, game = dilemma()
    flags = internal_conflict(pure_nash(game), doc.composite)
    ok = len(flags) == 4 and all(f == {"P": True, "Q": True} for f in flags.values())
    assert criterion("3 two-minds property", ok)


def test_c4_best_response_marks(criterion):
    _, game = dilemma()
    flags = best_response_flags(game)
    wrong = [p for p in REFERENCE_MARKS if flags[p] != REFERENCE_MARKS[p]]
    assert criterion(
        "4 best-response marks", not wrong and len(flags) == 16, f"{64 - 4 * len(wrong)}/64 marks"
    )


def test_c5_classic_pd(criterion):
    people = tuple(
        Person(n, (TraitPlayer("mercenary", PreferenceGenerator.mercenary()),)) for n in "PQ"
    )
    game = build_composite_game(CompositeSpec(people))
    # hand-rolled check: keep (p, q) if neither can raise its rank alone
    brute = [
        (p, q)
        for p, q in itertools.product("CD", repeat=2)
        if all(mercenary_rank(p, q) >= mercenary_rank(a, q) for a in "CD")
        and all(mercenary_rank(q, p) >= mercenary_rank(b, p) for b in "CD")
    ]
    got = list(pure_nash(game).equilibria)
    assert criterion("5 classic PD sanity", brute == got == [("D", "D")])


def test_c6_nash_oracle_equivalence(criterion):
    rng = random.Random(6)
    games, bad = 0, 0
    for _ in range(250):
        n = rng.randint(2, 4)
        g = random_game(rng, n, [rng.randint(2, 3) for _ in range(n)], max_rank=4)
        bad += list(pure_nash(g).equilibria) != nash_by_definition(g)
        games += 1
    assert criterion(
        "6 Nash oracle equivalence", games >= 200 and not bad, f"{games - bad}/{games} random games agree"
    )


def test_c7_backward_induction_oracle(criterion):
    rng = random.Random(7)
    games, bad = 0, 0
    for _ in range(120):
        n = rng.randint(2, 5)
        g = random_game(rng, n, [2] * n, max_rank=4)
        order = list(range(n))
        rng.shuffle(order)
        got = set(backward_induction(sequentialize(g, order)).outcomes)
        agree = got == spe_outcomes_by_combination(g, order)
        if n <= 3:
            agree = agree and got == spe_outcomes_brute_force(g, order)
        bad += not agree
        games += 1
    assert criterion(
        "7 backward-induction oracle", games >= 100 and not bad, f"{games - bad}/{games} random games agree"
    )


def test_c8_framing_report(criterion):
    _, game = dilemma()
    start = time.perf_counter()
    report = framing_report(game, all_orders(game))
    elapsed = time.perf_counter() - start
    verified = sum(
        set(outcomes) == spe_outcomes_brute_force(game, resolve_order(game, order))
        for order, outcomes in report.entries
    )
    ok = len(report.entries) == 24 and verified == 24 and elapsed < 5.0 and report.summary()
    assert criterion(
        "8 framing report",
        ok,
        f"{verified}/24 orders oracle-verified, {elapsed:.3f}s < 5s; {report.summary()}",
    )


def test_c9_round_trip(criterion):
    doc, game = dilemma()
    analyses = [
        build_analysis(doc, game, pure_nash(game)),
        build_analysis(doc, game, pure_nash(game), framing_report(game, all_orders(game))),
    ]
    rng = random.Random(9)
    raw_doc = parse_spec(
        json.dumps(
            {
                "schema_version": 1,
                "raw": {
                    "players": ["a"],
                    "actions": [["x"]],
                    "payoffs": [{"profile": ["x"], "ranks": [1]}],
                },
            }
        )
    )
    for _ in range(50):
        n = rng.randint(2, 4)
        g = random_game(rng, n, [rng.randint(2, 3) for _ in range(n)])
        orders = rng.sample(all_orders(g), k=min(3, len(all_orders(g))))
        analyses.append(build_analysis(raw_doc, g, pure_nash(g), framing_report(g, orders)))
    stable = 0
    for a in analyses:
        text = export_analysis(a)
        again = export_analysis(parse_export(text))
        stable += again == text and export_analysis(a) == text
    assert criterion("9 round-trip and determinism", stable == len(analyses), f"{stable} analyses")
