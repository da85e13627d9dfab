import numpy as np
import pytest
from hypothesis import given

import oracles
from conftest import any_games, convex_games
from lorenzgame import (Game, check_property, egalitarian_set, lss, reduced_game, verify_crgp,
                        verify_external_lorenz_stability, verify_reduced_convexity, verify_rgp)
from lorenzgame.errors import ContractError, NotSupermodularError
from lorenzgame.game import members
from lorenzgame.verify import PROPERTIES, proper_coalitions, reduced_worth_matrix


def test_coalition_order():
    assert proper_coalitions(3) == [0b110, 0b101, 0b100, 0b011, 0b010, 0b001]


def test_lss_rgp_on_example(ex46):
    report = verify_rgp(ex46, "lss")
    assert report.holds and report.status == "holds"
    r = reduced_game(ex46, 0b110, (60, 70, 80))
    assert r.worth == (0, 60, 80, 150)
    assert (70, 80) in lss(r)


def test_egalitarian_rgp_counterexample(ex46):
    report = verify_rgp(ex46, "egalitarian")
    assert not report.holds
    assert report.status == "refuted (known failure)"
    ce = report.counterexample
    assert ce.x == (64, 65, 81) and ce.coalition == 0b110
    assert ce.detail["x_S"] == (65, 81)
    assert ce.detail["reduced_worths"] == {"2": 60, "3": 80, "2,3": 146}
    assert ce.detail["reduced_solution"] == [[66, 80]]
    # re-check from the fields alone
    r = reduced_game(ex46, ce.coalition, ce.x)
    assert tuple(ce.x[p] for p in members(ce.coalition)) not in egalitarian_set(r)


def test_core_rgp_on_example(ex46):
    report = verify_rgp(ex46, "core")
    assert report.holds and report.checked == 386 * 6


def _core_rgp_oracle(g):
    for x in sorted(oracles.core(g)):
        for s in proper_coalitions(g.n):
            red = oracles.reduced(g, members(s), x)
            pay = {p: x[p] for p in members(s)}
            if sum(pay.values()) != red[frozenset(members(s))]:
                return False
            if any(sum(pay[p] for p in t) < w for t, w in red.items()):
                return False
    return True


@given(any_games(max_n=4))
def test_core_rgp_on_arbitrary_games(g):
    assert _core_rgp_oracle(g)
    assert verify_rgp(g, "core").holds


def test_batch_reduced_worths_match_scalar_route():
    g = Game(3, (0, 1, 1, 2, 1, 2, 2, 3))
    X = np.array([[1, 1, 1], [0, 1, 2]])
    R = reduced_worth_matrix(g, 0b011, X)
    for row, x in zip(R, X.tolist()):
        assert tuple(row) == reduced_game(g, 0b011, x).worth


@given(convex_games(max_n=4, max_bound=4))
def test_lss_consistency(g):
    assert verify_rgp(g, "lss").holds
    assert verify_reduced_convexity(g).holds
    report = verify_crgp(g, "lss")
    assert report.holds
    assert report.skipped == (g.n == 2)


@given(convex_games(max_n=4, max_bound=4))
def test_core_converse(g):
    assert verify_crgp(g, "core").holds


def test_crgp_on_example(ex46):
    report = verify_crgp(ex46, "core")
    assert report.holds and report.checked == 544
    assert "386 satisfy" in report.note
    report = verify_crgp(ex46, "lss", margin=0)
    assert report.holds and "margin 0" in report.note


def test_crgp_two_players_is_skipped(ex41_2p):
    report = verify_crgp(ex41_2p, "core")
    assert report.skipped and report.holds and report.status == "skipped"
    assert "n >= 3" in report.note


def test_external_stability(ex46):
    report = verify_external_lorenz_stability(ex46)
    assert report.holds and report.checked == 473
    sym = Game.from_function(2, lambda s: len(s))
    assert verify_external_lorenz_stability(sym).holds


@given(convex_games(max_n=4, max_bound=4))
def test_external_stability_random(g):
    assert verify_external_lorenz_stability(g).holds


def test_contracts(ex46):
    with pytest.raises(ContractError):
        verify_rgp(ex46, "nucleolus")
    with pytest.raises(ContractError):
        verify_crgp(ex46, "egalitarian")
    with pytest.raises(NotSupermodularError):
        verify_rgp(Game(2, (0, 1, 1, 1)), "lss")
    with pytest.raises(ContractError):
        check_property("nope", ex46)


def test_named_properties(ex46):
    expected = {"core-rgp": True, "lss-rgp": True, "ega-rgp": False, "core-crgp": True,
                "lss-crgp": True, "external-stability": True, "lss-reduced-convex": True}
    assert set(PROPERTIES) == set(expected)
    for name, holds in expected.items():
        assert check_property(name, ex46).holds is holds
