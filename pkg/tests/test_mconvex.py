import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import any_games, convex_games
from lorenzgame import (Game, Tightening, additive_game, canonical_decomposition,
                        canonical_decomposition_by_threshold, core_enumerate, core_membership,
                        core_violation, dec_min_by_tightening, dec_min_set_by_tightening,
                        dec_min_set_structural, find_tightening, is_least_majorized,
                        lorenz_dominates, lss, random_game, value_equivalent)
from lorenzgame.errors import BudgetExceededError, ContractError, NotSupermodularError
from lorenzgame.game import members, popcount
from lorenzgame.mconvex import block_game, enumerate_base, threshold_maximizer

SPLIT_1 = Game(2, (0, 0, 0, 1))
SPLIT_5 = Game(2, (0, 0, 0, 5))
UNIT = Game.from_function(3, len)


def test_core_membership_examples(ex46):
    assert core_membership(ex46, None, (60, 70, 80))
    assert core_membership(ex46, None, (59, 71, 80))
    assert not core_membership(ex46, None, (64, 65, 81))
    bad = core_violation(ex46, None, (64, 65, 81))
    assert (bad.coalition, bad.payoff_sum, bad.worth) == (0b110, 146, 150)
    assert str(bad) == "x({2,3}) = 146 < 150 = v({2,3})"
    assert core_violation(ex46, None, (60, 70, 81)).kind == "efficiency"
    assert core_membership(ex46, 0b011, (50, 60))
    with pytest.raises(ContractError):
        core_membership(ex46, None, (1, 2))


def test_core_enumeration_examples(ex46):
    assert core_enumerate(SPLIT_1) == {(0, 1), (1, 0)}
    core = core_enumerate(ex46)
    assert (60, 70, 80) in core and (59, 71, 80) in core and (64, 65, 81) not in core
    assert len(core) == 386
    assert core_enumerate(additive_game((3, -2, 7))) == {(3, -2, 7)}
    assert core_enumerate(ex46, 0b110) == {(70 + k, 80 - k) for k in range(-10, 1)}


@given(any_games())
def test_core_enumeration_matches_brute_force(g):
    assert core_enumerate(g) == oracles.core(g)


@given(convex_games(max_n=4), st.data())
def test_subcoalition_cores(g, data):
    s = data.draw(st.integers(1, g.grand))
    assert core_enumerate(g, s) == oracles.core(g, members(s))


def test_empty_core_is_empty_set():
    g = Game(3, (0, 0, 0, 2, 0, 2, 2, 2))  # every pair wants 2 of a total 2
    assert len(core_enumerate(g)) == 0
    assert len(lss(g)) == 0


def test_budget(ex46):
    with pytest.raises(BudgetExceededError):
        core_enumerate(ex46, budget=50)
    with pytest.raises(BudgetExceededError):
        enumerate_base(ex46, budget=1)


def test_tightening_examples(ex46):
    step = find_tightening(ex46, (40, 70, 100))
    assert step == Tightening(0, 2)
    assert step.apply((40, 70, 100)) == (41, 70, 99)
    assert find_tightening(ex46, (60, 70, 80)) is None
    assert find_tightening(additive_game((1, 9)), (1, 9)) is None
    with pytest.raises(ContractError):
        find_tightening(ex46, (64, 65, 81))


def test_dec_min_by_tightening_examples(ex46):
    assert dec_min_by_tightening(ex46) == (60, 70, 80)
    assert dec_min_by_tightening(additive_game((4, -1, 0))) == (4, -1, 0)
    assert value_equivalent(dec_min_by_tightening(SPLIT_5), (3, 2))
    with pytest.raises(NotSupermodularError):
        dec_min_by_tightening(Game(2, (0, 1, 1, 1)))


@given(convex_games(max_n=4, max_bound=4))
def test_tightening_fixed_points_are_exactly_lss(g):
    L = lss(g)
    core = core_enumerate(g)
    sample = set(core[:: max(1, len(core) // 60)]) | set(L)
    for x in sample:
        assert (find_tightening(g, x) is None) == (x in L) == (not oracles.has_tightening(g, x))
    assert dec_min_by_tightening(g) in L


def test_canonical_decomposition_examples(ex46):
    dec = canonical_decomposition(ex46)
    assert dec.beta == (80, 70, 60)
    assert dec.partition == (0b100, 0b010, 0b001)
    assert dec.chain == (0b100, 0b110, 0b111)
    assert canonical_decomposition_by_threshold(ex46) == dec
    assert dec.block_of(1) == 1

    dec = canonical_decomposition(additive_game((5, 9, -3)))
    assert dec.beta == (9, 5, -3)
    assert dec.partition == (0b010, 0b001, 0b100)

    dec = canonical_decomposition(UNIT)
    assert (dec.beta, dec.partition) == ((1,), (0b111,))
    with pytest.raises(NotSupermodularError):
        canonical_decomposition(Game(2, (0, 1, 1, 1)))


@given(convex_games(max_n=5))
def test_both_decomposition_routes_agree(g):
    dec = canonical_decomposition(g)
    assert canonical_decomposition_by_threshold(g) == dec
    for b, c in zip(dec.beta, dec.chain):
        assert threshold_maximizer(g, b - 1) == c
    # each block is the smallest maximizer of h_k, checked by brute force
    prev = 0
    for b, s in zip(dec.beta, dec.partition):
        rest = [x for x in range(1 << g.n) if not x & prev]
        h = {x: g.worth[x | prev] - (b - 1) * popcount(x) - g.worth[prev] for x in rest}
        best = max(h.values())
        winners = [x for x in rest if h[x] == best]
        assert min(winners, key=popcount) == s
        assert all(w & s == s for w in winners)
        prev |= s


def test_structural_examples(ex46):
    assert dec_min_set_structural(ex46) == {(60, 70, 80)}
    assert dec_min_set_structural(SPLIT_5) == {(2, 3), (3, 2)}
    assert dec_min_set_structural(UNIT) == {(1, 1, 1)}
    dec = canonical_decomposition(ex46)
    assert block_game(ex46, dec, 1).worth == (0, 70)


def test_lss_examples(ex46):
    assert lss(ex46) == {(60, 70, 80)}
    assert lss(SPLIT_1) == {(0, 1), (1, 0)}


@given(convex_games(max_n=4))
def test_three_dec_min_routes_agree(g):
    expected = oracles.dec_min(oracles.core(g))
    assert lss(g) == expected
    assert dec_min_set_structural(g) == expected
    assert dec_min_set_by_tightening(g) == expected


@given(convex_games(max_n=4, max_bound=4))
def test_lss_structure(g):
    L = lss(g)
    core = core_enumerate(g)
    assert len(L) > 0
    first = L[0]
    dec = canonical_decomposition(g)
    for x in L:
        assert value_equivalent(x, first)
        for b, s, c in zip(dec.beta, dec.partition, dec.chain):
            assert all(x[i] in (b - 1, b) for i in members(s))
            assert sum(x[i] for i in members(c)) == g.worth[c]
    assert is_least_majorized(first, core)
    for y in core[:: max(1, len(core) // 60)]:
        if not value_equivalent(first, y):
            assert lorenz_dominates(first, y)


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_lss_on_nonconvex_games_is_the_filter(seed, n):
    g = random_game(seed, n, 4, noise=3)
    assert lss(g) == oracles.lorenz_undominated(oracles.core(g))


def test_scaled_example_pair(ex29, ex46):
    assert canonical_decomposition(ex29).beta == (8, 7, 6)
    assert canonical_decomposition(ex46).beta == (80, 70, 60)
    assert lss(ex29) == {(6, 7, 8)}
