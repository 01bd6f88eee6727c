import random
from fractions import Fraction as F
from itertools import chain, combinations

import pytest

from streamshare import (
    build_problem,
    derive,
    dual_game,
    optimistic_game,
    pessimistic_game,
    shapley_index,
    shapley_value_brute_force,
)
from streamshare.game import CoalitionGame, TooManyArtists

from helpers import example_1, random_problem


def subsets(items):
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def naive_pessimistic_worth(p, coalition):
    """Direct set-inclusion count, independent of the table construction."""
    stats = derive(p)
    s = set(coalition)
    return sum(1 for u in p.users if stats.listening[u] <= s)


def naive_optimistic_worth(p, coalition):
    stats = derive(p)
    s = set(coalition)
    return sum(1 for u in p.users if stats.listening[u] & s)


class TestGameConstruction:
    def test_example_1_pessimistic(self):
        g = pessimistic_game(example_1())
        assert g.value([]) == 0
        assert g.value(["1"]) == 1
        assert g.value(["2"]) == 2
        assert g.value(["1", "2"]) == 3

    def test_example_1_optimistic(self):
        g = optimistic_game(example_1())
        assert g.value(["1"]) == 1
        assert g.value(["2"]) == 2
        assert g.value(["1", "2"]) == 3

    def test_everyone_streams_both(self):
        p = build_problem(["1", "2"], ["a", "b"], [[1, 1], [1, 1]])
        g = pessimistic_game(p)
        assert g.value(["1"]) == g.value(["2"]) == 0
        assert g.value(["1", "2"]) == 2
        go = optimistic_game(p)
        assert go.value(["1"]) == go.value(["2"]) == 2

    def test_grand_coalition_and_empty(self):
        rng = random.Random(11)
        for _ in range(20):
            p = random_problem(rng, max_n=4, max_m=5)
            for g in (pessimistic_game(p), optimistic_game(p)):
                assert g.worth[0] == 0
                assert g.worth[-1] == p.m

    def test_tables_match_naive_counts(self):
        rng = random.Random(13)
        for _ in range(20):
            p = random_problem(rng, max_n=5, max_m=5)
            g = pessimistic_game(p)
            go = optimistic_game(p)
            for coalition in subsets(p.artists):
                assert g.value(coalition) == naive_pessimistic_worth(p, coalition)
                assert go.value(coalition) == naive_optimistic_worth(p, coalition)

    def test_monotonicity(self):
        rng = random.Random(17)
        for _ in range(10):
            p = random_problem(rng, max_n=4, max_m=4)
            for g in (pessimistic_game(p), optimistic_game(p)):
                for s in range(1 << p.n):
                    for b in range(p.n):
                        if not s >> b & 1:
                            assert g.worth[s] <= g.worth[s | 1 << b]

    def test_cap(self):
        p = build_problem(["1", "2"], ["a"], [[1], [1]])
        with pytest.raises(TooManyArtists):
            pessimistic_game(p, cap=1)
        with pytest.raises(TooManyArtists):
            optimistic_game(p, cap=1)


class TestDuality:
    def test_example_1_dual_equals_optimistic(self):
        p = example_1()
        assert dual_game(pessimistic_game(p)).worth == optimistic_game(p).worth

    def test_dual_is_involution(self):
        rng = random.Random(19)
        for _ in range(10):
            p = random_problem(rng, max_n=5, max_m=5)
            g = pessimistic_game(p)
            assert dual_game(dual_game(g)).worth == g.worth

    def test_hand_evaluated_identity(self):
        p = build_problem(["1", "2"], ["a", "b"], [[1, 1], [1, 1]])
        dual = dual_game(pessimistic_game(p))
        assert dual.value(["1"]) == 2 == optimistic_game(p).value(["1"])

    def test_duality_on_random_problems(self):
        rng = random.Random(23)
        for _ in range(30):
            p = random_problem(rng, max_n=6, max_m=6)
            assert dual_game(pessimistic_game(p)).worth == optimistic_game(p).worth


class TestBruteForceShapley:
    def test_example_1_matches_closed_form(self):
        p = example_1()
        vec = shapley_value_brute_force(pessimistic_game(p), method="permutation")
        assert vec.values == (F(1), F(2))

    def test_optimistic_game_same_value(self):
        p = example_1()
        vec = shapley_value_brute_force(optimistic_game(p), method="permutation")
        assert vec.values == (F(1), F(2))

    def test_additive_game(self):
        players = ("x", "y", "z")
        worth = tuple(s.bit_count() for s in range(8))
        g = CoalitionGame(players, worth, "additive")
        vec = shapley_value_brute_force(g)
        assert vec.values == (F(1), F(1), F(1))

    def test_matches_closed_form_on_random_problems(self):
        rng = random.Random(29)
        for _ in range(30):
            p = random_problem(rng, max_n=5, max_m=5)
            g = pessimistic_game(p)
            assert shapley_value_brute_force(g, method="permutation").values \
                == shapley_index(p).values

    def test_subset_mode_agrees_with_permutation_mode(self):
        rng = random.Random(31)
        for _ in range(20):
            p = random_problem(rng, max_n=6, max_m=5)
            g = pessimistic_game(p)
            assert shapley_value_brute_force(g, method="subset").values \
                == shapley_value_brute_force(g, method="permutation").values

    def test_dual_invariance(self):
        rng = random.Random(37)
        for _ in range(15):
            p = random_problem(rng, max_n=5, max_m=4)
            g = pessimistic_game(p)
            assert shapley_value_brute_force(g).values \
                == shapley_value_brute_force(dual_game(g)).values

    def test_efficiency(self):
        rng = random.Random(41)
        for _ in range(15):
            p = random_problem(rng, max_n=5, max_m=5)
            g = optimistic_game(p)
            vec = shapley_value_brute_force(g)
            assert vec.total == g.worth[-1]

    def test_caps(self):
        p = build_problem(["1", "2"], ["a"], [[1], [1]])
        g = pessimistic_game(p)
        with pytest.raises(TooManyArtists):
            shapley_value_brute_force(g, method="permutation", permutation_cap=1)
        with pytest.raises(TooManyArtists):
            shapley_value_brute_force(g, method="subset", table_cap=1)
        with pytest.raises(ValueError):
            shapley_value_brute_force(g, method="bogus")
