"""Exhaustive-solver tests against hand enumeration and a brute-force oracle."""

import itertools
import random

import pytest

from kalahlab import (Board, GameValue, Outcome, Player, Variant,
                      apply_move, gen_random_board, is_terminal, legal_moves,
                      loss_for, mirrored, perfect_eval, random_prefix, solve,
                      win_for)
from kalahlab.solver import SolveCache

from conftest import ALL_VARIANTS, brute_solve

S, N = Player.SOUTH, Player.NORTH
STD, NP, NGA = Variant.STANDARD, Variant.NO_PREMATURE, Variant.NO_GO_AGAIN


def board(south, north, stores=(0, 0), turn=S):
    return Board(tuple(south), tuple(north), stores[0], stores[1], turn)


class TestTerminalAndFixtures:
    def test_settled_terminal_boards(self):
        b = board([0, 0, 0], [0, 0, 0], (7, 11))
        for variant in ALL_VARIANTS:
            assert solve(b, variant).outcome == Outcome.LOSS

    def test_unsettled_terminal_is_swept_first(self):
        # north's 5 leftover stones decide the game once banked
        b = board([0, 0, 0], [5, 0, 0], (3, 0))
        assert solve(b, STD).outcome == Outcome.LOSS

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_hand_enumerated_tie(self, variant):
        # S=[0,0,1] N=[0,0,1]: south's only move banks its stone and empties
        # the south side, so north banks its own stone: 1-1 in all variants
        # (in no-premature the forced continuation reaches the same stores).
        b = board([0, 0, 1], [0, 0, 1])
        assert solve(b, variant).outcome == Outcome.TIE

    def test_hand_enumerated_win(self):
        # S=[0,1,1] N=[0,0,1]: both south moves force 2-1 (enumerated by
        # hand: every line ends with north banking one stone, south two).
        b = board([0, 1, 1], [0, 0, 1])
        assert solve(b, STD).outcome == Outcome.WIN

    def test_perspective_is_south(self):
        value = solve(board([0, 1, 1], [0, 0, 1]), STD)
        assert value == GameValue(Outcome.WIN, S)
        assert value.for_player(N) == Outcome.LOSS


class TestWinLossEvents:
    def test_win_for_and_loss_for(self):
        win_south = GameValue(Outcome.WIN, S)
        assert win_for(win_south, S) and not loss_for(win_south, S)
        assert loss_for(win_south, N) and not win_for(win_south, N)
        tie = GameValue(Outcome.TIE, S)
        assert not win_for(tie, S) and not loss_for(tie, S)
        assert not win_for(tie, N) and not loss_for(tie, N)


class TestSolverProperties:
    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_matches_brute_force_on_sampled_positions(self, variant, caches):
        rng = random.Random(21)
        checked = 0
        while checked < 60:
            b = gen_random_board(3, 2, rng)
            pos = random_prefix(b, rng.randrange(4), variant, rng)
            if pos is None:
                continue
            assert solve(pos, variant, caches[variant]).outcome == \
                brute_solve(pos, variant)
            checked += 1

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_mirror_antisymmetry(self, variant, caches):
        rng = random.Random(22)
        for _ in range(60):
            b = gen_random_board(3, 4, rng)
            pos = random_prefix(b, rng.randrange(5), variant, rng)
            if pos is None:
                continue
            value = solve(pos, variant, caches[variant])
            flipped = solve(mirrored(pos), variant, caches[variant])
            assert flipped.outcome == value.for_player(N)

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_value_is_best_child_for_the_mover(self, variant, caches):
        rng = random.Random(23)
        for _ in range(60):
            b = gen_random_board(3, 4, rng)
            pos = random_prefix(b, rng.randrange(5), variant, rng)
            if pos is None or is_terminal(pos, variant):
                continue
            mover = pos.to_move
            children = [solve(apply_move(pos, m, variant), variant,
                              caches[variant]).for_player(mover)
                        for m in legal_moves(pos, variant)]
            assert solve(pos, variant, caches[variant]).for_player(mover) == \
                max(children)

    def test_cache_transparency(self):
        rng = random.Random(24)
        boards = [gen_random_board(3, 4, rng) for _ in range(20)]
        cache = SolveCache()
        cold = [solve(b, STD, cache) for b in boards]
        warm = [solve(b, STD, cache) for b in boards]
        none = [solve(b, STD, None) for b in boards]
        fresh = [solve(b, STD, SolveCache()) for b in boards]
        assert cold == warm == none == fresh

    def test_hit_and_miss_counters(self):
        cache = SolveCache()
        b = gen_random_board(3, 4, random.Random(25))
        solve(b, STD, cache)
        misses_after_cold = cache.misses
        assert misses_after_cold > 0
        solve(b, STD, cache)
        assert cache.hits > 0
        assert cache.misses == misses_after_cold

    def test_variants_do_not_share_entries(self, caches):
        b = board([1, 2, 1], [2, 1, 2])
        # values may coincide, but the maps must be distinct
        cache = SolveCache()
        solve(b, STD, cache)
        std_size = len(cache.map_for(STD))
        assert std_size > 0
        assert len(cache.map_for(NGA)) == 0

    def test_persistence_round_trip(self, tmp_path):
        cache = SolveCache()
        rng = random.Random(26)
        boards = [gen_random_board(3, 3, rng) for _ in range(10)]
        expected = [solve(b, v, cache) for b in boards for v in ALL_VARIANTS]
        path = tmp_path / "cache.txt"
        cache.save(path)
        loaded = SolveCache.load(path)
        assert len(loaded) == len(cache)
        again = [solve(b, v, loaded) for b in boards for v in ALL_VARIANTS]
        assert again == expected
        assert loaded.misses == 0  # everything answered from the dump

    def test_rejects_unknown_dump_format(self, tmp_path):
        path = tmp_path / "cache.txt"
        path.write_text("something else v9\n")
        with pytest.raises(ValueError):
            SolveCache.load(path)

    def test_oversized_boards_are_rejected(self):
        b = board([5000, 0, 0], [1, 1, 1])
        with pytest.raises(ValueError):
            solve(b, STD)


class TestPerfectEval:
    def test_maps_outcomes_to_probabilities(self, caches):
        win = board([0, 1, 1], [0, 0, 1])
        assert perfect_eval(win, STD, caches[STD], S) == 1.0
        assert perfect_eval(win, STD, caches[STD], N) == 0.0
        tie = board([0, 0, 0], [0, 0, 0], (9, 9))
        assert perfect_eval(tie, STD, caches[STD], S) == 0.5

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_agrees_with_solve_on_random_positions(self, variant, caches):
        rng = random.Random(27)
        agreements = 0
        while agreements < 100:
            b = gen_random_board(3, 4, rng)
            pos = random_prefix(b, rng.randrange(5), variant, rng)
            if pos is None:
                continue
            outcome = solve(pos, variant, caches[variant]).for_player(S)
            assert perfect_eval(pos, variant, caches[variant], S) == \
                0.5 + 0.5 * outcome
            agreements += 1
