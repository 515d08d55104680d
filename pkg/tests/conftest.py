import random

import pytest

from kalahlab import (Board, Outcome, Player, Variant, gen_random_board,
                      is_terminal, legal_moves, apply_move, sweep_if_ended,
                      terminal_value)
from kalahlab.solver import SolveCache

ALL_VARIANTS = list(Variant)


def brute_solve(board, variant, path=frozenset()):
    """Plain exhaustive recursion over the public engine ops: no cache, no
    shortcuts, repetitions on the path score as ties.  The independent
    oracle the production solver is checked against."""
    if is_terminal(board, variant):
        return terminal_value(sweep_if_ended(board, variant), Player.SOUTH).outcome
    if board in path:
        return Outcome.TIE
    path = path | {board}
    mover = board.to_move
    best = None
    for move in legal_moves(board, variant):
        value = brute_solve(apply_move(board, move, variant), variant, path)
        gain = value if mover == Player.SOUTH else Outcome(-value)
        if best is None or gain > best:
            best = gain
    return best if mover == Player.SOUTH else Outcome(-best)


@pytest.fixture(scope="session")
def caches():
    """One shared solve cache per variant for the whole test run."""
    return {variant: SolveCache() for variant in ALL_VARIANTS}


@pytest.fixture(scope="session")
def population():
    """The 1000-board opening population every experiment criterion uses."""
    rng = random.Random(42)
    return [gen_random_board(3, 6, rng) for _ in range(1000)]
