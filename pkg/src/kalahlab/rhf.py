"""Rate-of-heuristic-flaw estimation over solver-labeled sibling positions.

Starting from each opening board, a few random moves are played, and every
ordered pair (m, n) of children of the resulting position with e(m) >= e(n)
is tallied: event F is "m is a forced loss for the mover", and a flaw is
"F and n is a forced win".  The flaw rate is the quotient of those tallies.
Also verifies the win-probability decomposition
Pr{Win(c)} = Pr{Win(m)} + Pr{Loss(m)} * Pr{Win(n) | Loss(m)}
on positions with exactly two children.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .engine import (Board, Outcome, Player, Variant, apply_move, derive_seed,
                     is_terminal, legal_moves, random_prefix)
from .search import kalah_advantage
from .solver import SolveCache, solve

Evaluator = Callable[[Board, Player], float]


@dataclass
class RhfEstimate:
    f_count: int
    fwin_count: int
    rhf: Optional[float]  # None when no F event was observed
    boards_used: int
    boards_discarded: int

    @property
    def defined(self) -> bool:
        return self.rhf is not None


@dataclass
class DecompositionReport:
    lhs: Optional[float]  # Pr{Win(c) | e(m) >= e(n)} over all samples
    rhs: Optional[float]
    sample_size: int
    tie_count: int  # samples where c, m or n is a solved tie
    lhs_tie_free: Optional[float]
    rhs_tie_free: Optional[float]

    @property
    def empty(self) -> bool:
        return self.sample_size == 0


def _labeled_children(board: Board, variant: Variant, cache: SolveCache,
                      evaluator: Optional[Evaluator] = None):
    """Children of `board` with their static value for the mover and their
    solved outcome, in move order."""
    mover = board.to_move
    out = []
    for move in legal_moves(board, variant):
        child = apply_move(board, move, variant)
        if evaluator is None:
            e = kalah_advantage(child, mover)
        else:
            e = evaluator(child, mover)
        outcome = solve(child, variant, cache).for_player(mover)
        out.append((e, outcome))
    return out


def estimate_rhf(boards: Sequence[Board], variant: Variant, *,
                 prefix_len: int = 4, rng: random.Random,
                 cache: Optional[SolveCache] = None,
                 evaluator: Optional[Evaluator] = None) -> RhfEstimate:
    """Tally flaw events over the sibling pairs reached from each board.

    Boards whose random prefix runs into the end of the game contribute
    nothing and are counted as discarded.  Each board gets its own sub-seed
    derived from `rng`, so tallies are independent of processing order.
    `evaluator` replaces the banked-stone advantage when given (e.g. the
    solver-backed perfect evaluator, under which the flaw rate is zero).
    """
    if not boards:
        raise ValueError("need at least one board")
    if cache is None:
        cache = SolveCache()
    master = rng.getrandbits(64)
    f_count = 0
    fwin_count = 0
    used = 0
    discarded = 0
    for index, board in enumerate(boards):
        sub_rng = random.Random(derive_seed(master, index))
        position = random_prefix(board, prefix_len, variant, sub_rng)
        if position is None or is_terminal(position, variant):
            discarded += 1
            continue
        used += 1
        children = _labeled_children(position, variant, cache, evaluator)
        for i, (adv_m, out_m) in enumerate(children):
            if out_m is not Outcome.LOSS:
                continue
            for j, (adv_n, out_n) in enumerate(children):
                if i == j or adv_m < adv_n:
                    continue
                f_count += 1
                if out_n is Outcome.WIN:
                    fwin_count += 1
    rate = fwin_count / f_count if f_count else None
    return RhfEstimate(f_count, fwin_count, rate, used, discarded)


def verify_decomposition(boards: Sequence[Board], variant: Variant, *,
                         prefix_len: int = 4, rng: random.Random,
                         cache: Optional[SolveCache] = None) -> DecompositionReport:
    """Check the two-child win-probability identity empirically.

    Only sampled positions with exactly two children qualify.  On the
    subsample where none of c, m, n is a tie the identity holds exactly by
    counting; the full-sample figures are reported alongside.
    """
    if not boards:
        raise ValueError("need at least one board")
    if cache is None:
        cache = SolveCache()
    master = rng.getrandbits(64)
    n_all = 0
    win_c = 0
    win_m = 0
    loss_m = 0
    loss_m_win_n = 0
    n_tf = 0
    tf_win_c = 0
    tf_win_m = 0
    tf_loss_m = 0
    tf_loss_m_win_n = 0
    for index, board in enumerate(boards):
        sub_rng = random.Random(derive_seed(master, index))
        position = random_prefix(board, prefix_len, variant, sub_rng)
        if position is None or is_terminal(position, variant):
            continue
        children = _labeled_children(position, variant, cache)
        if len(children) != 2:
            continue
        out_c = solve(position, variant, cache).for_player(position.to_move)
        for (adv_m, out_m), (adv_n, out_n) in ((children[0], children[1]),
                                               (children[1], children[0])):
            if adv_m < adv_n:
                continue
            n_all += 1
            win_c += out_c is Outcome.WIN
            win_m += out_m is Outcome.WIN
            if out_m is Outcome.LOSS:
                loss_m += 1
                loss_m_win_n += out_n is Outcome.WIN
            if Outcome.TIE in (out_c, out_m, out_n):
                continue
            n_tf += 1
            tf_win_c += out_c is Outcome.WIN
            tf_win_m += out_m is Outcome.WIN
            if out_m is Outcome.LOSS:
                tf_loss_m += 1
                tf_loss_m_win_n += out_n is Outcome.WIN

    def _rhs(total, wins_m, losses_m, flaw_wins):
        if not total:
            return None
        p_win_m = wins_m / total
        p_loss_m = losses_m / total
        cond = flaw_wins / losses_m if losses_m else 0.0
        return p_win_m + p_loss_m * cond

    return DecompositionReport(
        lhs=win_c / n_all if n_all else None,
        rhs=_rhs(n_all, win_m, loss_m, loss_m_win_n),
        sample_size=n_all,
        tie_count=n_all - n_tf,
        lhs_tie_free=tf_win_c / n_tf if n_tf else None,
        rhs_tie_free=_rhs(n_tf, tf_win_m, tf_loss_m, tf_loss_m_win_n),
    )
