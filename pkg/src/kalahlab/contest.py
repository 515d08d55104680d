"""Paired-game contests between the minimax and product decision rules.

Each opening board is played twice at a fixed search depth, once with each
rule moving first.  A pair where one rule wins both games is critical; the
contest walks the board list accumulating critical pairs and stops as soon
as at least `min_critical` of them have been seen and the one-tailed
significance of the split clears `alpha`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .engine import (Board, GameValue, Outcome, Variant, apply_move,
                     is_terminal, terminal_value)
from .search import BackupRule, choose_move
from .stats import Conclusion, conclude, one_tailed_p


class PairOutcome(enum.Enum):
    MINIMAX_BETTER = "minimax"
    PRODUCT_BETTER = "product"
    NOT_CRITICAL = "not critical"


@dataclass
class ContestRow:
    variant: Variant
    depth: int
    pairs_examined: int
    minimax_better: int
    pct: Optional[float]
    p_value: Optional[float]
    conclusion: Conclusion
    boards_consumed: int

    @property
    def degenerate(self) -> bool:
        return self.pairs_examined == 0


def play_game(board: Board, variant: Variant, first_rule: BackupRule,
              second_rule: BackupRule, depth: int) -> GameValue:
    """Play one game to the end and score it for the player moving first.

    The engine owning the player to move picks each move at the fixed depth;
    go-agains keep the same engine moving.  A repeated position is called a
    tie outright (it cannot arise under the kalah rules, but guarantees
    termination).
    """
    first_player = board.to_move
    seen = {board}
    while not is_terminal(board, variant):
        rule = first_rule if board.to_move == first_player else second_rule
        move = choose_move(board, variant, rule, depth).chosen
        board = apply_move(board, move, variant)
        if board in seen:
            return GameValue(Outcome.TIE, first_player)
        seen.add(board)
    return terminal_value(board, first_player)


def classify_pair(minimax_first: GameValue, product_first: GameValue) -> PairOutcome:
    """Classify a pair from the two first-mover results."""
    minimax_won_a = minimax_first.outcome is Outcome.WIN
    product_won_a = minimax_first.outcome is Outcome.LOSS
    product_won_b = product_first.outcome is Outcome.WIN
    minimax_won_b = product_first.outcome is Outcome.LOSS
    if minimax_won_a and minimax_won_b:
        return PairOutcome.MINIMAX_BETTER
    if product_won_a and product_won_b:
        return PairOutcome.PRODUCT_BETTER
    return PairOutcome.NOT_CRITICAL


def play_pair(board: Board, variant: Variant, depth: int) -> PairOutcome:
    """Play the board twice, seats swapped, and classify the pair."""
    game_a = play_game(board, variant, BackupRule.MINIMAX, BackupRule.PRODUCT, depth)
    game_b = play_game(board, variant, BackupRule.PRODUCT, BackupRule.MINIMAX, depth)
    return classify_pair(game_a, game_b)


def tally_outcomes(outcomes: Iterable[PairOutcome], variant: Variant, depth: int,
                   alpha: float, min_critical: int) -> ContestRow:
    """Sequential tallying with the stopping rule, factored out so the
    stopping behavior can be exercised on synthetic outcome streams."""
    pairs = 0
    minimax_better = 0
    consumed = 0
    p = None
    for outcome in outcomes:
        consumed += 1
        if outcome is PairOutcome.NOT_CRITICAL:
            continue
        pairs += 1
        minimax_better += outcome is PairOutcome.MINIMAX_BETTER
        if pairs >= min_critical:
            p = one_tailed_p(minimax_better, pairs, "normal")
            if p < alpha:
                break
    if pairs == 0:
        return ContestRow(variant, depth, 0, 0, None, None,
                          Conclusion.NOT_SIGNIFICANT, consumed)
    p = one_tailed_p(minimax_better, pairs, "normal")
    return ContestRow(variant, depth, pairs, minimax_better,
                      minimax_better / pairs, p,
                      conclude(minimax_better, pairs, alpha), consumed)


def run_contest(boards: Sequence[Board], variant: Variant, depth: int,
                alpha: float = 0.05, min_critical: int = 100) -> ContestRow:
    """Contest the two rules over the board list at one depth."""
    if not boards:
        raise ValueError("need at least one board")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return tally_outcomes(
        (play_pair(board, variant, depth) for board in boards),
        variant, depth, alpha, min_critical)
