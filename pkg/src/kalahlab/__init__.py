"""Kalah decision-rule workbench: rules engine, exhaustive solver,
minimax/product search, flaw-rate estimation and contest experiments."""

from .engine import (SKIP, Board, GameValue, IllegalMoveError, Move, Outcome,
                     Player, Variant, apply_move, board_from_line,
                     board_to_line, derive_seed, gen_random_board, is_terminal,
                     legal_moves, mirrored, opponent, random_prefix,
                     sweep_if_ended, terminal_value, total_stones)
from .search import (BackupRule, NodeKind, SearchResult, backup, choose_move,
                     kalah_advantage, to_win_prob)
from .solver import (SolveCache, loss_for, make_perfect_evaluator,
                     perfect_eval, solve, win_for)
from .rhf import (DecompositionReport, RhfEstimate, estimate_rhf,
                  verify_decomposition)
from .contest import (ContestRow, PairOutcome, classify_pair, play_game,
                      play_pair, run_contest)
from .stats import (Conclusion, TestResult, TwoProportionResult, conclude,
                    one_tailed_p, one_tailed_result, one_tailed_two_proportion)

__all__ = [
    "SKIP", "Board", "GameValue", "IllegalMoveError", "Move", "Outcome",
    "Player", "Variant", "apply_move", "board_from_line", "board_to_line",
    "derive_seed", "gen_random_board", "is_terminal", "legal_moves",
    "mirrored", "opponent", "random_prefix", "sweep_if_ended",
    "terminal_value", "total_stones",
    "BackupRule", "NodeKind", "SearchResult", "backup", "choose_move",
    "kalah_advantage", "to_win_prob",
    "SolveCache", "loss_for", "make_perfect_evaluator", "perfect_eval",
    "solve", "win_for",
    "DecompositionReport", "RhfEstimate", "estimate_rhf",
    "verify_decomposition",
    "ContestRow", "PairOutcome", "classify_pair", "play_game", "play_pair",
    "run_contest",
    "Conclusion", "TestResult", "TwoProportionResult", "conclude",
    "one_tailed_p", "one_tailed_result", "one_tailed_two_proportion",
]
