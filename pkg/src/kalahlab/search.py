"""Depth-limited game-tree search under the minimax and product back-up rules.

Every move costs one ply, including go-again continuations and skips, so the
tree is not strictly alternating: a node is a MAX node whenever the player to
move there is the player searching at the root.  Tip positions that are
terminal are scored exactly; the depth frontier is scored by a pluggable
static evaluator (default: store difference, mapped onto a win probability
for the product rule).
"""

from __future__ import annotations

import enum
from typing import Callable, Iterable, NamedTuple, Optional

from .engine import (SKIP, Board, Player, Variant, apply_move, is_terminal,
                     total_stones)


class BackupRule(enum.Enum):
    MINIMAX = "minimax"
    PRODUCT = "product"

    def __str__(self) -> str:
        return self.value


class NodeKind(enum.Enum):
    MAX = "max"
    MIN = "min"


class SearchResult(NamedTuple):
    chosen: int
    value: float
    nodes_expanded: int
    depth: int


#: Tip evaluator signature: (board, perspective) -> value.
Evaluator = Callable[[Board, Player], float]


def kalah_advantage(board: Board, perspective: Player) -> int:
    """Banked-stone lead: perspective's store minus the opponent's."""
    diff = board.store_south - board.store_north
    return -diff if perspective == Player.NORTH else diff


def to_win_prob(advantage: int, total_stones: int) -> float:
    """Map a stone advantage linearly onto [0, 1]: 0.5 + a / 2T."""
    if total_stones < 1:
        raise ValueError("total_stones must be >= 1")
    if abs(advantage) > total_stones:
        raise ValueError("advantage cannot exceed the stones in play")
    return 0.5 + advantage / (2.0 * total_stones)


def backup(values: Iterable[float], node_kind: NodeKind, rule: BackupRule) -> float:
    """Combine child values into a parent value.

    MINIMAX takes the max (MAX node) or min (MIN node).  PRODUCT treats the
    values as independent win probabilities for the root player:
    1 - prod(1 - v) at MAX nodes, prod(v) at MIN nodes.
    """
    vals = list(values)
    if not vals:
        raise ValueError("backup needs at least one value")
    if rule is BackupRule.MINIMAX:
        return max(vals) if node_kind is NodeKind.MAX else min(vals)
    acc = 1.0
    if node_kind is NodeKind.MAX:
        for v in vals:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"product rule value {v} outside [0, 1]")
            acc *= 1.0 - v
        return 1.0 - acc
    for v in vals:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"product rule value {v} outside [0, 1]")
        acc *= v
    return acc


def _root_moves(board: Board, variant: Variant) -> list[int]:
    mover = board.pits_south if board.to_move == Player.SOUTH else board.pits_north
    moves = [i for i, n in enumerate(mover) if n]
    if not moves:
        if variant is not Variant.NO_PREMATURE:
            raise ValueError("cannot search a terminal position")
        return [SKIP]
    return moves


def choose_move(board: Board, variant: Variant, rule: BackupRule, depth: int,
                evaluator: Optional[Evaluator] = None) -> SearchResult:
    """Search `depth` plies ahead and pick the root move with the best
    backed-up value; ties go to the lowest pit index (SKIP last).

    Terminal tips score +-(T+1) / 0 under MINIMAX and 1 / 0.5 / 0 under
    PRODUCT (T = stones on the board), which dominates any heuristic tip.
    For MINIMAX the subtrees below the root are searched with fail-soft
    alpha-beta inside the window (best so far, +inf); a pruned sibling can
    only be proven no better than the incumbent, so the chosen move is
    identical to the unpruned search, tie-breaks included.
    """
    if depth < 1:
        raise ValueError("search depth must be >= 1")
    if is_terminal(board, variant):
        raise ValueError("cannot search a terminal position")
    root_player = board.to_move
    total = total_stones(board)
    south_root = root_player == Player.SOUTH

    if evaluator is None:
        if south_root:
            tip_eval = lambda b: b[2] - b[3]  # noqa: E731
        else:
            tip_eval = lambda b: b[3] - b[2]  # noqa: E731
        if rule is BackupRule.PRODUCT:
            scale = 2.0 * total
            raw = tip_eval
            tip_eval = lambda b: 0.5 + (raw(b)) / scale  # noqa: E731
    else:
        tip_eval = lambda b: evaluator(b, root_player)  # noqa: E731

    nodes = [1]  # the root expansion
    win_tip = total + 1

    def moves_of(b: Board) -> list[int]:
        mover = b[0] if b[4] == 0 else b[1]
        ms = [i for i, n in enumerate(mover) if n]
        if not ms:
            return [SKIP]  # nonterminal with a stuck mover: NO_PREMATURE only
        return ms

    if rule is BackupRule.MINIMAX:

        def mm(b: Board, d: int, alpha: float, beta: float) -> float:
            if is_terminal(b, variant):
                diff = b[2] - b[3] if south_root else b[3] - b[2]
                return win_tip if diff > 0 else -win_tip if diff < 0 else 0
            if d == 0:
                return tip_eval(b)
            nodes[0] += 1
            if b[4] == root_player:
                best = -1e18
                for m in moves_of(b):
                    v = mm(apply_move(b, m, variant), d - 1, alpha, beta)
                    if v > best:
                        best = v
                        if best >= beta:
                            return best
                        if best > alpha:
                            alpha = best
                return best
            best = 1e18
            for m in moves_of(b):
                v = mm(apply_move(b, m, variant), d - 1, alpha, beta)
                if v < best:
                    best = v
                    if best <= alpha:
                        return best
                    if best < beta:
                        beta = best
            return best

        best_move = None
        best_val = -1e18
        for m in _root_moves(board, variant):
            v = mm(apply_move(board, m, variant), depth - 1, best_val, 1e18)
            if v > best_val:
                best_val, best_move = v, m
        return SearchResult(best_move, best_val, nodes[0], depth)

    def pr(b: Board, d: int) -> float:
        if is_terminal(b, variant):
            diff = b[2] - b[3] if south_root else b[3] - b[2]
            return 1.0 if diff > 0 else 0.0 if diff < 0 else 0.5
        if d == 0:
            v = tip_eval(b)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"product rule evaluator returned {v}, outside [0, 1]")
            return v
        nodes[0] += 1
        acc = 1.0
        if b[4] == root_player:
            for m in moves_of(b):
                acc *= 1.0 - pr(apply_move(b, m, variant), d - 1)
            return 1.0 - acc
        for m in moves_of(b):
            acc *= pr(apply_move(b, m, variant), d - 1)
        return acc

    best_move = None
    best_val = -1.0
    for m in _root_moves(board, variant):
        v = pr(apply_move(board, m, variant), depth - 1)
        if v > best_val:
            best_val, best_move = v, m
    return SearchResult(best_move, best_val, nodes[0], depth)
