"""Scratch: contests with depth counted in complete turns (go-again sows
cost no depth)."""
import random
import time
from kalahlab import (Board, BackupRule, Outcome, Player, Variant,
                      apply_move, gen_random_board, is_terminal,
                      terminal_value, total_stones)
from kalahlab.engine import SKIP
from kalahlab.stats import one_tailed_p


def choose_move_turndepth(board, variant, rule, depth):
    root_player = board.to_move
    total = total_stones(board)
    win_tip = total + 1
    south_root = root_player == Player.SOUTH

    def moves_of(b):
        mover = b[0] if b[4] == 0 else b[1]
        ms = [i for i, n in enumerate(mover) if n]
        return ms or [SKIP]

    def rec(b, d, rule):
        if is_terminal(b, variant):
            diff = b[2] - b[3] if south_root else b[3] - b[2]
            if rule == "mm":
                return win_tip if diff > 0 else -win_tip if diff < 0 else 0
            return 1.0 if diff > 0 else 0.0 if diff < 0 else 0.5
        if d == 0:
            a = b[2] - b[3] if south_root else b[3] - b[2]
            return a if rule == "mm" else 0.5 + a / (2.0 * total)
        vals = []
        for m in moves_of(b):
            nb = apply_move(b, m, variant)
            # a go-again continuation stays on the same search level
            nd = d if (nb[4] == b[4] and not is_terminal(nb, variant)) else d - 1
            vals.append(rec(nb, nd, rule))
        if b[4] == root_player:
            if rule == "mm":
                return max(vals)
            acc = 1.0
            for v in vals:
                acc *= 1.0 - v
            return 1.0 - acc
        if rule == "mm":
            return min(vals)
        acc = 1.0
        for v in vals:
            acc *= v
        return acc

    best_m, best_v = None, None
    for m in moves_of(board):
        nb = apply_move(board, m, variant)
        nd = depth if (nb[4] == board[4] and not is_terminal(nb, variant)) else depth - 1
        v = rec(nb, nd, rule)
        if best_v is None or v > best_v:
            best_v, best_m = v, m
    return best_m


def play(board, variant, first_rule, second_rule, depth):
    first = board.to_move
    seen = {board}
    while not is_terminal(board, variant):
        rule = first_rule if board.to_move == first else second_rule
        board = apply_move(board, choose_move_turndepth(board, variant, rule, depth), variant)
        if board in seen:
            return Outcome.TIE
        seen.add(board)
    return terminal_value(board, first).outcome


def contest(boards, variant, depth, min_critical=100, alpha=0.05):
    pairs = mm = 0
    for b in boards:
        a = play(b, variant, "mm", "pr", depth)
        c = play(b, variant, "pr", "mm", depth)
        mm_both = a is Outcome.WIN and c is Outcome.LOSS
        pr_both = a is Outcome.LOSS and c is Outcome.WIN
        if mm_both or pr_both:
            pairs += 1
            mm += mm_both
            if pairs >= min_critical and one_tailed_p(mm, pairs) < alpha:
                break
    return pairs, mm, one_tailed_p(mm, pairs) if pairs else 1.0


if __name__ == "__main__":
    rng = random.Random(42)
    boards = [gen_random_board(3, 6, rng) for _ in range(1000)]
    paper = {2: "26.7% P", 3: "65.3% M", 4: "38.6% P", 5: "52.0% ns", 6: "41.6% P", 7: "42.1% P"}
    t0 = time.time()
    for depth in range(2, 8):
        pairs, mm, p = contest(boards, Variant.STANDARD, depth)
        print(f"std(turn-depth) d{depth}: pairs={pairs} mm={mm} pct={mm/pairs:.1%} p={p:.4f} [paper: {paper[depth]}]", flush=True)
    print(f"{time.time()-t0:.0f}s")
