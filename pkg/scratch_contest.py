"""Scratch: depth-2/3 contests for candidate no-go-again rule readings."""
import random
from kalahlab.engine import derive_seed
from kalahlab.stats import one_tailed_p

# ---- parametrized rules, mover-relative ----

def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


def make_game(nga_mode, ending="either"):
    """nga_mode: 'flip' (store landing banks, turn passes),
    'noend' (moves ending in own store are illegal),
    'storeless' (own store skipped entirely while sowing)."""

    def sow_mr(me, op, pit):
        h = len(me)
        if nga_mode == "storeless":
            ring_len = 2 * h
            ring = list(me) + list(op)
            stones = ring[pit]
            ring[pit] = 0
            q, r = divmod(stones, ring_len)
            if q:
                ring = [x + q for x in ring]
            for j in range(pit + 1, pit + 1 + r):
                ring[j % ring_len] += 1
            last = (pit + stones) % ring_len
            banked = 0
            if last < h and ring[last] == 1:
                opp_i = 2 * h - 1 - last
                if ring[opp_i]:
                    banked = ring[last] + ring[opp_i]
                    ring[last] = 0
                    ring[opp_i] = 0
            return tuple(ring[:h]), tuple(ring[h:]), banked, False
        ring_len = 2 * h + 1
        ring = list(me) + [0] + list(op)
        stones = ring[pit]
        ring[pit] = 0
        q, r = divmod(stones, ring_len)
        if q:
            ring = [x + q for x in ring]
        for j in range(pit + 1, pit + 1 + r):
            ring[j % ring_len] += 1
        last = (pit + stones) % ring_len
        banked = ring[h]
        in_store = last == h
        if last < h and ring[last] == 1:
            opp_i = 2 * h - last
            if ring[opp_i]:
                banked += ring[last] + ring[opp_i]
                ring[last] = 0
                ring[opp_i] = 0
        return tuple(ring[:h]), tuple(ring[h + 1:ring_len]), banked, in_store

    def legal(me, op):
        h = len(me)
        ms = [i for i, n in enumerate(me) if n]
        if nga_mode == "noend":
            ring_len = 2 * h + 1
            ms = [i for i in ms if (i + me[i]) % ring_len != h]
        return ms

    def apply_mr(me, op, d, pit):
        """-> (nme, nop, nd, same_mover, terminal_value_or_None), mover view."""
        nme, nop, nd0, in_store = sow_mr(me, op, pit)
        nd = d + nd0
        same = False  # no-go-again in all modes
        if ending == "either":
            if not any(nme):
                return nme, nop, nd, False, _sign(nd - sum(nop))
            if not any(nop):
                return nme, nop, nd, False, _sign(nd + sum(nme))
        else:
            if not any(nop):
                return nme, nop, nd, False, _sign(nd + sum(nme))
        if not legal(nop, nme):  # opponent has stones but no legal move
            return nme, nop, nd, False, _sign(nd + sum(nme) - sum(nop))
        return nme, nop, nd, same, None

    def terminal(me, op):
        if ending == "either" and not (any(me) and any(op)):
            return True
        return not legal(me, op)

    return legal, apply_mr, terminal


def contest(nga_mode, depth, boards, min_critical=100, alpha=0.05):
    legal, apply_mr, terminal = make_game(nga_mode)

    def search(me, op, d, dep, root_turn, rule, total):
        # value from the root player's perspective
        if dep == 0:
            a = d if root_turn else -d
            return a if rule == "mm" else 0.5 + a / (2.0 * total)
        vals = []
        for pit in legal(me, op):
            nme, nop, nd, same, tv = apply_mr(me, op, d, pit)
            if tv is not None:
                rv = tv if root_turn else -tv
                vals.append(rv * (total + 1) if rule == "mm" else 0.5 + 0.5 * rv)
            else:
                vals.append(search(nop, nme, -nd, dep - 1, not root_turn, rule, total))
        if root_turn:
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

    def play(board, first_rule, depth):
        me, op, d = board[0], board[1], 0
        total = sum(me) + sum(op)
        first_turn = True  # mover-relative: flag tracks if current mover is first player
        seen = set()
        while True:
            if terminal(me, op):
                fd = d if first_turn else -d
                return _sign(fd)
            key = (me, op, d, first_turn)
            if key in seen:
                return 0
            seen.add(key)
            rule = first_rule if first_turn else ("pr" if first_rule == "mm" else "mm")
            best_v, best_m = None, None
            for pit in legal(me, op):
                nme, nop, nd, same, tv = apply_mr(me, op, d, pit)
                if tv is not None:
                    rv = tv
                    v = rv * (total + 1) if rule == "mm" else 0.5 + 0.5 * rv
                else:
                    v = search(nop, nme, -nd, depth - 1, False, rule, total)
                if best_v is None or v > best_v:
                    best_v, best_m = v, pit
            nme, nop, nd, same, tv = apply_mr(me, op, d, best_m)
            me, op, d = nop, nme, -nd
            first_turn = not first_turn
            if tv is not None:
                # tv is for the mover who just played (= not first_turn now)
                return tv if not first_turn else -tv

    pairs = mm_better = consumed = 0
    for board in boards:
        if terminal(board[0], board[1]):
            continue
        consumed += 1
        a = play(board, "mm", depth)   # +1 = minimax (first) wins
        b = play(board, "pr", depth)   # +1 = product (first) wins
        mm_a, mm_b = a == 1, b == -1
        pr_a, pr_b = a == -1, b == 1
        if mm_a and mm_b:
            pairs += 1
            mm_better += 1
        elif pr_a and pr_b:
            pairs += 1
        if pairs >= min_critical:
            p = one_tailed_p(mm_better, pairs, "normal")
            if p < alpha:
                break
    p = one_tailed_p(mm_better, pairs, "normal") if pairs else 1.0
    return pairs, mm_better, p, consumed


if __name__ == "__main__":
    rng = random.Random(2024)
    boards = []
    while len(boards) < 1000:
        s = tuple(rng.randint(0, 6) for _ in range(3))
        t = tuple(rng.randint(0, 6) for _ in range(3))
        if any(s) and any(t):
            boards.append((s, t))
    print("paper Table 3 (no-go-again): d2 31.7% product, d3 41.7% product")
    for mode in ("flip", "noend", "storeless"):
        for depth in (2, 3):
            pairs, mm, p, consumed = contest(mode, depth, boards)
            pct = mm / pairs if pairs else float("nan")
            print(f"nga={mode:9s} d{depth}: pairs={pairs} mm={mm} pct={pct:.1%} p={p:.4f} consumed={consumed}", flush=True)
