"""Scratch grid: rhf under combinations of ending semantics and evaluator."""
import random
import sys
from kalahlab.engine import sow, gen_random_board, derive_seed
from kalahlab import Variant

sys.setrecursionlimit(200000)

STD, NP, NGA = "std", "np", "nga"


def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


def make_rules(ending):
    """ending: 'turn' (player to move stuck ends game) or 'either'."""

    def apply_mr(me, op, d, pit, variant):
        nme, nop, banked, in_store = sow(me, op, pit)
        nd = d + banked
        same = in_store and variant != NGA
        if variant == NP:
            if not any(nme) and not any(nop):
                return nme, nop, nd, False, _sign(nd)
            return nme, nop, nd, same, None
        if ending == "either":
            if not any(nme):
                return nme, nop, nd, False, _sign(nd - sum(nop))
            if not any(nop):
                return nme, nop, nd, False, _sign(nd + sum(nme))
            return nme, nop, nd, same, None
        # at-turn: the player now to move must have stones
        if same:
            if not any(nme):  # mover moves again but is stuck
                return nme, nop, nd, same, _sign(nd - sum(nop))
        else:
            if not any(nop):  # opponent stuck
                return nme, nop, nd, same, _sign(nd + sum(nme))
        return nme, nop, nd, same, None

    def solve_mr(me, op, d, variant, memo):
        rem = sum(me) + sum(op)
        if d > rem:
            return 1
        if d < -rem:
            return -1
        key = (me, op, d)
        v = memo.get(key)
        if v is not None:
            return v
        best = -2
        if not any(me):  # NP skip
            best = -solve_mr(op, me, -d, variant, memo)
        else:
            for pit in range(len(me)):
                if not me[pit]:
                    continue
                nme, nop, nd, same, tv = apply_mr(me, op, d, pit, variant)
                if tv is not None:
                    cv = tv
                elif same:
                    cv = solve_mr(nme, nop, nd, variant, memo)
                else:
                    cv = -solve_mr(nop, nme, -nd, variant, memo)
                if cv > best:
                    best = cv
                    if cv == 1:
                        break
        memo[key] = best
        return best

    def terminal_mr(me, op, variant):
        if variant == NP:
            return not any(me) and not any(op)
        if ending == "either":
            return not (any(me) and any(op))
        return not any(me)

    return apply_mr, solve_mr, terminal_mr


def rhf_grid(boards, variant, prefix, seed, ending, evaluator):
    apply_mr, solve_mr, terminal_mr = make_rules(ending)
    memo = {}
    master = random.Random(seed).getrandbits(64)
    f = fwin = 0
    for idx, b in enumerate(boards):
        rng = random.Random(derive_seed(master, idx))
        me, op, d = tuple(b.pits_south), tuple(b.pits_north), 0
        dead = False
        for _ in range(prefix):
            if terminal_mr(me, op, variant):
                dead = True
                break
            if not any(me):
                me, op, d = op, me, -d
                continue
            ms = [i for i, n in enumerate(me) if n]
            pit = ms[rng.randrange(len(ms))]
            nme, nop, nd, same, tv = apply_mr(me, op, d, pit, variant)
            if tv is not None:
                dead = True
                break
            if same:
                me, op, d = nme, nop, nd
            else:
                me, op, d = nop, nme, -nd
        if dead or terminal_mr(me, op, variant) or not any(me):
            continue
        kids = []
        for pit in [i for i, n in enumerate(me) if n]:
            nme, nop, nd, same, tv = apply_mr(me, op, d, pit, variant)
            if tv is not None:
                val = tv
            elif same:
                val = solve_mr(nme, nop, nd, variant, memo)
            else:
                val = -solve_mr(nop, nme, -nd, variant, memo)
            if evaluator == "store":
                e = nd
            else:  # store plus own-side stones lead
                e = nd + sum(nme) - sum(nop)
            kids.append((e, val))
        for i, (am, vm) in enumerate(kids):
            if vm != -1:
                continue
            for j, (an, vn) in enumerate(kids):
                if i == j or am < an:
                    continue
                f += 1
                fwin += vn == 1
    return f, fwin


rng = random.Random(42)
boards = [gen_random_board(3, 6, rng) for _ in range(1000)]
print("paper:        std=0.263(905)  np=0.230(947)  nga=0.295(1083)")
for ending in ("turn", "either"):
    for evaluator in ("store", "side"):
        row = []
        for variant in (STD, NP, NGA):
            f, fwin = rhf_grid(boards, variant, 4, 7, ending, evaluator)
            row.append(f"{variant}={fwin/f:.3f}({f})")
        print(f"{ending:6s} {evaluator:5s}", " ".join(row))
