"""Scratch experiment: rhf under 'either side empty after a move ends the game'
semantics, vs the package's 'player to move has no move' semantics."""
import random
import sys
from kalahlab.engine import sow, gen_random_board, derive_seed
from kalahlab import Variant

sys.setrecursionlimit(100000)

STD, NP, NGA = "std", "np", "nga"


def apply_es(me, op, d, pit, variant):
    """Either-side semantics move application, mover-relative.

    Returns (nme, nop, nd, same_mover, terminal_value_or_None) where values
    are from the CURRENT mover's perspective.
    """
    nme, nop, banked, in_store = sow(me, op, pit)
    nd = d + banked
    if variant != NP:
        if not any(nme):  # mover's side empty -> opponent sweeps own side
            return nme, nop, nd, False, _sign(nd - sum(nop))
        if not any(nop):  # opponent's side empty -> mover sweeps own side
            return nme, nop, nd, False, _sign(nd + sum(nme))
    else:
        if not any(nme) and not any(nop):
            return nme, nop, nd, False, _sign(nd)
    same = in_store and variant != NGA
    return nme, nop, nd, same, None


def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


def solve_es(me, op, d, variant, memo):
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
        best = -solve_es(op, me, -d, variant, memo)
    else:
        for pit in range(len(me)):
            if not me[pit]:
                continue
            nme, nop, nd, same, tv = apply_es(me, op, d, pit, variant)
            if tv is not None:
                cv = tv
            elif same:
                cv = solve_es(nme, nop, nd, variant, memo)
            else:
                cv = -solve_es(nop, nme, -nd, variant, memo)
            if cv > best:
                best = cv
                if cv == 1:
                    break
    memo[key] = best
    return best


def legal_es(me, op, variant):
    ms = [i for i, n in enumerate(me) if n]
    return ms


def terminal_es(me, op, variant):
    if variant == NP:
        return not any(me) and not any(op)
    return not (any(me) and any(op))


def rhf_es(boards, variant, prefix, seed):
    memo = {}
    master = random.Random(seed).getrandbits(64)
    f = fwin = 0
    for idx, b in enumerate(boards):
        rng = random.Random(derive_seed(master, idx))
        me, op, d = tuple(b.pits_south), tuple(b.pits_north), 0
        dead = False
        for _ in range(prefix):
            if terminal_es(me, op, variant):
                dead = True
                break
            if not any(me):  # NP skip
                me, op, d = op, me, -d
                continue
            ms = legal_es(me, op, variant)
            pit = ms[rng.randrange(len(ms))]
            nme, nop, nd, same, tv = apply_es(me, op, d, pit, variant)
            if tv is not None:
                dead = True
                break
            if same:
                me, op, d = nme, nop, nd
            else:
                me, op, d = nop, nme, -nd
        if dead or terminal_es(me, op, variant):
            continue
        # children of the sampled position, mover perspective
        kids = []
        if not any(me):
            continue  # skip-only node: single child, no pairs
        for pit in legal_es(me, op, variant):
            nme, nop, nd, same, tv = apply_es(me, op, d, pit, variant)
            if tv is not None:
                val = tv
            elif same:
                val = solve_es(nme, nop, nd, variant, memo)
            else:
                val = -solve_es(nop, nme, -nd, variant, memo)
            kids.append((nd, val))  # nd = mover store lead after the move
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
for variant in (STD, NP, NGA):
    f, fwin = rhf_es(boards, variant, 4, 7)
    print(f"either-side {variant}: f={f} fwin={fwin} rhf={fwin/f:.3f}")
