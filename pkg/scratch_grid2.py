"""Scratch grid #2: boardgen x ending x capture x sow interpretation."""
import random
import sys
from kalahlab.engine import derive_seed
from kalahlab import Variant

sys.setrecursionlimit(400000)

STD, NP, NGA = "std", "np", "nga"


def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


def make_sow(capture, storeless_nga):
    def sow_mr(me, op, pit, variant):
        h = len(me)
        if storeless_nga and variant == NGA:
            ring_len = 2 * h  # own pits then opponent pits, no store station
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
            in_store = False
            if last < h and ring[last] == 1:
                opp_i = 2 * h - 1 - last
                if ring[opp_i] or capture == "even-empty":
                    banked = ring[last] + ring[opp_i]
                    ring[last] = 0
                    ring[opp_i] = 0
            return tuple(ring[:h]), tuple(ring[h:]), banked, in_store
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
            if ring[opp_i] or capture == "even-empty":
                banked += ring[last] + ring[opp_i]
                ring[last] = 0
                ring[opp_i] = 0
        return tuple(ring[:h]), tuple(ring[h + 1:ring_len]), banked, in_store

    return sow_mr


def make_rules(ending, sow_mr):
    def apply_mr(me, op, d, pit, variant):
        nme, nop, banked, in_store = sow_mr(me, op, pit, variant)
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
        if same:
            if not any(nme):
                return nme, nop, nd, same, _sign(nd - sum(nop))
        else:
            if not any(nop):
                return nme, nop, nd, same, _sign(nd + sum(nme))
        return nme, nop, nd, same, None

    def solve_mr(me, op, d, variant, memo, path):
        rem = sum(me) + sum(op)
        if d > rem:
            return 1
        if d < -rem:
            return -1
        key = (me, op, d)
        v = memo.get(key)
        if v is not None:
            return v
        if key in path:
            return 0  # repetition: tie (don't cache below, keep it simple)
        path.add(key)
        best = -2
        if not any(me):
            best = -solve_mr(op, me, -d, variant, memo, path)
        else:
            for pit in range(len(me)):
                if not me[pit]:
                    continue
                nme, nop, nd, same, tv = apply_mr(me, op, d, pit, variant)
                if tv is not None:
                    cv = tv
                elif same:
                    cv = solve_mr(nme, nop, nd, variant, memo, path)
                else:
                    cv = -solve_mr(nop, nme, -nd, variant, memo, path)
                if cv > best:
                    best = cv
                    if cv == 1:
                        break
        path.discard(key)
        memo[key] = best  # cache-unsafe under real cycles; fine for a scratch probe
        return best

    def terminal_mr(me, op, variant):
        if variant == NP:
            return not any(me) and not any(op)
        if ending == "either":
            return not (any(me) and any(op))
        return not any(me)

    return apply_mr, solve_mr, terminal_mr


def rhf_grid(boards, variant, prefix, seed, rules):
    apply_mr, solve_mr, terminal_mr = rules
    memo = {}
    master = random.Random(seed).getrandbits(64)
    f = fwin = 0
    for idx, b in enumerate(boards):
        rng = random.Random(derive_seed(master, idx))
        me, op, d = b[0], b[1], 0
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
                val = solve_mr(nme, nop, nd, variant, memo, set())
            else:
                val = -solve_mr(nop, nme, -nd, variant, memo, set())
            kids.append((nd, val))
        for i, (am, vm) in enumerate(kids):
            if vm != -1:
                continue
            for j, (an, vn) in enumerate(kids):
                if i == j or am < an:
                    continue
                f += 1
                fwin += vn == 1
    return f, fwin


def gen_boards(lo, n=1000, seed=42):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = tuple(rng.randint(lo, 6) for _ in range(3))
        t = tuple(rng.randint(lo, 6) for _ in range(3))
        if any(s) and any(t):
            out.append((s, t))
    return out


if __name__ == "__main__":
    print("paper:  std=0.263(905)  np=0.230(947)  nga=0.295(1083)")
    for lo in (1, 0):
        boards = gen_boards(lo)
        for ending in ("turn", "either"):
            for capture in ("need-opp", "even-empty"):
                row = []
                for variant in (STD, NP, NGA):
                    rules = make_rules(ending, make_sow(capture, False))
                    f, fwin = rhf_grid(boards, variant, 4, 7, rules)
                    row.append(f"{variant}={fwin/f:.3f}({f})" if f else f"{variant}=nan")
                print(f"lo={lo} {ending:6s} {capture:10s}", " ".join(row), flush=True)
