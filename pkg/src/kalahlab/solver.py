"""Exhaustive win/tie/loss labeling of kalah positions.

solve() expands the full game tree under optimal play by both sides and is
the ground truth the flaw-rate estimator and the perfect-evaluator tests are
built on.  Positions repeating on the expansion path are scored as ties;
results are memoized in a SolveCache that can be shared across boards and
persisted to disk.
"""

from __future__ import annotations

from typing import Callable, Optional

from .engine import (Board, GameValue, Outcome, Player, Variant, is_terminal,
                     sow, sweep_if_ended, terminal_value)

_INF = 1 << 30
_PIT_BITS = 12
_DIFF_OFFSET = 1 << 12


def _pack(me: tuple, op: tuple, diff: int) -> int:
    # Canonical mover-relative key: pit counts plus the mover's store lead.
    # The outcome of a position depends only on these (the absolute store
    # sizes beyond their difference never matter), and orienting by the
    # mover folds mirror-image positions onto one entry.
    key = len(me)
    for v in me:
        key = (key << _PIT_BITS) | v
    for v in op:
        key = (key << _PIT_BITS) | v
    return (key << 13) | (diff + _DIFF_OFFSET)


class SolveCache:
    """Memoized position values, one map per variant, with hit/miss counters.

    Values are write-once, so sharing a cache between workers is safe as long
    as individual entry writes are atomic (they are, for Python dicts).
    """

    FORMAT = "kalahlab-solvecache v1"

    def __init__(self) -> None:
        self._maps: dict[Variant, dict[int, int]] = {}
        self.hits = 0
        self.misses = 0

    def map_for(self, variant: Variant) -> dict[int, int]:
        try:
            return self._maps[variant]
        except KeyError:
            self._maps[variant] = {}
            return self._maps[variant]

    def __len__(self) -> int:
        return sum(len(m) for m in self._maps.values())

    def save(self, path) -> None:
        """Dump as text: one `variant key value` line per entry."""
        with open(path, "w") as f:
            f.write(self.FORMAT + "\n")
            for variant, table in self._maps.items():
                tag = variant.value
                for key, value in table.items():
                    f.write(f"{tag} {key} {value}\n")

    @classmethod
    def load(cls, path) -> "SolveCache":
        cache = cls()
        with open(path) as f:
            header = f.readline().rstrip("\n")
            if header != cls.FORMAT:
                raise ValueError(f"unsupported cache file format: {header!r}")
            for line in f:
                tag, key, value = line.split()
                cache.map_for(Variant(tag))[int(key)] = int(value)
        return cache


def solve(board: Board, variant: Variant, cache: Optional[SolveCache] = None) -> GameValue:
    """Game-theoretic outcome under optimal play, from SOUTH's perspective.

    The mover always gets the best of the children's values; a position
    repeating on the expansion path scores as a tie.  Results are identical
    with a cold cache, a warm cache, or none at all.
    """
    if is_terminal(board, variant):
        return terminal_value(sweep_if_ended(board, variant), Player.SOUTH)
    ps, pn, ss, sn, turn = board
    if sum(ps) + sum(pn) + ss + sn >= _DIFF_OFFSET:
        raise ValueError("board too large to solve (total stones must be < 4096)")
    if cache is None:
        cache = SolveCache()
    if turn == Player.SOUTH:
        v = _value(ps, pn, ss - sn, variant, cache)
    else:
        v = -_value(pn, ps, sn - ss, variant, cache)
    return GameValue(Outcome(v), Player.SOUTH)


def _value(root_me, root_op, root_d, variant: Variant, cache: SolveCache) -> int:
    """Iterative depth-first evaluation returning -1/0/1 for the mover.

    An explicit stack is used because worst-case lines run far beyond
    CPython's recursion comfort zone.  Each frame tracks the shallowest
    repetition hit that leaked into its value: tie values influenced by a
    repetition of a node above the frame are path-dependent and therefore
    never cached (win/loss values are exact regardless, since a repetition
    cut can only inject a tie).
    """
    premature = variant is not Variant.NO_PREMATURE
    goagain_ok = variant is not Variant.NO_GO_AGAIN
    h = len(root_me)
    pit_range = range(h)
    sow_ = sow
    memo = cache.map_for(variant)
    memo_get = memo.get
    path: dict[int, int] = {}
    path_get = path.get
    # frame: [key, depth, subcalls, next_index, best, min_hit]
    stack: list[list] = []
    hits = 0
    misses = 0

    call = (root_me, root_op, root_d, None)
    ret_v = 0
    ret_hit = _INF
    delivering = False

    while True:
        if not delivering:
            me, op, d, key = call
            if key is None:
                key = h
                for v in me:
                    key = (key << _PIT_BITS) | v
                for v in op:
                    key = (key << _PIT_BITS) | v
                key = (key << 13) | (d + _DIFF_OFFSET)
            cached = memo_get(key)
            if cached is not None:
                hits += 1
                ret_v = cached
                ret_hit = _INF
                delivering = True
                continue
            pd = path_get(key)
            if pd is not None:
                # repetition of a position on the current path: a tie, owned
                # by the ancestor at depth pd
                ret_v = 0
                ret_hit = pd
                delivering = True
                continue
            misses += 1
            rem = sum(me) + sum(op)
            depth = len(path)
            best = -2
            min_hit = _INF
            subs: list[tuple] = []
            if not any(me):
                # stuck mover (NO_PREMATURE only): forced skip
                ckey = h
                for v in op:
                    ckey = (ckey << _PIT_BITS) | v
                for v in me:
                    ckey = (ckey << _PIT_BITS) | v
                ckey = (ckey << 13) | (-d + _DIFF_OFFSET)
                cv = memo_get(ckey)
                if cv is not None:
                    hits += 1
                    best = -cv
                else:
                    cpd = path_get(ckey)
                    if cpd is not None:
                        best = 0
                        if cpd < min_hit:
                            min_hit = cpd
                    else:
                        subs.append((op, me, -d, ckey, True))
            else:
                for pit in pit_range:
                    if not me[pit]:
                        continue
                    nme, nop, banked, in_store = sow_(me, op, pit)
                    nd = d + banked
                    crem = rem - banked
                    if premature and (not any(nme) or not any(nop)):
                        # game over: whoever still holds stones banks them
                        fd = nd + sum(nme) - sum(nop)
                        v = 1 if fd > 0 else -1 if fd < 0 else 0
                    elif crem == 0:
                        v = 1 if nd > 0 else -1 if nd < 0 else 0
                    elif nd > crem:
                        v = 1  # lead unassailable: decided
                    elif nd < -crem:
                        v = -1
                    elif in_store and goagain_ok:
                        # mover moves again
                        ckey = h
                        for x in nme:
                            ckey = (ckey << _PIT_BITS) | x
                        for x in nop:
                            ckey = (ckey << _PIT_BITS) | x
                        ckey = (ckey << 13) | (nd + _DIFF_OFFSET)
                        cv = memo_get(ckey)
                        if cv is not None:
                            hits += 1
                            v = cv
                        else:
                            cpd = path_get(ckey)
                            if cpd is not None:
                                v = 0
                                if cpd < min_hit:
                                    min_hit = cpd
                            else:
                                subs.append((nme, nop, nd, ckey, False))
                                continue
                    else:
                        ckey = h
                        for x in nop:
                            ckey = (ckey << _PIT_BITS) | x
                        for x in nme:
                            ckey = (ckey << _PIT_BITS) | x
                        ckey = (ckey << 13) | (-nd + _DIFF_OFFSET)
                        cv = memo_get(ckey)
                        if cv is not None:
                            hits += 1
                            v = -cv
                        else:
                            cpd = path_get(ckey)
                            if cpd is not None:
                                v = 0
                                if cpd < min_hit:
                                    min_hit = cpd
                            else:
                                subs.append((nop, nme, -nd, ckey, True))
                                continue
                    if v > best:
                        best = v
                        if v == 1:
                            break
            if best == 1 or not subs:
                # resolved without recursion
                if best or min_hit >= depth:
                    memo[key] = best
                    ret_hit = _INF
                else:
                    ret_hit = min_hit
                ret_v = best
                delivering = True
                continue
            path[key] = depth
            stack.append([key, depth, subs, 1, best, min_hit])
            nme, nop, nd, ckey, _flip = subs[0]
            call = (nme, nop, nd, ckey)
            continue

        # deliver ret_v/ret_hit into the frame on top of the stack
        if not stack:
            cache.hits += hits
            cache.misses += misses
            return ret_v
        frame = stack[-1]
        idx = frame[3]
        if frame[2][idx - 1][4]:  # child played by the opponent
            v = -ret_v
        else:
            v = ret_v
        if v > frame[4]:
            frame[4] = v
        if ret_hit < frame[5]:
            frame[5] = ret_hit
        if frame[4] == 1 or idx == len(frame[2]):
            key, depth, _subs, _idx, best, min_hit = frame
            del path[key]
            stack.pop()
            if best or min_hit >= depth:
                memo[key] = best
                ret_hit = _INF
            else:
                ret_hit = min_hit
            ret_v = best
            continue
        frame[3] = idx + 1
        nme, nop, nd, ckey, _flip = frame[2][idx]
        call = (nme, nop, nd, ckey)
        delivering = False


def win_for(value: GameValue, perspective: Player) -> bool:
    return value.for_player(perspective) == Outcome.WIN


def loss_for(value: GameValue, perspective: Player) -> bool:
    return value.for_player(perspective) == Outcome.LOSS


def perfect_eval(board: Board, variant: Variant, cache: Optional[SolveCache],
                 perspective: Player) -> float:
    """Solved outcome as a win probability: loss 0.0, tie 0.5, win 1.0."""
    outcome = solve(board, variant, cache).for_player(perspective)
    return 0.5 + 0.5 * outcome


def make_perfect_evaluator(variant: Variant,
                           cache: Optional[SolveCache]) -> Callable[[Board, Player], float]:
    """Tip evaluator backed by the exhaustive solver, for plugging into
    choose_move."""
    if cache is None:
        cache = SolveCache()

    def evaluator(board: Board, perspective: Player) -> float:
        return perfect_eval(board, variant, cache, perspective)

    return evaluator
