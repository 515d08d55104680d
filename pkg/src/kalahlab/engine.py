"""Kalah rules engine for the standard game and two rule-modified variants.

The board has H pits per player plus one store each.  A move sows the stones
of one pit counterclockwise (own pits, own store, opponent pits, skipping the
opponent's store).  Landing the last stone in the own store grants another
move ("go-again"); landing it in an empty own pit captures the opposite pit.
The game normally ends as soon as a move leaves either player without stones
to sow; the other player then banks everything remaining on their own side.

Variants:
  STANDARD     full rules as above.
  NO_PREMATURE a player with no stones skips instead of ending the game;
               the game ends only when every pit is empty.
  NO_GO_AGAIN  landing in the own store does not grant an extra move.
"""

from __future__ import annotations

import enum
import hashlib
import random
from typing import NamedTuple, Optional, Sequence


class Player(enum.IntEnum):
    SOUTH = 0
    NORTH = 1


class Variant(enum.Enum):
    STANDARD = "standard"
    NO_PREMATURE = "no-premature"
    NO_GO_AGAIN = "no-go-again"

    def __str__(self) -> str:
        return self.value


#: Pseudo-move emitted in NO_PREMATURE when the mover has no stones.
SKIP = -1

Move = int


class IllegalMoveError(ValueError):
    """A move was applied that is not legal in the given position."""


class Board(NamedTuple):
    """Immutable kalah position.

    Pits are indexed 0..H-1 in sowing order (pit H-1 is adjacent to the
    owner's store).  Boards hash and compare as plain tuples, so they can be
    used directly as dict/set keys.
    """

    pits_south: tuple[int, ...]
    pits_north: tuple[int, ...]
    store_south: int
    store_north: int
    to_move: Player

    @property
    def holes(self) -> int:
        return len(self.pits_south)


def total_stones(board: Board) -> int:
    return sum(board.pits_south) + sum(board.pits_north) + board.store_south + board.store_north


def opponent(player: Player) -> Player:
    return Player.NORTH if player == Player.SOUTH else Player.SOUTH


def mirrored(board: Board) -> Board:
    """Swap the two sides (pits, stores and the player to move)."""
    return Board(board.pits_north, board.pits_south, board.store_north,
                 board.store_south, opponent(board.to_move))


def is_terminal(board: Board, variant: Variant) -> bool:
    """True when the game is over.

    STANDARD / NO_GO_AGAIN: either player's pits are all empty.
    NO_PREMATURE: every pit on the board is empty (a stuck player skips).
    """
    if variant is Variant.NO_PREMATURE:
        return not (any(board.pits_south) or any(board.pits_north))
    return not (any(board.pits_south) and any(board.pits_north))


def legal_moves(board: Board, variant: Variant) -> list[Move]:
    """Pit indices the mover may sow from, ascending; [SKIP] when stuck
    in NO_PREMATURE.  Raises on terminal positions."""
    if is_terminal(board, variant):
        raise ValueError("no legal moves: position is terminal")
    mover = board.pits_south if board.to_move == Player.SOUTH else board.pits_north
    moves = [i for i, n in enumerate(mover) if n]
    if not moves:
        # Only reachable in NO_PREMATURE: the opponent still has stones.
        return [SKIP]
    return moves


def sow(me: Sequence[int], op: Sequence[int], pit: int) -> tuple[tuple[int, ...], tuple[int, ...], int, bool]:
    """Sow from `pit` on the mover's side; capture if the last stone lands
    alone in an own pit whose opposite holds stones.

    Returns (new mover pits, new opponent pits, stones banked into the
    mover's store, landed-in-store flag).  Orientation-free: callers pass
    the mover's pits first.
    """
    h = len(me)
    ring_len = 2 * h + 1  # own pits, own store, opponent pits
    ring = list(me)
    ring.append(0)  # store slot counts stones banked by this move
    ring.extend(op)
    stones = ring[pit]
    ring[pit] = 0
    rounds, rest = divmod(stones, ring_len)
    if rounds:
        for i in range(ring_len):
            ring[i] += rounds
    for j in range(pit + 1, pit + 1 + rest):
        ring[j % ring_len] += 1
    last = (pit + stones) % ring_len
    banked = ring[h]
    landed_in_store = last == h
    if last < h and ring[last] == 1:
        opposite = 2 * h - last  # pit h-1-last on the other side
        if ring[opposite]:
            banked += ring[last] + ring[opposite]
            ring[last] = 0
            ring[opposite] = 0
    return tuple(ring[:h]), tuple(ring[h + 1:ring_len]), banked, landed_in_store


def apply_move(board: Board, move: Move, variant: Variant) -> Board:
    """Apply a legal move, including go-again, capture and the end-of-game
    sweep.  Raises IllegalMoveError on anything not in legal_moves()."""
    ps, pn, ss, sn, turn = board
    south_moves = turn == Player.SOUTH
    me = ps if south_moves else pn
    if move == SKIP:
        if variant is not Variant.NO_PREMATURE or any(me):
            raise IllegalMoveError("skip is only legal for a stuck player in no-premature kalah")
        other = pn if south_moves else ps
        if not any(other):
            raise IllegalMoveError("cannot skip: position is terminal")
        return Board(ps, pn, ss, sn, opponent(turn))
    if not 0 <= move < len(me):
        raise IllegalMoveError(f"pit index {move} out of range")
    if me[move] == 0:
        raise IllegalMoveError(f"pit {move} is empty")

    op = pn if south_moves else ps
    new_me, new_op, banked, in_store = sow(me, op, move)
    go_again = in_store and variant is not Variant.NO_GO_AGAIN
    next_player = turn if go_again else opponent(turn)

    if south_moves:
        ps, pn, ss = new_me, new_op, ss + banked
    else:
        pn, ps, sn = new_me, new_op, sn + banked

    if variant is not Variant.NO_PREMATURE:
        # Premature ending: the move left one player without stones, so the
        # game is over and the other player banks their own side.
        if not any(ps):
            sn += sum(pn)
            pn = (0,) * len(pn)
        elif not any(pn):
            ss += sum(ps)
            ps = (0,) * len(ps)
    return Board(ps, pn, ss, sn, next_player)


def sweep_if_ended(board: Board, variant: Variant) -> Board:
    """Bank the leftover stones of a position that is terminal because one
    side is out of stones.  Positions reached through apply_move are already
    swept; this settles hand-built ones.  No-op otherwise."""
    if variant is Variant.NO_PREMATURE or not is_terminal(board, variant):
        return board
    ps, pn, ss, sn, turn = board
    if not any(ps):
        return Board(ps, (0,) * len(pn), ss, sn + sum(pn), turn)
    return Board((0,) * len(ps), pn, ss + sum(ps), sn, turn)


class Outcome(enum.IntEnum):
    WIN = 1
    TIE = 0
    LOSS = -1


class GameValue(NamedTuple):
    """Exact game outcome for a stated player."""

    outcome: Outcome
    perspective: Player

    def for_player(self, player: Player) -> Outcome:
        if player == self.perspective:
            return self.outcome
        return Outcome(-self.outcome)


def terminal_value(board: Board, perspective: Player) -> GameValue:
    """Outcome of a finished game: whoever banked more stones wins.

    Expects a settled terminal position, i.e. after the end-of-game sweep
    (see sweep_if_ended) every pit is empty; raises otherwise.
    """
    if any(board.pits_south) or any(board.pits_north):
        raise ValueError("terminal_value needs a settled terminal position "
                         "(apply sweep_if_ended first)")
    diff = board.store_south - board.store_north
    if perspective == Player.NORTH:
        diff = -diff
    outcome = Outcome.WIN if diff > 0 else Outcome.LOSS if diff < 0 else Outcome.TIE
    return GameValue(outcome, perspective)


def gen_random_board(holes: int, max_per_pit: int, rng: random.Random) -> Board:
    """Random opening position: every pit holds 0..max_per_pit stones
    (uniform, south pits drawn first), stores empty, south to move.

    Boards where either side starts with no stones at all would be over
    before the first move, so those draws are rejected and redrawn.
    """
    if holes < 1 or max_per_pit < 1:
        raise ValueError("holes and max_per_pit must be >= 1")
    while True:
        south = tuple(rng.randint(0, max_per_pit) for _ in range(holes))
        north = tuple(rng.randint(0, max_per_pit) for _ in range(holes))
        if any(south) and any(north):
            return Board(south, north, 0, 0, Player.SOUTH)


def random_prefix(board: Board, k: int, variant: Variant, rng: random.Random) -> Optional[Board]:
    """Play k uniformly random moves.  Returns None if the game ends before
    all k moves were made; the position after the k-th move is returned even
    if it happens to be terminal."""
    for _ in range(k):
        if is_terminal(board, variant):
            return None
        moves = legal_moves(board, variant)
        board = apply_move(board, moves[rng.randrange(len(moves))], variant)
    return board


def derive_seed(*parts) -> int:
    """Stable sub-seed from a master seed and purpose labels, so experiment
    stages can be re-run independently yet reproducibly."""
    text = "/".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


# --- board text form: `south=a,b,c north=d,e,f stores=s,n turn=S|N` ---

def board_to_line(board: Board) -> str:
    return "south={} north={} stores={},{} turn={}".format(
        ",".join(map(str, board.pits_south)),
        ",".join(map(str, board.pits_north)),
        board.store_south, board.store_north,
        "S" if board.to_move == Player.SOUTH else "N")


def board_from_line(line: str) -> Board:
    """Parse the one-line board form; raises ValueError with a reason on
    malformed or negative input."""
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise ValueError(f"malformed token {token!r}")
        name, _, value = token.partition("=")
        fields[name] = value
    try:
        south = tuple(int(x) for x in fields["south"].split(","))
        north = tuple(int(x) for x in fields["north"].split(","))
        store_s, store_n = (int(x) for x in fields["stores"].split(","))
        turn = fields["turn"]
    except KeyError as exc:
        raise ValueError(f"missing field {exc.args[0]}") from None
    if turn not in ("S", "N"):
        raise ValueError(f"turn must be S or N, got {turn!r}")
    if len(south) != len(north):
        raise ValueError("south and north must have the same number of pits")
    if min(south, default=0) < 0 or min(north, default=0) < 0 or store_s < 0 or store_n < 0:
        raise ValueError("negative stone counts are not allowed")
    return Board(south, north, store_s, store_n,
                 Player.SOUTH if turn == "S" else Player.NORTH)
