"""Black and black-white pebbling: single-step rules and trace validation.

A complete pebbling starts and ends with an empty board and pebbles every
target at some step.  Time counts placements only; space is the maximum
number of pebbles on the board.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dag import Dag
from .errors import IllegalMove, IncompletePebbling, ParseError

__all__ = [
    "Move",
    "PebbleConfig",
    "PebblingTrace",
    "step",
    "validate_pebbling",
    "parse_moves",
    "format_moves",
]

MOVE_KINDS = ("PB", "RB", "PW", "RW")


@dataclass(frozen=True)
class Move:
    """One pebbling move: place/remove a black/white pebble on vertex v."""

    kind: str
    v: int

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise IllegalMove(f"unknown move kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind} {self.v}"

    @property
    def is_placement(self) -> bool:
        return self.kind in ("PB", "PW")


def pb(v: int) -> Move:
    return Move("PB", v)


def rb(v: int) -> Move:
    return Move("RB", v)


def pw(v: int) -> Move:
    return Move("PW", v)


def rw(v: int) -> Move:
    return Move("RW", v)


@dataclass(frozen=True)
class PebbleConfig:
    """Board state: disjoint black and white pebble sets."""

    black: frozenset[int] = frozenset()
    white: frozenset[int] = frozenset()

    @property
    def occupied(self) -> frozenset[int]:
        return self.black | self.white

    def size(self) -> int:
        return len(self.black) + len(self.white)


EMPTY = PebbleConfig()


def step(g: Dag, cfg: PebbleConfig, move: Move, game: str = "black") -> PebbleConfig:
    """Apply one move, raising IllegalMove if the rules forbid it.

    Black placement needs all predecessors pebbled (either colour); black
    removal is free.  White placement is free; white removal needs all
    predecessors pebbled.  White moves are rejected in the black game.
    """
    if game not in ("black", "bw"):
        raise IllegalMove(f"unknown game {game!r}")
    v = move.v
    if not (0 <= v < g.n):
        raise IllegalMove(f"vertex {v} out of range")
    occ = cfg.occupied
    if move.kind == "PB":
        if v in occ:
            raise IllegalMove(f"vertex {v} already pebbled")
        if any(p not in occ for p in g.preds[v]):
            raise IllegalMove(f"predecessor of {v} unpebbled")
        return PebbleConfig(cfg.black | {v}, cfg.white)
    if move.kind == "RB":
        if v not in cfg.black:
            raise IllegalMove(f"no black pebble on {v}")
        return PebbleConfig(cfg.black - {v}, cfg.white)
    if game == "black":
        raise IllegalMove("white moves forbidden in black game")
    if move.kind == "PW":
        if v in occ:
            raise IllegalMove(f"vertex {v} already pebbled")
        return PebbleConfig(cfg.black, cfg.white | {v})
    # RW
    if v not in cfg.white:
        raise IllegalMove(f"no white pebble on {v}")
    if any(p not in occ for p in g.preds[v]):
        raise IllegalMove(f"predecessor of {v} unpebbled")
    return PebbleConfig(cfg.black, cfg.white - {v})


@dataclass(frozen=True)
class PebblingTrace:
    """A validated complete pebbling with its resource usage."""

    game: str
    moves: tuple[Move, ...]
    time: int
    space: int

    @property
    def moves_total(self) -> int:
        return len(self.moves)

    def report(self) -> dict:
        return {"time": self.time, "space": self.space, "moves_total": self.moves_total}


def validate_pebbling(g: Dag, moves, game: str = "black") -> PebblingTrace:
    """Check a move sequence is a complete pebbling and measure it.

    Raises IllegalMove (with the move index) on a rule violation and
    IncompletePebbling if the board is nonempty at the end or some target is
    never pebbled.
    """
    moves = tuple(moves)
    cfg = EMPTY
    time = 0
    space = 0
    hit = set()
    for i, mv in enumerate(moves):
        try:
            cfg = step(g, cfg, mv, game)
        except IllegalMove as e:
            raise IllegalMove(e.reason, index=i) from None
        if mv.is_placement:
            time += 1
            if mv.v in g.targets:
                hit.add(mv.v)
        space = max(space, cfg.size())
    if cfg.occupied:
        raise IncompletePebbling("final configuration nonempty")
    missing = [t for t in g.targets if t not in hit]
    if missing:
        raise IncompletePebbling(f"target {missing[0]} never pebbled")
    return PebblingTrace(game=game, moves=moves, time=time, space=space)


# --- text format: one move per line, e.g. "PB 3" ---------------------------


def format_moves(moves) -> str:
    return "\n".join(str(m) for m in moves) + ("\n" if moves else "")


def parse_moves(text: str) -> list[Move]:
    out: list[Move] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in MOVE_KINDS:
            raise ParseError(f"bad move line {line!r}", lineno)
        try:
            v = int(parts[1])
        except ValueError:
            raise ParseError(f"bad vertex in {line!r}", lineno) from None
        out.append(Move(parts[0], v))
    return out
