"""Exhaustive minimum-space and time-space-frontier oracles.

States are bitmask integers.  For the black game the search walks
"placement steps": a transition places one pebble and optionally evicts one
first.  Removals are free and can always be deferred, so this collapsed
model reaches the same (space, placements) optima as the move-level game
while visiting far fewer states.  The black-white game is searched at move
level with a 0-1 BFS (placements cost 1, removals 0).

These oracles are meant for desk-size instances; they refuse graphs above a
size bound rather than run forever.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from dataclasses import dataclass, field

from .blob import BlobSubconfig, chargeable_vertices, check_strict_shape, introduce, merge
from .dag import Dag
from .errors import IllegalMove, SizeBoundExceeded
from .pebbling import Move

__all__ = [
    "ParetoFrontier",
    "optimal_price",
    "tradeoff_frontier",
    "optimal_blob_price",
    "DEFAULT_BLACK_BOUND",
    "DEFAULT_BW_BOUND",
    "DEFAULT_BLOB_BOUND",
]

DEFAULT_BLACK_BOUND = 20
DEFAULT_BW_BOUND = 14
DEFAULT_BLOB_BOUND = 8


def _check_bound(g: Dag, game: str, bound: int | None) -> None:
    if game not in ("black", "bw"):
        raise ValueError(f"unknown game {game!r}; expected 'black' or 'bw'")
    if bound is None:
        bound = DEFAULT_BLACK_BOUND if game == "black" else DEFAULT_BW_BOUND
    if g.n > bound:
        raise SizeBoundExceeded(
            f"{g.n} vertices exceeds {game} search bound {bound}; pass a larger bound"
        )


def _masks(g: Dag) -> tuple[list[int], dict[int, int], int]:
    preds_mask = [0] * g.n
    for v in range(g.n):
        for p in g.preds[v]:
            preds_mask[v] |= 1 << p
    tgt_bit = {t: 1 << i for i, t in enumerate(g.targets)}
    all_tgts = (1 << len(g.targets)) - 1
    return preds_mask, tgt_bit, all_tgts


# ---------------------------------------------------------------------------
# Black game: collapsed placement-step search
# ---------------------------------------------------------------------------


def _black_search(g: Dag, s: int, parents: dict | None = None):
    """Min placements to pebble every target with space cap s, or None.

    State = board_mask | visited_targets << n, always right after a
    placement.  When ``parents`` is a dict it is filled with
    state -> (prev_state, placed, evicted_or_None) and the goal state is
    returned alongside the distance.
    """
    n = g.n
    preds_mask, tgt_bit, all_tgts = _masks(g)
    if s <= 0:
        return None if parents is None else (None, None)
    start = 0
    dist = {start: 0}
    queue = deque([start])
    board_of = (1 << n) - 1
    while queue:
        state = queue.popleft()
        d = dist[state]
        board = state & board_of
        visited = state >> n
        if visited == all_tgts:
            # Trailing removals are free; this is the optimum.
            return d if parents is None else (d, state)
        free = bin(board).count("1") < s
        for v in range(n):
            vbit = 1 << v
            if board & vbit or (preds_mask[v] & ~board):
                continue
            nvis = visited | tgt_bit.get(v, 0)
            if free:
                nstate = (board | vbit) | (nvis << n)
                if nstate not in dist:
                    dist[nstate] = d + 1
                    if parents is not None:
                        parents[nstate] = (state, v, None)
                    queue.append(nstate)
            else:
                evictable = board & ~preds_mask[v]
                u = 0
                while evictable:
                    if evictable & 1:
                        nstate = ((board & ~(1 << u)) | vbit) | (nvis << n)
                        if nstate not in dist:
                            dist[nstate] = d + 1
                            if parents is not None:
                                parents[nstate] = (state, v, u)
                            queue.append(nstate)
                    evictable >>= 1
                    u += 1
    return None if parents is None else (None, None)


def _black_witness(g: Dag, s: int) -> list[Move] | None:
    parents: dict = {}
    d, goal = _black_search(g, s, parents=parents)
    if d is None:
        return None
    steps = []
    state = goal
    while state:
        prev, v, evicted = parents[state]
        steps.append((v, evicted))
        state = prev
    steps.reverse()
    moves: list[Move] = []
    board: set[int] = set()
    for v, evicted in steps:
        if evicted is not None:
            moves.append(Move("RB", evicted))
            board.discard(evicted)
        moves.append(Move("PB", v))
        board.add(v)
    for v in sorted(board):
        moves.append(Move("RB", v))
    return moves


# ---------------------------------------------------------------------------
# Black-white game: move-level 0-1 BFS
# ---------------------------------------------------------------------------


def _bw_search(g: Dag, s: int, parents: dict | None = None):
    """Min placements for a complete BW pebbling with space cap s, or None.

    State = black | white << n | visited << 2n.  Goal: empty board, every
    target visited.  Placements cost 1, removals 0 (0-1 BFS).
    """
    n = g.n
    preds_mask, tgt_bit, all_tgts = _masks(g)
    if s <= 0:
        return None if parents is None else (None, None)
    goal = all_tgts << (2 * n)
    start = 0
    dist = {start: 0}
    queue = deque([(0, start)])
    while queue:
        d, state = queue.popleft()
        if d > dist.get(state, 1 << 60):
            continue
        if state == goal:
            return d if parents is None else (d, state)
        black = state & ((1 << n) - 1)
        white = (state >> n) & ((1 << n) - 1)
        visited = state >> (2 * n)
        occupied = black | white
        room = bin(occupied).count("1") < s
        for v in range(n):
            vbit = 1 << v
            pm = preds_mask[v]
            if occupied & vbit:
                # removals
                if black & vbit:
                    nstate = (black & ~vbit) | (white << n) | (visited << (2 * n))
                    cost, mv = 0, ("RB", v)
                elif pm & ~occupied:
                    continue
                else:
                    nstate = black | ((white & ~vbit) << n) | (visited << (2 * n))
                    cost, mv = 0, ("RW", v)
                nd = d + cost
                if nd < dist.get(nstate, 1 << 60):
                    dist[nstate] = nd
                    if parents is not None:
                        parents[nstate] = (state, mv)
                    queue.appendleft((nd, nstate))
            elif room:
                # placements: black needs support, white is free
                nvis = visited | tgt_bit.get(v, 0)
                for colour, ok in (("PB", not (pm & ~occupied)), ("PW", True)):
                    if not ok:
                        continue
                    if colour == "PB":
                        nstate = (black | vbit) | (white << n) | (nvis << (2 * n))
                    else:
                        nstate = black | ((white | vbit) << n) | (nvis << (2 * n))
                    nd = d + 1
                    if nd < dist.get(nstate, 1 << 60):
                        dist[nstate] = nd
                        if parents is not None:
                            parents[nstate] = (state, (colour, v))
                        queue.append((nd, nstate))
    return None if parents is None else (None, None)


def _bw_witness(g: Dag, s: int) -> list[Move] | None:
    parents: dict = {}
    d, goal = _bw_search(g, s, parents=parents)
    if d is None:
        return None
    moves: list[Move] = []
    state = goal
    while state:
        prev, (kind, v) = parents[state]
        moves.append(Move(kind, v))
        state = prev
    moves.reverse()
    return moves


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def optimal_price(
    g: Dag,
    game: str = "black",
    bound: int | None = None,
    with_trace: bool = False,
):
    """Exact pebbling price: least space admitting a complete pebbling.

    With ``with_trace`` also returns a witness move list (deterministic for
    a given graph).  Raises SizeBoundExceeded above the per-game bound
    (black 20, bw 14 by default).
    """
    _check_bound(g, game, bound)
    search = _black_search if game == "black" else _bw_search
    for s in range(1, g.n + 1):
        if search(g, s) is not None:
            if with_trace:
                witness = _black_witness(g, s) if game == "black" else _bw_witness(g, s)
                return s, witness
            return s
    raise SizeBoundExceeded("no complete pebbling found (unreachable for valid DAGs)")


@dataclass(frozen=True)
class ParetoFrontier:
    """Undominated (space, min_time) points, space increasing, time decreasing.

    ``raw`` keeps the full per-space series from the price up to the cap.
    """

    points: tuple[tuple[int, int], ...]
    raw: tuple[tuple[int, int], ...] = field(default=(), repr=False)

    def __iter__(self):
        return iter(self.points)

    def min_time(self) -> int | None:
        return self.points[-1][1] if self.points else None


def tradeoff_frontier(
    g: Dag,
    game: str = "black",
    space_cap: int = 0,
    bound: int | None = None,
) -> ParetoFrontier:
    """Minimum placements for every space budget from the price to the cap.

    Returns the Pareto-filtered frontier; a cap below the price yields an
    empty frontier.
    """
    _check_bound(g, game, bound)
    search = _black_search if game == "black" else _bw_search
    raw: list[tuple[int, int]] = []
    points: list[tuple[int, int]] = []
    for s in range(1, space_cap + 1):
        t = search(g, s)
        if t is None:
            continue
        raw.append((s, t))
        if not points or t < points[-1][1]:
            points.append((s, t))
    return ParetoFrontier(points=tuple(points), raw=tuple(raw))


# ---------------------------------------------------------------------------
# Blob game price
# ---------------------------------------------------------------------------


def optimal_blob_price(g: Dag, bound: int = DEFAULT_BLOB_BOUND, strict: bool = False) -> int:
    """Exact blob pebbling price (max chargeable cost, minimized).

    Iterative deepening on the cost cap; within a cap, breadth-first search
    over configurations (sets of subconfigurations) under all four move
    types.  The state space is enormous, so this refuses graphs with more
    than ``bound`` vertices and is really only comfortable a little below
    that.
    """
    if g.n > bound:
        raise SizeBoundExceeded(f"{g.n} vertices exceeds blob search bound {bound}")
    goal = frozenset(BlobSubconfig(frozenset({t})) for t in g.targets)
    for cap in range(1, g.n + 1):
        if _blob_reachable(g, goal, cap, strict):
            return cap
    raise SizeBoundExceeded("no complete blob pebbling found (unreachable for valid DAGs)")


def _dominates(a: BlobSubconfig, b: BlobSubconfig) -> bool:
    """a renders b redundant: b is a componentwise weakening of a."""
    return a != b and a.blob <= b.blob and a.whites <= b.whites


def _canon(subs: set[BlobSubconfig]) -> frozenset[BlobSubconfig]:
    """Erase every subconfiguration dominated by another one.

    Keeping a weakening of a live subconfiguration never helps: any move
    using the weaker one works at least as well from the stronger one, and
    erasing it can only shrink the chargeable union.  Searching over these
    canonical antichain configurations is therefore exact.
    """
    return frozenset(s for s in subs if not any(_dominates(t, s) for t in subs))


def _blob_reachable(g, goal, cap: int, strict: bool) -> bool:
    """BFS over canonical configurations with peak chargeable cost <= cap.

    Moves: introduce, merge on a genuine pivot, erase, and "fatten" - an
    inflation that only adds blob vertices below the current bottom, fused
    with erasing its source.  General inflations are redundant: adding
    whites or blob vertices at/above the bottom only grows the chargeable
    set and yields a subconfiguration dominated by its source, and a merge
    pivoting on an inflation-added vertex produces a weakening of the
    source, so only the bottom-lowering inflations can ever pay off.  The
    cost check uses the transient configuration (new subconfiguration next
    to its operands/source) to mirror per-move accounting in the validator.
    """
    charge_memo: dict[BlobSubconfig, frozenset[int]] = {}

    def charge(s: BlobSubconfig) -> frozenset[int]:
        got = charge_memo.get(s)
        if got is None:
            got = charge_memo[s] = chargeable_vertices(g, s)
        return got

    def cost(subs) -> int:
        u: set[int] = set()
        for s in subs:
            u |= charge(s)
        return len(u)

    intros = [introduce(g, v) for v in range(g.n)]
    start: frozenset[BlobSubconfig] = frozenset()
    seen = {start}
    queue = deque([start])

    def push(subs: set[BlobSubconfig]):
        ncfg = _canon(subs)
        if ncfg not in seen:
            seen.add(ncfg)
            queue.append(ncfg)

    while queue:
        cfg = queue.popleft()
        if goal <= cfg:
            return True
        for s in intros:
            if s not in cfg and cost(cfg | {s}) <= cap:
                push(set(cfg) | {s})
        for s1 in cfg:
            for s2 in cfg:
                for pivot in s1.blob & s2.whites:
                    try:
                        m = merge(s1, s2, pivot)
                    except IllegalMove:
                        continue
                    if strict and check_strict_shape(g, m) is not None:
                        continue
                    if m not in cfg and cost(cfg | {m}) <= cap:
                        push(set(cfg) | {m})
        for s in cfg:
            bot = min(s.blob)
            room = [v for v in range(bot) if v not in s.whites]
            for k in range(1, len(room) + 1):
                for extra in combinations(room, k):
                    fat = BlobSubconfig(s.blob | frozenset(extra), s.whites)
                    if strict and check_strict_shape(g, fat) is not None:
                        continue
                    if cost(cfg | {fat}) <= cap:
                        push((set(cfg) - {s}) | {fat})
            push(set(cfg) - {s})
    return False
