"""Hiding sets, level-weighted measures, potential, and the bounded-hider
property used in space lower bounds.

A set U hides v (in the default "below" direction) when every path from a
source to v passes through U; the hull of U is everything it hides.  The
measure of U on a layered graph takes, over all levels j, the largest value
of j plus the number of U-vertices at level >= j (zero when U is empty
above j).  The potential of a pebble configuration is the smallest measure
of any set hiding all of it.

The bounded-hider check asks: does every nonempty, tight, hiding-connected
vertex set U admit a replacement hider U* of at most ``bound`` vertices
with hull covering U and measure no larger?  Graphs where this holds with a
small bound cannot dodge the potential argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dag import Dag
from .errors import GraphError, SizeBoundExceeded
from .pebbling import PebbleConfig

__all__ = [
    "LayeredView",
    "MeasureValue",
    "MeasureReport",
    "LhcResult",
    "LhcWitness",
    "hidden_vertices",
    "klawe_measure",
    "potential",
    "check_lhc",
    "min_lhc_bound",
    "POTENTIAL_BOUND",
    "LHC_BOUND",
]

POTENTIAL_BOUND = 14
LHC_BOUND = 12


@dataclass(frozen=True)
class LayeredView:
    """A DAG with a level per vertex, strictly increasing along edges."""

    g: Dag
    levels: tuple[int, ...]

    def __post_init__(self):
        if len(self.levels) != self.g.n:
            raise GraphError("level map size mismatch")
        for u, v in self.g.edges:
            if self.levels[u] >= self.levels[v]:
                raise GraphError(f"graph not layered: edge ({u}, {v})")

    @classmethod
    def from_dag(cls, g: Dag) -> "LayeredView":
        """Longest-path levels: sources sit at 0, edges always climb."""
        levels = [0] * g.n
        for v in range(g.n):
            for p in g.preds[v]:
                levels[v] = max(levels[v], levels[p] + 1)
        return cls(g, tuple(levels))

    @property
    def max_level(self) -> int:
        return max(self.levels) if self.levels else 0


def hidden_vertices(g: Dag, U, direction: str = "below") -> frozenset[int]:
    """The hull of U: vertices v every source-to-v path meets U.

    With direction="above" paths run from v to the sinks instead.  Members
    of U hide themselves.
    """
    U = frozenset(U)
    for v in U:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range")
    hidden = [False] * g.n
    if direction == "below":
        order = range(g.n)
        nbrs = g.preds
    elif direction == "above":
        order = range(g.n - 1, -1, -1)
        nbrs = g.succs
    else:
        raise GraphError(f"unknown direction {direction!r}")
    for v in order:
        if v in U:
            hidden[v] = True
        elif nbrs[v] and all(hidden[u] for u in nbrs[v]):
            hidden[v] = True
    return frozenset(v for v in range(g.n) if hidden[v])


@dataclass(frozen=True)
class MeasureValue:
    """Measure of a set, with the per-level partial values m^j."""

    value: int
    partials: tuple[int, ...]


def klawe_measure(view: LayeredView, U) -> MeasureValue:
    """max over levels j of (j + |vertices of U at level >= j|), empty -> 0."""
    U = frozenset(U)
    for v in U:
        if not (0 <= v < view.g.n):
            raise GraphError(f"vertex {v} out of range")
    top = view.max_level
    partials = []
    for j in range(top + 1):
        above = sum(1 for v in U if view.levels[v] >= j)
        partials.append(0 if above == 0 else j + above)
    value = max(partials) if partials else 0
    return MeasureValue(value=value, partials=tuple(partials))


def potential(
    g: Dag,
    config,
    direction: str = "below",
    bound: int = POTENTIAL_BOUND,
) -> int:
    """Least measure of a set whose hull covers the whole configuration.

    ``config`` may be a PebbleConfig or any iterable of vertices.  Exhausts
    all vertex subsets, so refuses graphs above ``bound`` vertices.
    """
    if g.n > bound:
        raise SizeBoundExceeded(f"{g.n} vertices exceeds potential bound {bound}")
    if isinstance(config, PebbleConfig):
        pebbled = config.occupied
    else:
        pebbled = frozenset(config)
    if not pebbled:
        return 0
    view = LayeredView.from_dag(g)
    best = None
    for mask in range(1 << g.n):
        U = frozenset(v for v in range(g.n) if mask >> v & 1)
        if not pebbled <= hidden_vertices(g, U, direction):
            continue
        m = klawe_measure(view, U).value
        if best is None or m < best:
            best = m
    assert best is not None  # U = all vertices always hides everything
    return best


# ---------------------------------------------------------------------------
# Bounded-hider property
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LhcWitness:
    """A tight, hiding-connected set with no small enough replacement hider."""

    vertices: tuple[int, ...]
    measure: int
    smallest_hider: int | None


@dataclass(frozen=True)
class LhcResult:
    holds: bool
    bound: int
    witness: LhcWitness | None


def _hulls_and_measures(g: Dag, direction: str):
    """Hull and measure for every vertex subset, as bitmask tables."""
    view = LayeredView.from_dag(g)
    n = g.n
    hull = [0] * (1 << n)
    meas = [0] * (1 << n)
    for mask in range(1 << n):
        U = frozenset(v for v in range(n) if mask >> v & 1)
        h = hidden_vertices(g, U, direction)
        hull[mask] = sum(1 << v for v in h)
        meas[mask] = klawe_measure(view, U).value
    return hull, meas


def _connected(g: Dag, mask: int) -> bool:
    """Connectivity of the induced subgraph, edges taken undirected."""
    verts = [v for v in range(g.n) if mask >> v & 1]
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for u in g.preds[v] + g.succs[v]:
            if mask >> u & 1 and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(verts)


def check_lhc(
    g: Dag,
    bound: int,
    direction: str = "below",
    max_n: int = LHC_BOUND,
) -> LhcResult:
    """Does every in-scope set admit a hider of at most ``bound`` vertices?

    In scope: nonempty, tight (no member hidden by the others), and
    hiding-connected (hull induces a connected subgraph).  A replacement
    hider U* must satisfy U within hull(U*) and measure(U*) <= measure(U).
    Returns the first violating set as a witness.
    """
    if g.n > max_n:
        raise SizeBoundExceeded(f"{g.n} vertices exceeds hider-check bound {max_n}")
    hull, meas = _hulls_and_measures(g, direction)
    n = g.n
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        by_size[bin(mask).count("1")].append(mask)
    small = [m for k in range(min(bound, n) + 1) for m in by_size[k]]
    for mask in range(1, 1 << n):
        if not _tight(mask, hull):
            continue
        if not _connected(g, hull[mask]):
            continue
        ok = any(
            hull[cand] & mask == mask and meas[cand] <= meas[mask] for cand in small
        )
        if not ok:
            needed = _smallest_hider(mask, hull, meas, by_size)
            return LhcResult(
                holds=False,
                bound=bound,
                witness=LhcWitness(
                    vertices=tuple(v for v in range(n) if mask >> v & 1),
                    measure=meas[mask],
                    smallest_hider=needed,
                ),
            )
    return LhcResult(holds=True, bound=bound, witness=None)


def _tight(mask: int, hull: list[int]) -> bool:
    m = mask
    while m:
        bit = m & -m
        if hull[mask ^ bit] & bit:
            return False
        m ^= bit
    return True


def _smallest_hider(mask, hull, meas, by_size) -> int | None:
    for k, masks in enumerate(by_size):
        for cand in masks:
            if hull[cand] & mask == mask and meas[cand] <= meas[mask]:
                return k
    return None


def min_lhc_bound(g: Dag, direction: str = "below", max_n: int = LHC_BOUND) -> int:
    """Smallest bound for which check_lhc holds (worst case over in-scope sets)."""
    if g.n > max_n:
        raise SizeBoundExceeded(f"{g.n} vertices exceeds hider-check bound {max_n}")
    hull, meas = _hulls_and_measures(g, direction)
    n = g.n
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        by_size[bin(mask).count("1")].append(mask)
    worst = 0
    for mask in range(1, 1 << n):
        if not _tight(mask, hull) or not _connected(g, hull[mask]):
            continue
        needed = _smallest_hider(mask, hull, meas, by_size)
        assert needed is not None  # the set itself always qualifies
        worst = max(worst, needed)
    return worst


@dataclass(frozen=True)
class MeasureReport:
    """Bundle returned by the measure CLI: hull, measure, and potential."""

    hidden: tuple[int, ...]
    measure: int
    partials: tuple[int, ...]
    potential: int | None = None

    def to_json(self) -> dict:
        out = {
            "hidden": list(self.hidden),
            "measure": self.measure,
            "partials": list(self.partials),
        }
        if self.potential is not None:
            out["potential"] = self.potential
        return out
