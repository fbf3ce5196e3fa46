"""CNF formulas and pebbling contradictions.

Variables are positive DIMACS integers.  The pebbling contradiction over a
DAG associates d variables with every vertex v, numbered d*v + i for
i in 1..d (v is 0-based), and states that every source has some true
variable, truth propagates along edges, and every target has none.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .dag import Dag
from .errors import GraphError, ParseError

__all__ = [
    "Clause",
    "Cnf",
    "canon_clause",
    "is_tautology",
    "var_id",
    "var_vertex",
    "pebbling_contradiction",
    "write_dimacs",
    "read_dimacs",
]

Clause = tuple[int, ...]


def canon_clause(lits) -> Clause:
    """Canonical clause form: duplicates merged, sorted by variable then sign."""
    return tuple(sorted(set(lits), key=lambda l: (abs(l), l < 0)))


def is_tautology(lits) -> bool:
    s = set(lits)
    return any(-l in s for l in s)


@dataclass(frozen=True)
class Cnf:
    """A CNF formula: a clause list (multiset) over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for cl in self.clauses:
            for l in cl:
                if l == 0 or abs(l) > self.num_vars:
                    raise GraphError(f"literal {l} out of range in clause {cl}")
            if is_tautology(cl):
                raise GraphError(f"tautological clause {cl}")

    def __len__(self):
        return len(self.clauses)


def var_id(v: int, i: int, d: int) -> int:
    """DIMACS variable for the i-th copy (1-based) of vertex v (0-based)."""
    return d * v + i


def var_vertex(x: int, d: int) -> tuple[int, int]:
    """Inverse of var_id: variable -> (vertex, copy index)."""
    return (x - 1) // d, (x - 1) % d + 1


def _all_true(v: int, d: int) -> list[int]:
    return [var_id(v, i, d) for i in range(1, d + 1)]


def pebbling_contradiction(g: Dag, d: int, starred: bool = False) -> Cnf:
    """The d-th degree pebbling contradiction over g.

    Clauses, in order: one per source (its d variables), then for every
    non-source v and every assignment (j_1..j_k) of copies to its k
    predecessors the propagation clause, then d unit target clauses per
    target.  ``starred`` drops the target clauses, leaving a satisfiable
    formula whose target clauses are derivable instead of given.
    """
    if d < 1:
        raise GraphError("d must be >= 1")
    clauses: list[Clause] = []
    for s in g.sources:
        clauses.append(canon_clause(_all_true(s, d)))
    for v in range(g.n):
        ps = g.preds[v]
        if not ps:
            continue
        head = _all_true(v, d)
        for js in product(range(1, d + 1), repeat=len(ps)):
            body = [-var_id(u, j, d) for u, j in zip(ps, js)]
            clauses.append(canon_clause(body + head))
    if not starred:
        for t in g.targets:
            for i in range(1, d + 1):
                clauses.append((-var_id(t, i, d),))
    return Cnf(num_vars=d * g.n, clauses=tuple(clauses))


# --- DIMACS -----------------------------------------------------------------


def write_dimacs(f: Cnf) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for cl in f.clauses:
        lines.append(" ".join(str(l) for l in cl + (0,)))
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Cnf:
    num_vars = None
    declared = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise ParseError("duplicate p line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad header {line!r}", lineno)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            continue
        if num_vars is None:
            raise ParseError("clause before p line", lineno)
        try:
            lits = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"bad clause line {line!r}", lineno) from None
        if not lits or lits[-1] != 0:
            raise ParseError("clause line missing trailing 0", lineno)
        lits = lits[:-1]
        if any(l == 0 for l in lits):
            raise ParseError("literal 0 inside clause", lineno)
        clauses.append(canon_clause(lits))
    if num_vars is None:
        raise ParseError("no p line")
    if declared != len(clauses):
        raise ParseError(f"declared {declared} clauses, found {len(clauses)}")
    try:
        return Cnf(num_vars=num_vars, clauses=tuple(clauses))
    except GraphError as e:
        raise ParseError(str(e)) from None
