"""Command line interface.

Subcommands: gen-graph, gen-cnf, price, frontier, strategy, compile, check,
measure, tradeoff-report.  Exit codes: 0 success, 1 domain error (illegal
input, failed verification, size bounds), 2 usage error.  All outputs are
deterministic byte-for-byte for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from configparser import ConfigParser
from itertools import product

from . import blob as blobmod
from . import simulation
from .cnf import pebbling_contradiction, read_dimacs, write_dimacs
from .dag import Dag, FamilySpec, build_family, read_graph, write_graph
from .errors import BudgetTooSmall, PebbleBenchError, SizeBoundExceeded
from .measures import MeasureReport, hidden_vertices, klawe_measure, potential, LayeredView
from .pebbling import format_moves, parse_moves, validate_pebbling
from .resolution import check_refutation, format_trace, parse_trace
from .search import optimal_price, tradeoff_frontier
from .strategies import StrategyParams, black_strategy, cs_tradeoff_strategy

__all__ = ["main", "run_command"]


class _Usage(Exception):
    pass


# --- shared helpers ---------------------------------------------------------

_FAMILY_PARAMS = {
    "chain": ("n",),
    "pyramid": ("h",),
    "binary_tree": ("h",),
    "carlson_savage": ("c", "r"),
}


def _add_graph_args(p: argparse.ArgumentParser, family_only: bool = False):
    p.add_argument("--family", choices=sorted(_FAMILY_PARAMS))
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--r", type=int)
    if not family_only:
        p.add_argument("--graph", metavar="FILE", help="read the graph from a file")


def _spec_from_args(args) -> FamilySpec:
    if not args.family:
        raise _Usage("a --family is required")
    names = _FAMILY_PARAMS[args.family]
    vals = []
    for name in names:
        v = getattr(args, name)
        if v is None:
            raise _Usage(f"family {args.family} needs --{name}")
        vals.append(v)
    return FamilySpec(args.family, tuple(vals))


def _graph_from_args(args) -> Dag:
    if getattr(args, "graph", None):
        if args.family:
            raise _Usage("give either --family or --graph, not both")
        with open(args.graph) as fh:
            return read_graph(fh.read())
    return build_family(_spec_from_args(args))


def _write_out(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ------------------------------------------------------------


def _cmd_gen_graph(args) -> int:
    g = build_family(_spec_from_args(args))
    _write_out(args, write_graph(g))
    return 0


def _cmd_gen_cnf(args) -> int:
    g = _graph_from_args(args)
    f = pebbling_contradiction(g, args.d, starred=args.starred)
    _write_out(args, write_dimacs(f))
    return 0


def _cmd_price(args) -> int:
    g = _graph_from_args(args)
    price = optimal_price(g, game=args.game, bound=args.bound)
    _write_out(args, f"{price}\n")
    return 0


def _frontier_rows(label_family: str, label_params: str, game: str, frontier) -> str:
    lines = ["family,params,game,space,min_time"]
    for s, t in frontier.points:
        lines.append(f"{label_family},{label_params},{game},{s},{t}")
    return "\n".join(lines) + "\n"


def _cmd_frontier(args) -> int:
    g = _graph_from_args(args)
    fr = tradeoff_frontier(g, game=args.game, space_cap=args.space_cap, bound=args.bound)
    if args.family:
        spec = _spec_from_args(args)
        fam, par = spec.kind, spec.params_label()
    else:
        fam, par = "file", os.path.basename(args.graph)
    _write_out(args, _frontier_rows(fam, par, args.game, fr))
    return 0


def _cmd_strategy(args) -> int:
    spec = _spec_from_args(args)
    if spec.kind == "carlson_savage" and args.budget is not None:
        moves = cs_tradeoff_strategy(*spec.params, StrategyParams(args.budget))
    elif args.budget is not None:
        raise _Usage("--budget only applies to carlson_savage")
    else:
        moves = black_strategy(spec)
    g = build_family(spec)
    trace = validate_pebbling(g, moves, game="black")
    _write_out(args, format_moves(moves))
    if args.output:
        sys.stdout.write(json.dumps(trace.report()) + "\n")
    return 0


def _cmd_compile(args) -> int:
    g = _graph_from_args(args)
    with open(args.moves) as fh:
        text = fh.read()
    if args.blob:
        trace = blobmod.validate_blob_pebbling(g, blobmod.parse_blob_moves(text))
    else:
        trace = validate_pebbling(g, parse_moves(text), game="black")
    rtrace = simulation.compile_pebbling(g, args.d, trace, starred=args.starred)
    _write_out(args, format_trace(rtrace))
    return 0


def _cmd_check(args) -> int:
    with open(args.cnf) as fh:
        f = read_dimacs(fh.read())
    with open(args.proof) as fh:
        trace = parse_trace(fh.read())
    metrics = check_refutation(f, trace)
    sys.stdout.write(json.dumps(metrics.report()) + "\n")
    return 0


def _parse_vertex_set(text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise _Usage(f"bad vertex list {text!r}") from None


def _cmd_measure(args) -> int:
    g = _graph_from_args(args)
    U = _parse_vertex_set(args.set)
    hull = hidden_vertices(g, U, direction=args.direction)
    mv = klawe_measure(LayeredView.from_dag(g), U)
    pot = None
    config = _parse_vertex_set(args.black) | _parse_vertex_set(args.white)
    if config:
        pot = potential(g, config, direction=args.direction)
    report = MeasureReport(
        hidden=tuple(sorted(hull)), measure=mv.value, partials=mv.partials, potential=pot
    )
    sys.stdout.write(json.dumps(report.to_json()) + "\n")
    return 0


# --- tradeoff-report --------------------------------------------------------


def _parse_range(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    if "," in text:
        return [int(t) for t in text.split(",")]
    return [int(text)]


def _experiment_instances(cp: ConfigParser):
    """Yield (spec, space_cap_spec) in file order, params in cross-product order."""
    out = []
    for section in cp.sections():
        if not section.startswith("family:"):
            continue
        kind = section.split(":", 1)[1]
        if kind not in _FAMILY_PARAMS:
            raise _Usage(f"unknown family {kind!r} in spec")
        names = _FAMILY_PARAMS[kind]
        try:
            ranges = [_parse_range(cp.get(section, name)) for name in names]
        except Exception as e:
            raise _Usage(f"bad parameter ranges in [{section}]: {e}") from None
        cap = cp.get(section, "space_cap", fallback="+2")
        for combo in product(*ranges):
            out.append((FamilySpec(kind, combo), cap))
    return out


def _instance_rows(spec: FamilySpec, cap_spec: str, game: str, bound: int | None):
    """Frontier and strategy comparison rows for one instance."""
    g = build_family(spec)
    price = optimal_price(g, game=game, bound=bound)
    cap = price + int(cap_spec[1:]) if cap_spec.startswith("+") else int(cap_spec)
    frontier = tradeoff_frontier(g, game=game, space_cap=cap, bound=bound)
    base_moves = None
    if spec.kind != "carlson_savage":
        moves = black_strategy(spec)
        base_moves = validate_pebbling(g, moves, game="black")
    rows = []
    for s, t in frontier.points:
        if spec.kind == "carlson_savage":
            try:
                moves = cs_tradeoff_strategy(*spec.params, StrategyParams(s))
                st = str(validate_pebbling(g, moves, game="black").time)
            except BudgetTooSmall:
                st = ""
        else:
            st = str(base_moves.time) if base_moves.space <= s else ""
        rows.append((spec.kind, spec.params_label(), game, s, t, st))
    return rows, frontier


def tradeoff_report(spec_path: str) -> tuple[str, dict[str, str], list[str]]:
    """Run the experiment file; returns (csv text, plot files, warnings)."""
    cp = ConfigParser()
    read = cp.read(spec_path)
    if not read:
        raise _Usage(f"cannot read spec {spec_path!r}")
    game = cp.get("experiment", "game", fallback="black")
    if game not in ("black", "bw"):
        raise _Usage(f"unknown game {game!r}")
    bound = cp.getint("experiment", "bound", fallback=None)
    instances = _experiment_instances(cp)
    if not instances:
        raise _Usage("empty family range: no instances to run")

    threads = int(os.environ.get("PEBBLE_BENCH_THREADS", "1"))
    warnings: list[str] = []

    def run(item):
        spec, cap_spec = item
        try:
            return _instance_rows(spec, cap_spec, game, bound)
        except SizeBoundExceeded as e:
            return e

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run, instances))
    else:
        results = [run(item) for item in instances]

    lines = ["family,params,game,space,min_time,strategy_time"]
    plots: dict[str, str] = {}
    for (spec, _), result in zip(instances, results):
        if isinstance(result, SizeBoundExceeded):
            warnings.append(f"skipped {spec.label()}: {result}")
            continue
        rows, frontier = result
        for row in rows:
            lines.append(",".join(str(x) for x in row))
        plot = "space,time\n" + "".join(f"{s},{t}\n" for s, t in frontier.points)
        plots[f"{spec.kind}-{spec.params_label()}.csv"] = plot
    return "\n".join(lines) + "\n", plots, warnings


def _cmd_tradeoff_report(args) -> int:
    cp = ConfigParser()
    if not cp.read(args.spec):
        raise _Usage(f"cannot read spec {args.spec!r}")
    csv_text, plots, warnings = tradeoff_report(args.spec)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    out_csv = cp.get("experiment", "out_csv", fallback=None)
    if out_csv:
        with open(out_csv, "w", newline="\n") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    prefix = cp.get("experiment", "plot_prefix", fallback=None)
    if prefix:
        for name, text in plots.items():
            with open(prefix + name, "w", newline="\n") as fh:
                fh.write(text)
    return 0


# --- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="pebble-bench")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="write a family instance as graph text")
    _add_graph_args(p, family_only=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen_graph)

    p = sub.add_parser("gen-cnf", help="write a pebbling contradiction as DIMACS")
    _add_graph_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--starred", action="store_true", help="omit target clauses")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen_cnf)

    p = sub.add_parser("price", help="exact pebbling price")
    _add_graph_args(p)
    p.add_argument("--game", choices=("black", "bw"), default="black")
    p.add_argument("--bound", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_price)

    p = sub.add_parser("frontier", help="time-space Pareto frontier as CSV")
    _add_graph_args(p)
    p.add_argument("--game", choices=("black", "bw"), default="black")
    p.add_argument("--space-cap", type=int, required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_frontier)

    p = sub.add_parser("strategy", help="emit an explicit pebbling move list")
    _add_graph_args(p, family_only=True)
    p.add_argument("--budget", type=int, help="space budget (carlson_savage only)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_strategy)

    p = sub.add_parser("compile", help="compile a pebbling into a resolution trace")
    _add_graph_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--moves", required=True)
    p.add_argument("--blob", action="store_true", help="moves file is a blob trace")
    p.add_argument("--starred", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("check", help="verify a resolution refutation")
    p.add_argument("--cnf", required=True)
    p.add_argument("--proof", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("measure", help="hiding hull, measure, and potential")
    _add_graph_args(p)
    p.add_argument("--set", required=True, help="comma list of vertices")
    p.add_argument("--black", help="black pebbles for the potential")
    p.add_argument("--white", help="white pebbles for the potential")
    p.add_argument("--direction", choices=("below", "above"), default="below")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("tradeoff-report", help="run an experiment spec file")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=_cmd_tradeoff_report)

    return top


def run_command(argv) -> int:
    """Parse and run one command; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except PebbleBenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:  # pragma: no cover - console entry point
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
