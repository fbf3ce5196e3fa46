"""Tests for graph construction, validation, families, and the text format."""

import random

import pytest

from pebble_bench import (
    Dag,
    FamilySpec,
    GraphError,
    ParseError,
    build_family,
    read_graph,
    validate_dag,
    write_graph,
)
from pebble_bench.dag import carlson_savage_layout

SEED = 1234


def test_basic_construction():
    g = Dag(3, [(0, 2), (1, 2)], targets=[2])
    assert g.n == 3
    assert g.edges == ((0, 2), (1, 2))
    assert g.preds[2] == (0, 1)
    assert g.succs[0] == (2,)
    assert g.sources == (0, 1)
    assert g.sinks == (2,)
    assert g.targets == (2,)


def test_default_targets_are_sinks():
    g = Dag(4, [(0, 1), (0, 2)])
    assert g.targets == (1, 2, 3)


def test_duplicate_edges_collapse():
    g = Dag(2, [(0, 1), (0, 1)])
    assert g.edges == ((0, 1),)


def test_out_of_range_vertex_rejected():
    with pytest.raises(GraphError):
        Dag(2, [(0, 5)])
    with pytest.raises(GraphError):
        Dag(2, [(-1, 1)])


def test_validate_flags_backward_edge():
    g = Dag(2, [(1, 0)])
    problems = validate_dag(g)
    assert any("cycle" in p for p in problems)


def test_validate_flags_fan_in():
    g = Dag(4, [(0, 3), (1, 3), (2, 3)])
    problems = validate_dag(g)
    assert any("fan-in" in p for p in problems)


def test_validate_flags_non_sink_target():
    g = Dag(2, [(0, 1)], targets=[0])
    problems = validate_dag(g)
    assert any("target" in p for p in problems)


def test_reaches_and_descendants():
    g = build_family(FamilySpec.pyramid(2))
    # apex is 5; bottom row 0,1,2
    assert g.reaches(0, 5)
    assert g.reaches(2, 5)
    assert not g.reaches(5, 0)
    assert 5 in g.descendants(0)
    # descendants are reflexive by contract
    assert g.descendants(5) == frozenset({5})


# --- families ----------------------------------------------------------------


def test_chain_family():
    g = build_family(FamilySpec.chain(4))
    assert g.n == 4
    assert g.edges == ((0, 1), (1, 2), (2, 3))
    assert g.targets == (3,)
    assert validate_dag(g) == []


def test_chain_of_one():
    g = build_family(FamilySpec.chain(1))
    assert g.n == 1
    assert g.edges == ()
    assert g.targets == (0,)


def test_pyramid_family():
    g = build_family(FamilySpec.pyramid(2))
    assert g.n == 6
    assert g.sources == (0, 1, 2)
    assert g.sinks == (5,)
    # middle row vertices see adjacent bottom vertices
    assert g.preds[3] == (0, 1)
    assert g.preds[4] == (1, 2)
    assert g.preds[5] == (3, 4)
    assert validate_dag(g) == []


def test_pyramid_sizes():
    for h in range(1, 5):
        g = build_family(FamilySpec.pyramid(h))
        assert g.n == (h + 1) * (h + 2) // 2
        assert len(g.sinks) == 1


def test_binary_tree_family():
    g = build_family(FamilySpec.binary_tree(2))
    assert g.n == 7
    assert g.sources == (0, 1, 2, 3)
    assert g.preds[4] == (0, 1)
    assert g.preds[5] == (2, 3)
    assert g.preds[6] == (4, 5)
    assert validate_dag(g) == []


def test_binary_tree_sizes():
    for h in range(1, 5):
        g = build_family(FamilySpec.binary_tree(h))
        assert g.n == 2 ** (h + 1) - 1


def test_carlson_savage_small_layout():
    g, layout = carlson_savage_layout(2, 1)
    assert g.n == 11
    assert layout.base == (0, 1)
    lvl = layout.levels[0]
    assert lvl.apex == 4
    assert lvl.spines == ((5, 6, 7), (8, 9, 10))
    assert lvl.sinks == (7, 10)
    assert g.targets == (7, 10)
    # spine wiring: start from (apex, base0), then previous vertex + next aux
    assert g.preds[5] == (0, 4)
    assert g.preds[6] == (4, 5)
    assert g.preds[7] == (1, 6)
    assert validate_dag(g) == []


def test_carlson_savage_two_levels():
    g, layout = carlson_savage_layout(2, 2)
    assert g.n == 23
    assert len(layout.levels) == 2
    # level-2 spines consume the level-1 spine ends
    lvl2 = layout.levels[1]
    assert set(layout.levels[0].sinks) <= {p for v in lvl2.spines for u in v for p in g.preds[u]}
    assert g.targets == lvl2.sinks
    assert validate_dag(g) == []


def test_carlson_savage_fan_in_two_everywhere():
    for c, r in [(2, 1), (2, 2), (3, 1)]:
        g = build_family(FamilySpec.carlson_savage(c, r))
        assert validate_dag(g) == []
        assert all(len(g.preds[v]) <= 2 for v in range(g.n))
        assert len(g.targets) == c


def test_family_labels():
    assert FamilySpec.pyramid(2).label() == "pyramid(2)"
    assert FamilySpec.carlson_savage(2, 1).params_label() == "2-1"


def test_bad_family_parameters():
    with pytest.raises(GraphError):
        build_family(FamilySpec.chain(0))
    with pytest.raises(GraphError):
        build_family(FamilySpec.pyramid(0))
    with pytest.raises(GraphError):
        build_family(FamilySpec.carlson_savage(1, 1))


# --- text format ---------------------------------------------------------------


def test_write_then_read_round_trip():
    g = build_family(FamilySpec.pyramid(2))
    text = write_graph(g)
    assert text.startswith("p dag 6\n")
    assert text.endswith("\n")
    g2 = read_graph(text)
    assert g2 == g


def test_read_accepts_comments_and_blank_lines():
    g = read_graph("c a comment\n\np dag 2\ne 0 1\nt 1\n")
    assert g.n == 2
    assert g.targets == (1,)


def test_read_reports_line_numbers():
    with pytest.raises(ParseError) as exc:
        read_graph("p dag 2\ne 1 0\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        read_graph("p dag 2\ne 0 9\n")
    assert "line 2" in str(exc.value)


def test_read_rejects_garbage():
    with pytest.raises(ParseError):
        read_graph("")
    with pytest.raises(ParseError):
        read_graph("p dag 2\nq 0 1\n")
    with pytest.raises(ParseError):
        read_graph("p dag 2\np dag 3\n")


def test_round_trip_fuzz():
    rng = random.Random(SEED)
    for _ in range(200):
        n = rng.randint(1, 12)
        edges = []
        for v in range(1, n):
            k = rng.randint(0, min(2, v))
            edges.extend((u, v) for u in rng.sample(range(v), k))
        g = Dag(n, edges)
        if validate_dag(g):
            continue
        g2 = read_graph(write_graph(g))
        assert g2 == g
        assert write_graph(g2) == write_graph(g)
