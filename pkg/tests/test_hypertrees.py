"""Hypergraphs, rooted host trees, path ideals and hypertree orders."""

from __future__ import annotations

import pytest

from bm_resolutions import graphs
from bm_resolutions.betti import is_minimal
from bm_resolutions.bridge_friendly import is_bridge_friendly
from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.hypertrees import (
    HostTree,
    Hypergraph,
    find_rooted_host_tree,
    host_of,
    hyperedge_ideal,
    hypertree_order,
    is_rooted_at,
    parse_hypergraph_json,
    path_ideal,
    tree_depths,
    verify_host,
)
from bm_resolutions.matchings import bm_matching
from bm_resolutions.order_search import SearchBudget

SIX_EDGES = [
    ["a", "b", "b'"],
    ["a", "c", "c'"],
    ["a", "d", "d'"],
    ["a", "b", "c"],
    ["a", "c", "d"],
    ["a", "b", "d"],
]

# ---------------------------------------------------------------------------
# Hypergraphs
# ---------------------------------------------------------------------------


def test_hypergraph_vertices_follow_first_appearance() -> None:
    h = Hypergraph.of([["a", "b", "c"], ["b", "c", "d"]])
    assert h.vertices == ("a", "b", "c", "d")
    ideal = hyperedge_ideal(h)
    assert ideal.labels(ideal.full) == ["a*b*c", "b*c*d"]


@pytest.mark.parametrize(
    "edges",
    [
        [["a", "b"], ["a", "b", "c"]],
        [["a", "a"]],
        [[]],
    ],
    ids=["nested", "repeated-vertex", "empty-edge"],
)
def test_hypergraph_must_be_sperner(edges: list[list[str]]) -> None:
    with pytest.raises(ValueError):
        Hypergraph.of(edges)


def test_hyperedges_must_use_known_vertices() -> None:
    with pytest.raises(ValueError):
        Hypergraph.of([["a", "z"]], vertices=["a", "b"])


def test_parse_hypergraph_json() -> None:
    h = parse_hypergraph_json('{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}')
    assert h.edges == (("a", "b"), ("b", "c"))
    with pytest.raises(InputError):
        parse_hypergraph_json('{"vertices": ["a", "b"], "edges": [["a", "b"], ["a"]]}')
    with pytest.raises(InputError):
        parse_hypergraph_json('{"vertices": "ab"}')


def test_hypergraph_from_graph() -> None:
    h = Hypergraph.from_graph(graphs.named_graph("path", 3))
    assert h.edges == (("0", "1"), ("1", "2"))
    assert hyperedge_ideal(h).labels(hyperedge_ideal(h).full) == ["x0*x1", "x1*x2"]


# ---------------------------------------------------------------------------
# Host trees
# ---------------------------------------------------------------------------


def test_host_tree_must_be_a_tree() -> None:
    with pytest.raises(InputError):
        HostTree.of([("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(InputError):
        HostTree.of([("a", "b")], root="z")


def test_host_tree_ranks() -> None:
    host = HostTree.of([("a", "b"), ("b", "c"), ("b", "d")], root="a")
    assert [host.rank(v) for v in "abcd"] == [0, 1, 2, 2]
    assert tree_depths(host.graph, "c") == {"a": 2, "b": 1, "c": 0, "d": 2}
    with pytest.raises(InputError):
        host.rooted("z")
    with pytest.raises(InputError):
        HostTree.of([("a", "b")]).rank("a")


def test_path_hosts_two_overlapping_triples() -> None:
    h = Hypergraph.of([["a", "b", "c"], ["b", "c", "d"]])
    host = HostTree.of([("a", "b"), ("b", "c"), ("c", "d")], root="a")
    assert verify_host(h, host)
    assert is_rooted_at(h, host, "a")
    assert not is_rooted_at(h, host, "b")
    order = hypertree_order(h, host)
    assert order.ranking == (0, 1)
    ideal = hyperedge_ideal(h)
    assert is_bridge_friendly(ideal, order).friendly
    assert is_minimal(ideal, bm_matching(ideal, order)).minimal


def test_star_does_not_host_a_path_edge() -> None:
    h = Hypergraph.of([["b", "c"], ["a", "d"]], vertices=["a", "b", "c", "d"])
    star = HostTree.of([("a", "b"), ("a", "c"), ("a", "d")])
    assert not verify_host(h, star)
    with pytest.raises(InputError):
        is_rooted_at(h, star, "a")


def test_hypertree_order_needs_a_rooted_host() -> None:
    h = Hypergraph.of([["a", "b", "c"], ["b", "c", "d"]])
    with pytest.raises(InputError):
        hypertree_order(h, HostTree.of([("a", "b"), ("b", "c"), ("c", "d")]))
    with pytest.raises(InputError):
        hypertree_order(h, HostTree.of([("a", "b"), ("b", "c"), ("c", "d")], root="b"))


def test_host_search_finds_a_witness() -> None:
    h = Hypergraph.of([["a", "b", "c"], ["b", "c", "d"]])
    host = find_rooted_host_tree(h)
    assert host is not None
    assert host.root is not None
    assert is_rooted_at(h, host, host.root)


def test_six_edge_hypergraph_has_no_rooted_host() -> None:
    h = Hypergraph.of(SIX_EDGES)
    assert len(h.vertices) == 7
    assert find_rooted_host_tree(h) is None


def test_host_search_respects_the_vertex_cap() -> None:
    with pytest.raises(BudgetExceededError):
        find_rooted_host_tree(Hypergraph.of(SIX_EDGES), vertex_cap=6)


def test_host_search_stops_when_the_budget_runs_out() -> None:
    with pytest.raises(BudgetExceededError):
        find_rooted_host_tree(Hypergraph.of(SIX_EDGES), budget=SearchBudget(max_orders=10))
    h = Hypergraph.of([["a", "b", "c"], ["b", "c", "d"]])
    # 16 labelled trees on four vertices.
    assert find_rooted_host_tree(h, budget=SearchBudget(max_orders=16)) is not None
    with pytest.raises(BudgetExceededError):
        find_rooted_host_tree(h, budget=SearchBudget(max_orders=0))


# ---------------------------------------------------------------------------
# Path ideals
# ---------------------------------------------------------------------------


def test_path_ideal_of_a_spider() -> None:
    t = graphs.make_graph([(0, 1), (1, 2), (0, 3)])
    h = path_ideal(t, 0, 3)
    assert h.edges == (("0", "1", "2"),)
    assert path_ideal(t, 0, 2).edges == (("0", "1"), ("1", "2"), ("0", "3"))
    with pytest.raises(InputError):
        path_ideal(t, 0, 1)


def _rooted_path_ideals() -> list[object]:
    cases: list[object] = []
    for t in graphs.graph_corpus("tree", max_vertices=7):
        for root in graphs.vertices(t):
            for length in (2, 3):
                if path_ideal(t, root, length).edges:
                    cases.append(pytest.param(t, root, length, id=f"{graphs.encode_graph6(t)}-r{root}-t{length}"))
    return cases


@pytest.mark.parametrize(("t", "root", "length"), _rooted_path_ideals())
def test_path_ideals_of_rooted_trees_are_bridge_friendly(t: Graph, root: int, length: int) -> None:
    h = path_ideal(t, root, length)
    order = hypertree_order(h, host_of(t, root))
    ideal = hyperedge_ideal(h)
    assert is_bridge_friendly(ideal, order).friendly
    assert is_minimal(ideal, bm_matching(ideal, order)).minimal
