"""Graph I/O, named families, corpora and graph-side orders."""

from __future__ import annotations

import pytest

from bm_resolutions import graphs
from bm_resolutions.errors import InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.literals import GraphFamily

# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def test_graph6_of_the_triangle() -> None:
    assert graphs.encode_graph6(graphs.named_graph("cycle", 3)) == "Bw"
    g = graphs.parse_graph6(">>graph6<<Bw\n")
    assert g.number_of_edges() == 3


def test_graph6_round_trip_keeps_the_edge_set() -> None:
    g = graphs.named_graph("sunlet", 4)
    back = graphs.parse_graph6(graphs.encode_graph6(g))
    assert graphs.edges(back) == graphs.edges(g)


@pytest.mark.parametrize("text", ["", "   ", "B", "Bwé"])
def test_malformed_graph6(text: str) -> None:
    with pytest.raises(InputError):
        graphs.parse_graph6(text)


def test_parse_edge_list() -> None:
    g = graphs.parse_edge_list("0 1\n1 2  # middle\n\nb c\n")
    assert graphs.vertices(g) == [0, 1, 2, "b", "c"]
    assert graphs.edges(g) == [(0, 1), (1, 2), ("b", "c")]
    with pytest.raises(InputError):
        graphs.parse_edge_list("0 1 2\n")
    with pytest.raises(InputError):
        graphs.parse_edge_list("# nothing\n")
    with pytest.raises(InputError):
        graphs.parse_edge_list("3 3\n")


def test_parse_graph_lines() -> None:
    assert len(graphs.parse_graph_lines("Bw\nCr\n")) == 2
    [single] = graphs.parse_graph_lines("# path\na b\nb c\n")
    assert graphs.edges(single) == [("a", "b"), ("b", "c")]
    with pytest.raises(InputError):
        graphs.parse_graph_lines("\n# empty\n")


# ---------------------------------------------------------------------------
# Edge ideals
# ---------------------------------------------------------------------------


def test_edge_ideal_of_a_path() -> None:
    ideal = graphs.edge_ideal(graphs.named_graph("path", 3))
    assert ideal.variables == ("x0", "x1", "x2")
    assert [ideal.label(i) for i in range(ideal.n)] == ["x0*x1", "x1*x2"]
    assert ideal.is_squarefree


def test_edge_ideal_keeps_identifier_labels() -> None:
    ideal = graphs.edge_ideal(graphs.make_graph([("a", "b"), ("b", "c")]))
    assert ideal.labels(ideal.full) == ["a*b", "b*c"]


def test_edgeless_graph_has_no_edge_ideal() -> None:
    with pytest.raises(InputError):
        graphs.edge_ideal(graphs.make_graph((), vertices=[0]))


def test_induced_subgraph_and_complement() -> None:
    c5 = graphs.named_graph("cycle", 5)
    sub = graphs.induced_subgraph(c5, [0, 1, 2, 4])
    assert graphs.edges(sub) == [(0, 1), (0, 4), (1, 2)]
    co = graphs.complement(c5)
    assert co.number_of_edges() == 5
    assert all(graphs.degree(co, v) == 2 for v in graphs.vertices(co))


@pytest.mark.parametrize(("g", "size"), [(graphs.named_graph("cycle", 4), 8), (graphs.named_graph("path", 3), 2)])
def test_automorphism_group(g: Graph, size: int) -> None:
    group = graphs.automorphism_group(g)
    assert len(group) == size
    assert tuple(range(g.number_of_nodes())) in group


# ---------------------------------------------------------------------------
# Named families & corpora
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("name", "n", "vertices", "edges"),
    [
        ("net", None, 6, 6),
        ("sunlet", 5, 10, 10),
        ("cyclohexane-123", None, 9, 9),
        ("cyclohexane-135", None, 9, 9),
        ("complete", 4, 4, 6),
        ("path", 1, 1, 0),
    ],
)
def test_named_graph_sizes(name: GraphFamily, n: int | None, vertices: int, edges: int) -> None:
    g = graphs.named_graph(name, n)
    assert (g.number_of_nodes(), g.number_of_edges()) == (vertices, edges)


def test_cyclohexane_pendants() -> None:
    consecutive = graphs.named_graph("cyclohexane-123")
    alternating = graphs.named_graph("cyclohexane-135")
    assert [graphs.degree(consecutive, v) for v in range(6)] == [3, 3, 3, 2, 2, 2]
    assert [graphs.degree(alternating, v) for v in range(6)] == [3, 2, 3, 2, 3, 2]


@pytest.mark.parametrize(("name", "n"), [("cycle", 2), ("path", None), ("sunlet", 0)])
def test_named_graph_rejects_bad_sizes(name: GraphFamily, n: int | None) -> None:
    with pytest.raises(InputError):
        graphs.named_graph(name, n)


@pytest.mark.parametrize(("kind", "count"), [("tree", 24), ("unicyclic", 54)])
def test_corpus_sizes(kind: graphs.CorpusKind, count: int) -> None:
    assert len(list(graphs.graph_corpus(kind, max_vertices=7))) == count


def test_corpus_edge_cap_and_vertex_cap() -> None:
    assert all(g.number_of_edges() <= 4 for g in graphs.graph_corpus("connected", max_vertices=5, max_edges=4))
    with pytest.raises(InputError):
        list(graphs.graph_corpus("connected", max_vertices=8))


def test_labeled_trees_follow_cayley() -> None:
    assert len(list(graphs.labeled_trees(["a", "b", "c", "d"]))) == 16
    assert len(list(graphs.labeled_trees(["a"]))) == 1


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def test_chordality() -> None:
    assert graphs.is_chordal(graphs.named_graph("complete", 4))
    assert graphs.is_chordal(graphs.named_graph("net"))
    assert not graphs.is_chordal(graphs.named_graph("cycle", 4))


def test_directed_cycles() -> None:
    assert sorted(graphs.find_directed_cycle([(1, 2), (2, 3), (3, 1), (3, 4)])) == [1, 2, 3]
    assert graphs.find_directed_cycle([(1, 2), (2, 3), (1, 3)]) == []


@pytest.mark.parametrize(
    ("g", "expected"),
    [
        (graphs.named_graph("cycle", 3), True),
        (graphs.named_graph("cycle", 4), False),
        (graphs.named_graph("cycle", 5), True),
        (graphs.named_graph("cycle", 6), True),
        (graphs.named_graph("cycle", 7), False),
        (graphs.named_graph("net"), False),
        (graphs.named_graph("cyclohexane-123"), False),
        (graphs.named_graph("cyclohexane-135"), False),
        (graphs.make_graph([(0, 1), (1, 2), (2, 0), (0, 3)]), True),
    ],
    ids=["C3", "C4", "C5", "C6", "C7", "net", "cyclohexane-123", "cyclohexane-135", "paw"],
)
def test_unicyclic_predicate(g: Graph, expected: bool) -> None:
    assert graphs.unicyclic_bf_predicate(g) is expected


def test_unique_cycle() -> None:
    cycle = graphs.unique_cycle(graphs.named_graph("net"))
    assert sorted(cycle) == [0, 1, 2]
    with pytest.raises(InputError):
        graphs.unique_cycle(graphs.named_graph("path", 4))


# ---------------------------------------------------------------------------
# Orders on edges
# ---------------------------------------------------------------------------


def test_rooted_tree_levels() -> None:
    t = graphs.make_graph([(0, 1), (0, 2), (1, 3), (2, 4), (1, 5)])
    assert graphs.rooted_tree_levels(t, 0) == {
        0: (0, 1),
        1: (1, 1),
        2: (1, 2),
        3: (2, 1),
        5: (2, 2),
        4: (2, 3),
    }


def test_rooted_tree_levels_ignore_edge_list_order() -> None:
    forward = graphs.make_graph([("r", "a"), ("r", "b"), ("a", "c"), ("a", "d")])
    backward = graphs.make_graph([("a", "d"), ("a", "c"), ("r", "b"), ("r", "a")])
    levels = graphs.rooted_tree_levels(backward, "r")
    assert levels == graphs.rooted_tree_levels(forward, "r")
    assert levels == {"r": (0, 1), "a": (1, 1), "b": (1, 2), "c": (2, 1), "d": (2, 2)}
    es = graphs.edges(backward)
    labeled = [es[i] for i in graphs.rooted_tree_edge_order(backward, "r").ranking]
    assert [frozenset(e) for e in labeled] == [
        frozenset(("r", "a")),
        frozenset(("r", "b")),
        frozenset(("a", "c")),
        frozenset(("a", "d")),
    ]


def test_vertex_key_orders_integers_numerically() -> None:
    assert sorted([10, "b", 2, "a"], key=graphs.vertex_key) == [2, 10, "a", "b"]


def test_rooted_tree_edge_order_goes_top_down() -> None:
    t = graphs.named_graph("path", 4)
    assert graphs.rooted_tree_edge_order(t, 0).ranking == (0, 1, 2)
    assert graphs.rooted_tree_edge_order(t, 3).ranking == (2, 1, 0)


def test_unicyclic_edge_order_starts_on_the_cycle() -> None:
    g = graphs.make_graph([(0, 1), (1, 2), (2, 0), (0, 3)])
    order = graphs.unicyclic_edge_order(g)
    es = graphs.edges(g)
    assert es[order.ranking[-1]] == (0, 3)
    assert {es[i] for i in order.ranking[:3]} == {(0, 1), (0, 2), (1, 2)}


def test_structured_edge_orders() -> None:
    assert len(graphs.structured_edge_orders(graphs.named_graph("path", 5))) == 5
    assert len(graphs.structured_edge_orders(graphs.named_graph("cycle", 5))) == 1
    assert graphs.structured_edge_orders(graphs.named_graph("complete", 4)) == ()
