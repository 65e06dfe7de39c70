"""Subset types, bridge-friendly orders and the order search."""

from __future__ import annotations

import random

import pytest

from bm_resolutions import graphs
from bm_resolutions.betti import is_minimal
from bm_resolutions.bridge_friendly import (
    OrderEvaluator,
    SearchResult,
    classify_subset,
    is_bridge_friendly,
    is_type2,
    search_bridge_friendly,
)
from bm_resolutions.errors import InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, parse_ideal_text
from bm_resolutions.literals import GraphFamily, Strategy
from bm_resolutions.matchings import bm_matching
from bm_resolutions.order_search import SearchBudget, edge_ideal_symmetry
from tests.corpus import graph_id, random_ideals

TRIANGLE = "x*y\ny*z\nx*z"
LARGE_BUDGET = SearchBudget(max_orders=400_000, max_seconds=1800)

# ---------------------------------------------------------------------------
# Subset types
# ---------------------------------------------------------------------------


def test_triangle_subset_types() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    natural = TotalOrder.natural(3)
    full = classify_subset(ideal, natural, 0b111)
    assert (full.type1, full.potentially_type2, full.type2) == (False, True, True)
    pair = classify_subset(ideal, natural, 0b011)
    assert (pair.type1, pair.potentially_type2, pair.type2) == (True, False, False)
    assert is_type2(ideal, natural, 0b111)
    with pytest.raises(InputError):
        is_type2(ideal, natural, 0b011)


def test_square_is_not_bridge_friendly_under_the_natural_order() -> None:
    g = graphs.named_graph("cycle", 4)
    ideal = graphs.edge_ideal(g)
    report = is_bridge_friendly(ideal, TotalOrder.natural(ideal.n))
    assert not report.friendly
    assert report.counterexample is not None
    flags = classify_subset(ideal, TotalOrder.natural(ideal.n), report.counterexample)
    assert flags.potentially_type2
    assert not flags.type2


@pytest.mark.parametrize("ideal", random_ideals(40, seed=5), ids=lambda i: ",".join(i.labels(i.full)))
def test_evaluator_agrees_with_subset_classification(ideal: MonomialIdeal) -> None:
    evaluator = OrderEvaluator(ideal)
    rng = random.Random(ideal.n)
    for _ in range(2):
        ranking = list(range(ideal.n))
        rng.shuffle(ranking)
        order = TotalOrder.of(ranking)
        failing = {int(s) for s in evaluator.counterexamples(order)}
        expected: set[int] = set()
        for s in range(1 << ideal.n):
            flags = classify_subset(ideal, order, s)
            assert not (flags.type1 and flags.potentially_type2)
            if flags.potentially_type2 and not flags.type2:
                expected.add(s)
        assert failing == expected


def test_order_size_must_match() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    with pytest.raises(InputError):
        is_bridge_friendly(ideal, TotalOrder.natural(2))


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _search(g: Graph, *, strategy: Strategy = "exhaustive", budget: SearchBudget = LARGE_BUDGET) -> SearchResult:
    ideal = graphs.edge_ideal(g)
    return search_bridge_friendly(
        ideal,
        strategy=strategy,
        budget=budget,
        seed=0,
        heuristics=graphs.structured_edge_orders(g),
        symmetry=edge_ideal_symmetry(g, ideal),
    )


def test_square_has_no_bridge_friendly_order() -> None:
    result = _search(graphs.named_graph("cycle", 4))
    assert result.outcome == "NotBridgeFriendly"
    assert result.order is None
    assert result.counterexample is not None


@pytest.mark.parametrize("name", ["net", "cyclohexane-123", "cyclohexane-135"])
def test_named_graphs_are_not_bridge_friendly(name: GraphFamily) -> None:
    result = _search(graphs.named_graph(name))
    assert result.outcome == "NotBridgeFriendly"


@pytest.mark.extended
def test_five_sunlet_is_not_bridge_friendly() -> None:
    budget = SearchBudget(max_orders=4_000_000, max_seconds=6 * 3600)
    assert _search(graphs.named_graph("sunlet", 5), budget=budget).outcome == "NotBridgeFriendly"


def test_tree_is_found_by_the_heuristic_stage() -> None:
    g = graphs.make_graph([(0, 1), (1, 2), (1, 3), (3, 4)])
    result = _search(g, strategy="heuristic")
    assert result.outcome == "Found"
    assert result.stage in ("given", "heuristic")
    assert result.order is not None
    ideal = graphs.edge_ideal(g)
    assert is_bridge_friendly(ideal, result.order).friendly
    assert is_minimal(ideal, bm_matching(ideal, result.order)).minimal


def test_empty_budget_is_unknown() -> None:
    result = _search(graphs.named_graph("net"), budget=SearchBudget(max_orders=0))
    assert result.outcome == "Unknown"
    assert result.orders_tested == 0


def test_non_exhaustive_failure_is_unknown() -> None:
    result = _search(graphs.named_graph("cycle", 4), strategy="given")
    assert result.outcome == "Unknown"
    assert result.orders_tested == 1


@pytest.mark.parametrize("g", list(graphs.graph_corpus("unicyclic", max_vertices=7)), ids=graph_id)
def test_unicyclic_predicate_matches_search(g: Graph) -> None:
    result = _search(g)
    assert result.outcome != "Unknown"
    assert graphs.unicyclic_bf_predicate(g) == (result.outcome == "Found")
    if result.order is not None:
        ideal = graphs.edge_ideal(g)
        assert is_minimal(ideal, bm_matching(ideal, result.order)).minimal
