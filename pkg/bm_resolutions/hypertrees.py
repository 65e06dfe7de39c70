"""
Hypergraphs, host trees and rooted hypertrees.

A host tree of a hypergraph is a tree on the same vertices in which every
hyperedge induces a connected subgraph. It is rooted when every hyperedge's
vertices sit at pairwise distinct depths; the depth is then the rank used to
order the generators of the hyperedge ideal.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from bm_resolutions import graphs
from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.ideal import Monomial, MonomialIdeal, TotalOrder
from bm_resolutions.order_search import SearchBudget, SearchClock

logger = logging.getLogger(__name__)

DEFAULT_HOST_TREE_VERTEX_CAP = 8

# ---------------------------------------------------------------------------
# Hypergraphs
# ---------------------------------------------------------------------------


class Hypergraph(BaseModel):
    """A simple hypergraph (Sperner system) on labelled vertices."""

    model_config = ConfigDict(strict=True, frozen=True)

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, ...], ...]

    @model_validator(mode="after")
    def _check_sperner(self) -> Hypergraph:
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        known = set(self.vertices)
        sets = [frozenset(e) for e in self.edges]
        for e, s in zip(self.edges, sets, strict=True):
            if not e:
                raise InputError("empty hyperedge")
            if len(s) != len(e):
                raise InputError(f"hyperedge {list(e)} repeats a vertex")
            if not s <= known:
                raise InputError(f"hyperedge {list(e)} uses unknown vertices {sorted(s - known)}")
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a <= b:
                    raise InputError(f"hyperedge {sorted(a)} is contained in {sorted(b)}; not a Sperner system")
        return self

    @classmethod
    def of(cls, edges: Iterable[Iterable[str]], *, vertices: Sequence[str] | None = None) -> Hypergraph:
        """Build from edges; vertices default to first appearance."""
        rows = [tuple(e) for e in edges]
        if vertices is None:
            seen: list[str] = []
            for row in rows:
                seen.extend(v for v in row if v not in seen)
            vertices = seen
        return cls(vertices=tuple(vertices), edges=tuple(rows))

    @classmethod
    def from_graph(cls, g: Graph) -> Hypergraph:
        """The 2-uniform hypergraph of a simple graph, edges in canonical order."""
        return cls(
            vertices=tuple(str(v) for v in graphs.vertices(g)),
            edges=tuple((str(u), str(v)) for u, v in graphs.edges(g)),
        )


def parse_hypergraph_json(text: str) -> Hypergraph:
    """Parse ``{"vertices": [...], "edges": [[...], ...]}``."""
    try:
        return Hypergraph.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"malformed hypergraph: {exc.errors()[0]['msg']}") from exc


def hyperedge_ideal(h: Hypergraph) -> MonomialIdeal:
    """``I(H)``: one squarefree generator per hyperedge, in edge order."""
    if not h.edges:
        raise InputError("hypergraph without edges has no edge ideal")
    index = {v: i for i, v in enumerate(h.vertices)}
    gens: list[Monomial] = []
    for e in h.edges:
        exps = [0] * len(h.vertices)
        for v in e:
            exps[index[v]] = 1
        gens.append(Monomial(exponents=tuple(exps)))
    return MonomialIdeal(variables=tuple(graphs.variable_name(v) for v in h.vertices), generators=tuple(gens))


# ---------------------------------------------------------------------------
# Host trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HostTree:
    """A tree on hypergraph vertices, optionally rooted."""

    graph: Graph
    root: str | None = None

    def __post_init__(self) -> None:
        """Reject non-trees and roots outside the tree."""
        if not graphs.is_tree(self.graph):
            raise InputError("host graph is not a tree")
        if self.root is not None and self.root not in graphs.vertices(self.graph):
            raise InputError(f"root {self.root!r} is not a vertex of the host tree")

    @classmethod
    def of(cls, edges: Iterable[tuple[str, str]], *, root: str | None = None, vertices: Iterable[str] = ()) -> HostTree:
        """Build from an edge list."""
        return cls(graph=graphs.make_graph(edges, vertices=vertices), root=root)

    def rooted(self, root: str) -> HostTree:
        """The same tree with another root."""
        return HostTree(graph=self.graph, root=root)

    @cached_property
    def depths(self) -> dict[str, int]:
        """Distance from the root; requires a root."""
        if self.root is None:
            raise InputError("host tree has no root")
        return tree_depths(self.graph, self.root)

    def rank(self, v: str) -> int:
        """Rank of a vertex, its depth below the root."""
        return self.depths[v]


def tree_depths(t: Graph, root: str) -> dict[str, int]:
    """Depth of every vertex of a tree."""
    if not graphs.is_tree(t):
        raise InputError("not a tree")
    return {str(v): d for v, d in graphs.depths(t, root).items()}


def _check_vertex_sets(h: Hypergraph, t: HostTree) -> None:
    if set(h.vertices) != {str(v) for v in graphs.vertices(t.graph)}:
        raise InputError("hypergraph and host tree have different vertex sets")


def verify_host(h: Hypergraph, t: HostTree) -> bool:
    """Whether every hyperedge induces a connected subtree."""
    _check_vertex_sets(h, t)
    return all(graphs.induces_connected(t.graph, e) for e in h.edges)


def is_rooted_at(h: Hypergraph, t: HostTree, root: str) -> bool:
    """Whether every hyperedge has pairwise distinct depths from *root*."""
    if not verify_host(h, t):
        raise InputError("host tree does not host the hypergraph")
    depth = tree_depths(t.graph, root)
    return all(len({depth[v] for v in e}) == len(e) for e in h.edges)


def find_rooted_host_tree(
    h: Hypergraph,
    *,
    budget: SearchBudget | None = None,
    vertex_cap: int = DEFAULT_HOST_TREE_VERTEX_CAP,
) -> HostTree | None:
    """
    Search every labelled tree on the vertices and every root.

    Returns the first rooted host found, or None when the hypergraph is not a
    rooted hypertree. Each candidate tree counts as one order against
    *budget*; running out raises :class:`BudgetExceededError`.
    """
    if len(h.vertices) > vertex_cap:
        raise BudgetExceededError(f"{len(h.vertices)} vertices exceed the host-tree cap of {vertex_cap}")
    clock = SearchClock(budget) if budget is not None else None
    tested = 0
    for g in graphs.labeled_trees(h.vertices):
        if clock is not None and not clock.charge():
            raise BudgetExceededError(f"host-tree search stopped after {tested} trees")
        tested += 1
        candidate = HostTree(graph=g)
        if not verify_host(h, candidate):
            continue
        for root in h.vertices:
            if is_rooted_at(h, candidate, root):
                logger.debug("Rooted host found after %d trees", tested)
                return candidate.rooted(root)
    logger.info("No rooted host tree among %d labelled trees", tested)
    return None


# ---------------------------------------------------------------------------
# Orders and path ideals
# ---------------------------------------------------------------------------


def hypertree_order(h: Hypergraph, t: HostTree) -> TotalOrder:
    """
    Order hyperedges by the smallest rank among their vertices, smaller first.

    Ties break on the sorted rank sequence, then on edge index.
    """
    if t.root is None or not is_rooted_at(h, t, t.root):
        raise InputError("host tree is not a rooted host of the hypergraph")
    keys: list[tuple[int, tuple[int, ...], int]] = []
    for i, e in enumerate(h.edges):
        ranks = sorted(t.rank(v) for v in e)
        assert ranks == list(range(ranks[0], ranks[0] + len(ranks))), f"hyperedge {e} skips a rank"
        keys.append((ranks[0], tuple(ranks), i))
    return TotalOrder(ranking=tuple(k[2] for k in sorted(keys)))


def path_ideal(t: Graph, root: graphs.Vertex, length: int) -> Hypergraph:
    """
    Hypergraph of the downward paths on *length* vertices of a rooted tree.

    Vertex labels become strings. Each path is listed from its top vertex, and
    paths are listed by the insertion order of their bottom vertex.
    """
    if length < 2:
        raise InputError("paths need at least 2 vertices")
    if not graphs.is_tree(t):
        raise InputError("not a tree")
    up = graphs.parents(t, root)
    depth = graphs.depths(t, root)
    rows: list[tuple[str, ...]] = []
    for bottom in graphs.vertices(t):
        if depth[bottom] < length - 1:
            continue
        path = [bottom]
        while len(path) < length:
            path.append(up[path[-1]])
        rows.append(tuple(str(v) for v in reversed(path)))
    return Hypergraph(vertices=tuple(str(v) for v in graphs.vertices(t)), edges=tuple(rows))


def host_of(t: Graph, root: graphs.Vertex) -> HostTree:
    """A tree with string labels, rooted, as a host for its own path ideals."""
    mapping = {v: str(v) for v in graphs.vertices(t)}
    return HostTree(graph=graphs.relabel(t, mapping), root=str(root))


__all__ = [
    "DEFAULT_HOST_TREE_VERTEX_CAP",
    "Hypergraph",
    "HostTree",
    "parse_hypergraph_json",
    "hyperedge_ideal",
    "tree_depths",
    "verify_host",
    "is_rooted_at",
    "find_rooted_host_tree",
    "hypertree_order",
    "path_ideal",
    "host_of",
]
